#include "mabisim/elimination.hpp"
#include "mabisim/io.hpp"
#include "mabisim/oracle.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>

using namespace mabisim;

namespace {

ChiMode parse_chi(const std::string& text)
{
    return text == "off" ? ChiMode::LegacyNoChiZero : ChiMode::WithChiZero;
}

int verdict_code(const DecisionReport& report) { return report.bisimilar ? 0 : 1; }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mabisim - weak bisimulation on Markov automata"};
    app.require_subcommand(1);

    std::string file_a, file_b, semantics = "weak", chi_zero = "on";
    std::string state_s, state_t;
    bool json = false, no_preprocess = false, convex_sets = false, with_partition = false;

    auto add_decide_opts = [&](CLI::App* cmd) {
        cmd->add_option("--semantics", semantics, "weak or naive")
            ->check(CLI::IsMember({"weak", "naive"}));
        cmd->add_option("--chi-zero", chi_zero, "emit chi(0) on stable rate-0 states (on|off)")
            ->check(CLI::IsMember({"on", "off"}));
        cmd->add_flag("--no-preprocess", no_preprocess, "disable up-front elimination");
        cmd->add_flag("--json", json, "machine-readable report");
    };

    auto* decide_cmd = app.add_subcommand("decide", "decide bisimilarity of two models");
    add_decide_opts(decide_cmd);
    decide_cmd->add_option("A", file_a, "first model")->required();
    decide_cmd->add_option("B", file_b, "second model")->required();

    auto* decide_states_cmd =
        app.add_subcommand("decide-states", "compare two states of one model");
    decide_states_cmd->group(""); // hidden; test-harness use
    add_decide_opts(decide_states_cmd);
    decide_states_cmd->add_option("A", file_a, "model")->required();
    decide_states_cmd->add_option("s", state_s, "first state")->required();
    decide_states_cmd->add_option("t", state_t, "second state")->required();

    auto* normalize_cmd = app.add_subcommand("normalize", "eliminate nn-vanishing states");
    normalize_cmd->add_flag("--json", json, "emit the model plus the analysis report as JSON");
    normalize_cmd->add_option("A", file_a, "model")->required();

    auto* topa_cmd = app.add_subcommand("to-pa", "apply the MA to PA mapping");
    topa_cmd->add_option("--chi-zero", chi_zero, "emit chi(0) on stable rate-0 states (on|off)")
        ->check(CLI::IsMember({"on", "off"}));
    topa_cmd->add_option("A", file_a, "model")->required();

    auto* compose_cmd = app.add_subcommand("compose", "unsynchronised parallel composition");
    compose_cmd->add_option("A", file_a, "first model")->required();
    compose_cmd->add_option("B", file_b, "second model")->required();

    auto* info_cmd = app.add_subcommand("info", "model statistics");
    info_cmd->add_flag("--convex-sets", convex_sets, "print the generator sets S(s, a)");
    info_cmd->add_option("A", file_a, "model")->required();

    auto* dot_cmd = app.add_subcommand("dot", "GraphViz export");
    dot_cmd->add_flag("--partition", with_partition, "cluster states by the final weak partition");
    dot_cmd->add_option("A", file_a, "model")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force helpers");
    oracle_cmd->group(""); // hidden; test-harness use
    std::string oracle_kind;
    oracle_cmd->add_option("kind", oracle_kind, "naive")->required();
    oracle_cmd->add_option("A", file_a, "model")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        DecideOptions opts;
        opts.semantics = semantics == "weak" ? Semantics::Weak : Semantics::Naive;
        opts.chi_mode = parse_chi(chi_zero);
        opts.preprocess = !no_preprocess;

        if (decide_cmd->parsed()) {
            auto report = decide(load_ma(file_a), load_ma(file_b), opts);
            std::cout << emit_report(report, json ? ReportFormat::Json : ReportFormat::Text);
            return verdict_code(report);
        }
        if (decide_states_cmd->parsed()) {
            auto report = decide_states(load_ma(file_a), state_s, state_t, opts);
            std::cout << emit_report(report, json ? ReportFormat::Json : ReportFormat::Text);
            return verdict_code(report);
        }
        if (normalize_cmd->parsed()) {
            auto nf = normal_form(load_ma(file_a));
            if (json) {
                nlohmann::ordered_json j;
                j["model"] = print_ma(nf.automaton);
                nlohmann::ordered_json plan = nlohmann::ordered_json::array();
                for (const auto& [name, rep] : nf.plan.steps) {
                    nlohmann::ordered_json step;
                    step["state"] = name;
                    nlohmann::ordered_json dist = nlohmann::ordered_json::object();
                    for (const auto& [t, p] : rep)
                        dist[t] = format_rational(p);
                    step["representation"] = dist;
                    plan.push_back(step);
                }
                j["plan"] = plan;
                j["report"] =
                    nlohmann::ordered_json::parse(emit_report(nf.report, ReportFormat::Json));
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << print_ma(nf.automaton);
            }
            return 0;
        }
        if (topa_cmd->parsed()) {
            std::cout << print_ma(ma_to_pa(load_ma(file_a), opts.chi_mode));
            return 0;
        }
        if (compose_cmd->parsed()) {
            std::vector<std::string> warnings;
            auto composed = parallel_compose(load_ma(file_a), load_ma(file_b), &warnings);
            for (const auto& w : warnings)
                std::cerr << "warning: " << w << "\n";
            std::cout << print_ma(composed);
            return 0;
        }
        if (info_cmd->parsed()) {
            auto m = load_ma(file_a);
            auto pa = ma_to_pa(m);
            std::cout << "states: " << m.num_states()
                      << "\nprobabilistic transitions: " << m.pt.size()
                      << "\ntimed transitions: " << m.mt.size() << "\n";
            if (convex_sets) {
                AnalysisCache cache(pa, false);
                for (StateId s = 0; s < pa.num_states(); ++s) {
                    for (const auto& alpha : cache.alphabet()) {
                        const auto& set = cache.weak_set(s, alpha);
                        if (set.empty())
                            continue;
                        std::cout << "S(" << pa.state_names[s] << ", " << alpha.to_string()
                                  << ") =";
                        for (const auto& g : set.generators) {
                            std::vector<std::pair<StateId, Rational>> entries;
                            for (int i = 0; i < pa.num_states(); ++i)
                                if (g[i] > 0)
                                    entries.emplace_back(i, g[i]);
                            auto d = SubDistribution::from_entries(entries);
                            std::cout << " { " << format_distribution(d, pa) << " }";
                        }
                        std::cout << "\n";
                    }
                }
            }
            return 0;
        }
        if (dot_cmd->parsed()) {
            auto m = load_ma(file_a);
            if (with_partition) {
                auto pa = ma_to_pa(m);
                auto res = analyze(pa, {Semantics::Weak, false});
                std::cout << export_dot(pa, &res.state.partition);
            } else {
                std::cout << export_dot(m);
            }
            return 0;
        }
        if (oracle_cmd->parsed()) {
            if (oracle_kind != "naive")
                throw ModelError("unknown oracle '" + oracle_kind + "'");
            auto pa = ma_to_pa(load_ma(file_a));
            auto part = coarsest_naive_partition_bruteforce(pa);
            for (const auto& block : part.blocks) {
                std::cout << "{";
                for (size_t i = 0; i < block.size(); ++i)
                    std::cout << (i ? " " : "") << pa.state_names[block[i]];
                std::cout << "} ";
            }
            std::cout << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
