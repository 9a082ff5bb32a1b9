#include "mabisim/io.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace mabisim {

namespace {

struct Token {
    std::string text;
    int column; // 1-based
};

std::vector<Token> tokenize(const std::string& line)
{
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        if (line[i] == ',' || line[i] == ':') {
            ++i;
        } else {
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
                   line[i] != ',' && line[i] != ':')
                ++i;
        }
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

bool is_chi_token(const std::string& tok)
{
    return tok.size() > 4 && tok.rfind("chi(", 0) == 0 && tok.back() == ')';
}

void check_name(int line, int column, const std::string& name, const char* what)
{
    if (name.empty())
        throw SemanticError(line, column, std::string("empty ") + what + " name");
    for (char c : name)
        if (c == ',' || c == ':' || c == '#')
            throw SemanticError(line, column,
                                std::string("illegal character in ") + what + " name '" + name + "'");
}

void check_action_name(int line, int column, const std::string& name)
{
    check_name(line, column, name, "action");
    if (name == "tau")
        throw SemanticError(line, column, "'tau' is reserved and cannot be declared as an action");
    if (name.rfind("chi(", 0) == 0)
        throw SemanticError(line, column, "action names starting with 'chi(' are reserved");
}

Rational parse_prob(int line, int column, const std::string& tok)
{
    try {
        return parse_rational(tok);
    } catch (const BadRational& e) {
        throw ParseError(line, column, e.what());
    }
}

} // namespace

MarkovAutomaton parse_ma(const std::string& text)
{
    MarkovAutomaton m;
    m.initial = -1;
    bool header_seen = false;
    int line_no = 0;

    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        auto tokens = tokenize(raw);
        if (tokens.empty())
            continue;

        if (!header_seen) {
            if (tokens.size() != 1 ||
                (tokens[0].text != "markov_automaton" && tokens[0].text != "prob_automaton"))
                throw ParseError(line_no, tokens[0].column,
                                 "expected 'markov_automaton' or 'prob_automaton' header");
            m.pa_form = tokens[0].text == "prob_automaton";
            header_seen = true;
            continue;
        }

        const std::string& keyword = tokens[0].text;
        if (keyword == "states") {
            if (tokens.size() < 2)
                throw ParseError(line_no, tokens[0].column, "'states' needs at least one name");
            for (size_t i = 1; i < tokens.size(); ++i) {
                check_name(line_no, tokens[i].column, tokens[i].text, "state");
                if (m.state_by_name(tokens[i].text))
                    throw SemanticError(line_no, tokens[i].column,
                                        "duplicate state '" + tokens[i].text + "'");
                m.add_state(tokens[i].text);
            }
        } else if (keyword == "initial") {
            if (tokens.size() != 2)
                throw ParseError(line_no, tokens[0].column, "'initial' needs exactly one name");
            auto s = m.state_by_name(tokens[1].text);
            if (!s)
                throw SemanticError(line_no, tokens[1].column,
                                    "unknown state '" + tokens[1].text + "'");
            m.initial = *s;
        } else if (keyword == "actions") {
            if (tokens.size() < 2)
                throw ParseError(line_no, tokens[0].column, "'actions' needs at least one name");
            for (size_t i = 1; i < tokens.size(); ++i) {
                check_action_name(line_no, tokens[i].column, tokens[i].text);
                m.external_actions.insert(tokens[i].text);
            }
        } else if (keyword == "prob") {
            if (tokens.size() < 6 || tokens[3].text != ":")
                throw ParseError(line_no, tokens[0].column,
                                 "expected 'prob <src> <action> : <q> <tgt> (, <q> <tgt>)*'");
            auto src = m.state_by_name(tokens[1].text);
            if (!src)
                throw SemanticError(line_no, tokens[1].column,
                                    "unknown state '" + tokens[1].text + "'");
            Action action = Action::tau();
            if (tokens[2].text == "tau") {
                // internal action
            } else if (is_chi_token(tokens[2].text)) {
                if (!m.pa_form)
                    throw SemanticError(line_no, tokens[2].column,
                                        "chi actions are not accepted in markov_automaton files");
                Rational rate = parse_prob(line_no, tokens[2].column,
                                           tokens[2].text.substr(4, tokens[2].text.size() - 5));
                if (rate < 0)
                    throw SemanticError(line_no, tokens[2].column, "negative chi rate");
                action = Action::chi(rate);
            } else {
                check_action_name(line_no, tokens[2].column, tokens[2].text);
                action = Action::external(tokens[2].text);
                m.external_actions.insert(tokens[2].text);
            }
            std::vector<std::pair<StateId, Rational>> entries;
            size_t i = 4;
            while (true) {
                if (i >= tokens.size())
                    throw ParseError(line_no, tokens.back().column, "expected '<q> <tgt>'");
                if (i + 1 >= tokens.size())
                    throw ParseError(line_no, tokens[i].column,
                                     "missing target after probability");
                Rational q = parse_prob(line_no, tokens[i].column, tokens[i].text);
                if (q <= 0)
                    throw SemanticError(line_no, tokens[i].column,
                                        "branch probability must be positive");
                auto tgt = m.state_by_name(tokens[i + 1].text);
                if (!tgt)
                    throw SemanticError(line_no, tokens[i + 1].column,
                                        "unknown state '" + tokens[i + 1].text + "'");
                entries.emplace_back(*tgt, q);
                i += 2;
                if (i == tokens.size())
                    break;
                if (tokens[i].text != ",")
                    throw ParseError(line_no, tokens[i].column, "expected ',' between branches");
                ++i;
            }
            SubDistribution target = SubDistribution::from_entries(entries);
            if (!target.is_full())
                throw SemanticError(line_no, tokens[4].column,
                                    "branch probabilities sum to " +
                                        format_rational(target.mass()) + ", expected 1");
            m.pt.push_back({*src, action, std::move(target)});
        } else if (keyword == "markov") {
            if (m.pa_form)
                throw SemanticError(line_no, tokens[0].column,
                                    "markov lines are not allowed in prob_automaton files");
            if (tokens.size() != 4)
                throw ParseError(line_no, tokens[0].column, "expected 'markov <src> <rate> <tgt>'");
            auto src = m.state_by_name(tokens[1].text);
            auto tgt = m.state_by_name(tokens[3].text);
            if (!src || !tgt)
                throw SemanticError(line_no, tokens[1].column, "unknown state in markov line");
            Rational rate = parse_prob(line_no, tokens[2].column, tokens[2].text);
            if (rate <= 0)
                throw SemanticError(line_no, tokens[2].column,
                                    "Markovian rate must be strictly positive");
            m.mt.push_back({*src, rate, *tgt});
        } else {
            throw ParseError(line_no, tokens[0].column, "unknown keyword '" + keyword + "'");
        }
    }

    if (!header_seen)
        throw ParseError(line_no, "missing header line");
    if (m.state_names.empty())
        throw SemanticError(line_no, "no states declared");
    if (m.initial < 0)
        throw SemanticError(line_no, "no initial state declared");
    m.validate();
    return m;
}

MarkovAutomaton load_ma(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ModelError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_ma(buffer.str());
}

std::string format_distribution(const SubDistribution& d, const MarkovAutomaton& m)
{
    std::string out;
    bool first = true;
    for (const auto& [s, q] : d.entries()) {
        if (!first)
            out += ", ";
        out += format_rational(q) + " " + m.state_names[s];
        first = false;
    }
    return out;
}

std::string print_ma(const MarkovAutomaton& m)
{
    std::string out = m.pa_form ? "prob_automaton\n" : "markov_automaton\n";
    out += "states";
    for (const auto& name : m.state_names)
        out += " " + name;
    out += "\ninitial " + m.state_names[m.initial] + "\n";
    if (!m.external_actions.empty()) {
        out += "actions";
        for (const auto& name : m.external_actions)
            out += " " + name;
        out += "\n";
    }
    for (const auto& t : m.pt)
        out += "prob " + m.state_names[t.source] + " " + t.action.to_string() + " : " +
               format_distribution(t.target, m) + "\n";
    for (const auto& t : m.mt)
        out += "markov " + m.state_names[t.source] + " " + format_rational(t.rate) + " " +
               m.state_names[t.target] + "\n";
    return out;
}

std::string emit_report(const DecisionReport& r, ReportFormat format)
{
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["verdict"] = r.bisimilar ? "bisimilar" : "not-bisimilar";
        j["semantics"] = r.semantics == Semantics::Weak ? "weak" : "naive";
        j["chi_zero"] = r.chi_mode == ChiMode::WithChiZero ? "on" : "off";
        j["preprocess"] = r.preprocessed;
        j["rounds"] = r.rounds;
        j["partition"] = r.partition;
        j["tangible"] = r.tangible;
        nlohmann::ordered_json vanishing = nlohmann::ordered_json::object();
        for (const auto& [name, dist] : r.vanishing) {
            nlohmann::ordered_json entry = nlohmann::ordered_json::object();
            for (const auto& [t, q] : dist)
                entry[t] = format_rational(q);
            vanishing[name] = entry;
        }
        j["vanishing"] = vanishing;
        j["preprocess_eliminated"] = r.preprocess_eliminated;
        j["elapsed_ms"] = r.elapsed_ms;
        return j.dump(2) + "\n";
    }

    std::string out = r.bisimilar ? "BISIMILAR\n" : "NOT BISIMILAR\n";
    out += "semantics: ";
    out += (r.semantics == Semantics::Weak ? "weak" : "naive");
    out += "\nrounds: " + std::to_string(r.rounds) + "\npartition:";
    for (const auto& block : r.partition) {
        out += " {";
        for (size_t i = 0; i < block.size(); ++i)
            out += (i ? " " : "") + block[i];
        out += "}";
    }
    out += "\ntangible:";
    for (const auto& name : r.tangible)
        out += " " + name;
    out += "\nvanishing:";
    if (r.vanishing.empty())
        out += " none";
    for (const auto& [name, dist] : r.vanishing) {
        out += "\n  " + name + " ->";
        bool first = true;
        for (const auto& [t, q] : dist) {
            out += (first ? " " : ", ") + format_rational(q) + " " + t;
            first = false;
        }
    }
    if (!r.preprocess_eliminated.empty()) {
        out += "\npreprocess eliminated:";
        for (const auto& name : r.preprocess_eliminated)
            out += " " + name;
    }
    out += "\n";
    return out;
}

std::string export_dot(const MarkovAutomaton& m, const Partition* part)
{
    std::string out = "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    auto node = [&](StateId s) { return "\"" + m.state_names[s] + "\""; };

    if (part) {
        for (int b = 0; b < part->num_blocks(); ++b) {
            out += "  subgraph cluster_" + std::to_string(b) + " {\n    label=\"block " +
                   std::to_string(b) + "\";\n";
            for (StateId s : part->blocks[b])
                out += "    " + node(s) + ";\n";
            out += "  }\n";
        }
    } else {
        for (StateId s = 0; s < m.num_states(); ++s)
            out += "  " + node(s) + ";\n";
    }
    out += "  \"__init\" [shape=point, style=invis];\n";
    out += "  \"__init\" -> " + node(m.initial) + ";\n";

    auto edge_style = [](const Action& a) {
        if (a.is_tau())
            return std::string(", style=dashed");
        if (a.is_chi())
            return std::string(", style=dotted");
        return std::string();
    };

    int branch = 0;
    for (const auto& t : m.pt) {
        std::string label = t.action.to_string();
        if (t.target.support_size() == 1) {
            out += "  " + node(t.source) + " -> " + node(t.target.support().front()) + " [label=\"" +
                   label + "\"" + edge_style(t.action) + "];\n";
        } else {
            std::string mid = "\"__b" + std::to_string(branch++) + "\"";
            out += "  " + mid + " [shape=point];\n";
            out += "  " + node(t.source) + " -> " + mid + " [label=\"" + label + "\"" +
                   edge_style(t.action) + ", arrowhead=none];\n";
            for (const auto& [s, q] : t.target.entries())
                out += "  " + mid + " -> " + node(s) + " [label=\"" + format_rational(q) + "\"];\n";
        }
    }
    for (const auto& t : m.mt)
        out += "  " + node(t.source) + " -> " + node(t.target) + " [label=\"" +
               format_rational(t.rate) + "\", style=bold];\n";
    out += "}\n";
    return out;
}

} // namespace mabisim
