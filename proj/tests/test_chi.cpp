#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mabisim/chi.hpp"

using namespace mabisim;
using test::corpus;
using test::dist;
using test::q;

namespace {

MarkovAutomaton rates_example()
{
    // s with rates 2 and 3 to t and u, t silent, u with a tau loop.
    MarkovAutomaton m;
    m.add_state("s");
    m.add_state("t");
    m.add_state("u");
    m.initial = 0;
    m.mt.push_back({0, q("2"), 1});
    m.mt.push_back({0, q("3"), 2});
    m.pt.push_back({2, Action::tau(), SubDistribution::dirac(2)});
    m.validate();
    return m;
}

} // namespace

TEST_CASE("rate_between sums parallel edges")
{
    MarkovAutomaton m;
    m.add_state("s");
    m.add_state("t");
    m.initial = 0;
    m.mt.push_back({0, q("2"), 1});
    m.mt.push_back({0, q("3"), 1});
    CHECK(rate_between(m, 0, 1) == q("5"));
    CHECK(rate_between(m, 1, 0) == 0);
    m.mt = {{0, q("3/2"), 1}};
    CHECK(rate_between(m, 0, 1) == q("3/2"));
}

TEST_CASE("exit_rate")
{
    auto m = rates_example();
    CHECK(exit_rate(m, 0) == q("5"));
    CHECK(exit_rate(m, 1) == 0);
    MarkovAutomaton n;
    n.add_state("s");
    n.add_state("t");
    n.initial = 0;
    n.mt.push_back({0, q("1/3"), 1});
    n.mt.push_back({0, q("2/3"), 1});
    CHECK(exit_rate(n, 0) == 1);
}

TEST_CASE("successor_distribution")
{
    auto m = rates_example();
    CHECK(successor_distribution(m, 0) == dist({{1, "2/5"}, {2, "3/5"}}));
    CHECK(successor_distribution(m, 1) == SubDistribution::dirac(1)); // exit rate 0
    MarkovAutomaton n;
    n.add_state("s");
    n.add_state("t");
    n.initial = 0;
    n.mt.push_back({0, q("1"), 1});
    CHECK(successor_distribution(n, 0) == SubDistribution::dirac(1));
}

TEST_CASE("chi_action_set")
{
    auto m1 = corpus("fig1_m1.ma"); // all states unstable
    CHECK(chi_action_set(m1, ChiMode::WithChiZero).empty());

    auto m = rates_example(); // stable: s (rate 5), t (rate 0); u unstable
    auto with_zero = chi_action_set(m, ChiMode::WithChiZero);
    std::set<Action> expected_zero = {Action::chi(q("5")), Action::chi(q("0"))};
    CHECK(with_zero == expected_zero);
    auto no_zero = chi_action_set(m, ChiMode::LegacyNoChiZero);
    std::set<Action> expected_nozero = {Action::chi(q("5"))};
    CHECK(no_zero == expected_nozero);

    // set semantics: two stable states with the same rate yield one action
    MarkovAutomaton twin;
    twin.add_state("a");
    twin.add_state("b");
    twin.add_state("sink");
    twin.initial = 0;
    twin.mt.push_back({0, q("5"), 2});
    twin.mt.push_back({1, q("5"), 2});
    CHECK(chi_action_set(twin, ChiMode::LegacyNoChiZero).size() == 1);
}

TEST_CASE("ma_to_pa on the corpus mapping examples")
{
    auto m1 = corpus("fig1_m1.ma");
    auto pa1 = ma_to_pa(m1);
    CHECK(pa1.pt.size() == 1); // unchanged, no chi
    CHECK(pa1.mt.empty());
    CHECK(pa1.pt[0].action.is_tau());

    auto m2 = corpus("fig1_m2.ma");
    auto pa2 = ma_to_pa(m2);
    REQUIRE(pa2.pt.size() == 1); // chi(0) self-loop
    CHECK(pa2.pt[0].action == Action::chi(q("0")));
    CHECK(pa2.pt[0].target == SubDistribution::dirac(0));
    CHECK(ma_to_pa(m2, ChiMode::LegacyNoChiZero).pt.empty());

    auto m3 = corpus("fig1_m3.ma");
    auto pa3 = ma_to_pa(m3);
    CHECK(structurally_equal(pa3, pa1)); // MT dropped, no chi: same image as fig1_m1
}

TEST_CASE("ma_to_pa drops timed behaviour of unstable states")
{
    MarkovAutomaton m;
    m.add_state("s");
    m.add_state("t");
    m.initial = 0;
    m.pt.push_back({0, Action::tau(), SubDistribution::dirac(1)});
    m.mt.push_back({0, q("5"), 1});
    auto pa = ma_to_pa(m);
    CHECK(pa.mt.empty());
    for (const auto& t : pa.pt) {
        bool chi_at_unstable = t.action.is_chi() && t.source == 0;
        CHECK_FALSE(chi_at_unstable);
    }
    // t is stable with rate 0
    CHECK(pa.pt.size() == 2);
}

TEST_CASE("ma_to_pa is idempotent and keeps PA inputs as-is")
{
    auto p = corpus("fig7_example.ma");
    CHECK(p.pa_form);
    CHECK(structurally_equal(ma_to_pa(p), p));
    auto pa = ma_to_pa(corpus("fig1_m2.ma"));
    CHECK(structurally_equal(ma_to_pa(pa), pa));
}

TEST_CASE("mapping invariants across the corpus")
{
    for (const auto& file : test::corpus_files()) {
        auto m = corpus(file);
        for (auto mode : {ChiMode::WithChiZero, ChiMode::LegacyNoChiZero}) {
            auto pa = ma_to_pa(m, mode);
            pa.validate();
            CHECK(pa.mt.empty());
            for (const auto& t : pa.pt)
                CHECK(t.target.is_full());
            if (m.pa_form)
                continue;
            for (StateId s = 0; s < m.num_states(); ++s) {
                int chi_count = 0;
                for (const auto& t : pa.pt)
                    if (t.source == s && t.action.is_chi())
                        ++chi_count;
                bool expect = is_stable(m, s) &&
                              (mode == ChiMode::WithChiZero || exit_rate(m, s) > 0);
                CHECK(chi_count == (expect ? 1 : 0));
            }
        }
    }
}

TEST_CASE("parallel composition of the appendix scenario")
{
    auto m1 = corpus("fig1_m1.ma");
    auto m2 = corpus("fig1_m2.ma");
    auto m4 = corpus("fig10_m4.ma");

    auto c1 = parallel_compose(m1, m4);
    // (s,v) has the tau loop and the timed transition to (s,v2)
    REQUIRE(c1.num_states() == 2);
    CHECK(c1.state_names[0] == "s|v");
    CHECK(c1.pt.size() == 2); // tau loops at both pair states
    REQUIRE(c1.mt.size() == 1);
    CHECK(c1.mt[0].rate == 1);
    CHECK(c1.mt[0].source == 0);
    CHECK(c1.mt[0].target == 1);

    auto c2 = parallel_compose(m2, m4);
    CHECK(c2.num_states() == 2);
    CHECK(c2.pt.empty());
    CHECK(c2.mt.size() == 1);
}

TEST_CASE("parallel composition with a neutral component")
{
    auto a = corpus("fig5c.ma");
    auto unit = corpus("fig2_m2.ma"); // single silent state
    auto c = parallel_compose(a, unit);
    CHECK(c.num_states() == a.num_states());
    CHECK(c.pt.size() == a.pt.size());
    CHECK(c.mt.size() == a.mt.size());
}

TEST_CASE("parallel composition is symmetric modulo pair swap")
{
    auto a = corpus("fig5c.ma");
    auto b = corpus("fig10_m4.ma");
    auto ab = parallel_compose(a, b);
    auto ba = parallel_compose(b, a);
    // rename x|y -> y|x in ba and compare
    for (auto& name : ba.state_names) {
        auto bar = name.find('|');
        name = name.substr(bar + 1) + "|" + name.substr(0, bar);
    }
    CHECK(ab.num_states() == ba.num_states());
    for (const auto& name : ab.state_names)
        CHECK(ba.state_by_name(name).has_value());
    CHECK(ab.pt.size() == ba.pt.size());
    CHECK(ab.mt.size() == ba.mt.size());
}

TEST_CASE("parallel composition warns about shared actions")
{
    auto a = corpus("fig5c.ma");
    std::vector<std::string> warnings;
    parallel_compose(a, a, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("interleaved") != std::string::npos);
    warnings.clear();
    parallel_compose(a, corpus("fig10_m4.ma"), &warnings);
    CHECK(warnings.empty());
}

TEST_CASE("direct sum offsets and prefixes")
{
    auto a = corpus("fig3_ab.ma");
    auto sum = direct_sum(ma_to_pa(a), ma_to_pa(a));
    CHECK(sum.automaton.num_states() == 4);
    CHECK(sum.left_root == 0);
    CHECK(sum.right_root == 2);
    CHECK(sum.automaton.state_names[0] == "1:A");
    CHECK(sum.automaton.state_names[2] == "2:A");
    sum.automaton.validate();
}
