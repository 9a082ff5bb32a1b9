#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mabisim/automaton.hpp"
#include "mabisim/distribution.hpp"

#include <random>

using namespace mabisim;
using test::dist;
using test::q;

TEST_CASE("rational parsing and formatting")
{
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("4/6") == Rational(2, 3));
    CHECK(format_rational(q("4/6")) == "2/3");
    CHECK(format_rational(q("5")) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), BadRational);
    CHECK_THROWS_AS(parse_rational("x"), BadRational);
    CHECK_THROWS_AS(parse_rational(""), BadRational);
}

TEST_CASE("dist_sum")
{
    auto half_x = dist({{0, "1/2"}});
    auto half_y = dist({{1, "1/2"}});
    CHECK(dist_sum(half_x, half_y) == dist({{0, "1/2"}, {1, "1/2"}}));
    CHECK(dist_sum(half_x, SubDistribution()) == half_x);
    CHECK_THROWS_AS(dist_sum(half_x, dist({{0, "3/4"}})), MassOverflow);
}

TEST_CASE("dist_scale")
{
    CHECK(dist_scale(q("1/2"), SubDistribution::dirac(0)) == dist({{0, "1/2"}}));
    CHECK(dist_scale(q("0"), dist({{0, "1/2"}, {1, "1/2"}})) == SubDistribution());
    CHECK_THROWS_AS(dist_scale(q("3"), dist({{0, "1/2"}})), MassOverflow);
}

TEST_CASE("dist_minus")
{
    auto mu = dist({{0, "1/2"}, {1, "1/2"}});
    CHECK(dist_minus(mu, 0) == dist({{1, "1/2"}}));
    CHECK(dist_minus(SubDistribution::dirac(0), 0) == SubDistribution());
    CHECK_THROWS_AS(dist_minus(SubDistribution::dirac(0), 1), NotInSupport);
}

TEST_CASE("subdistribution size and support bookkeeping")
{
    auto mu = dist({{2, "1/3"}, {5, "1/3"}});
    CHECK(mu.mass() == q("2/3"));
    CHECK(mu.support() == std::vector<StateId>{2, 5});
    CHECK_FALSE(mu.is_full());
    CHECK(dist_minus(mu, 2).mass() == mu.mass() - mu(2));
}

TEST_CASE("algebraic laws on random distributions")
{
    std::mt19937 rng(7);
    const std::vector<Rational> pool = {q("1/4"), q("1/3"), q("1/2"), q("1/6")};
    auto random_dist = [&] {
        Rational budget = 1;
        int entries = static_cast<int>(rng() % 3);
        std::vector<std::pair<StateId, Rational>> out;
        for (int i = 0; i < entries; ++i) {
            Rational p = pool[rng() % pool.size()];
            if (p > budget)
                continue;
            out.emplace_back(static_cast<StateId>(rng() % 4), p);
            budget -= p;
        }
        return SubDistribution::from_entries(out);
    };
    for (int i = 0; i < 200; ++i) {
        auto a = random_dist();
        auto b = random_dist();
        if (a.mass() + b.mass() > 1)
            continue;
        CHECK(dist_sum(a, b) == dist_sum(b, a));
        auto c = pool[rng() % pool.size()];
        CHECK(dist_scale(c, dist_sum(a, b)) == dist_sum(dist_scale(c, a), dist_scale(c, b)));
        auto d = random_dist();
        if (a.mass() + b.mass() + d.mass() <= 1)
            CHECK(dist_sum(dist_sum(a, b), d) == dist_sum(a, dist_sum(b, d)));
    }
}

TEST_CASE("is_stable")
{
    MarkovAutomaton m;
    m.add_state("s");
    m.add_state("t");
    m.add_state("u");
    m.initial = 0;
    m.mt.push_back({0, q("2"), 1});
    m.pt.push_back({1, Action::tau(), SubDistribution::dirac(1)});
    m.pt.push_back({2, Action::external("a"), SubDistribution::dirac(0)});
    m.external_actions.insert("a");
    m.validate();
    CHECK(is_stable(m, 0));       // only a Markovian transition
    CHECK_FALSE(is_stable(m, 1)); // tau self-loop
    CHECK(is_stable(m, 2));       // only an external action
}

TEST_CASE("validate rejects broken automata")
{
    MarkovAutomaton m;
    m.initial = 0;
    CHECK_THROWS_AS(m.validate(), ModelError);
    m.add_state("s");
    m.pt.push_back({0, Action::tau(), dist({{0, "1/2"}})});
    CHECK_THROWS_AS(m.validate(), ModelError); // target mass not 1
    m.pt.clear();
    m.mt.push_back({0, q("-1"), 0});
    CHECK_THROWS_AS(m.validate(), ModelError); // negative rate
}
