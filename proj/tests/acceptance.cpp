// Acceptance suite: runs every acceptance criterion and prints one verdict
// line per criterion. Exit code 0 iff all pass.

#include "helpers.hpp"
#include "mabisim/elimination.hpp"
#include "mabisim/oracle.hpp"

#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace mabisim;
using test::corpus;
using test::q;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<bool(std::string&)>& run)
{
    std::string detail;
    bool ok = false;
    try {
        ok = run(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << title;
    if (!detail.empty())
        std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok)
        ++failures;
}

bool expect(bool condition, const std::string& what, std::string& detail)
{
    if (!condition && detail.empty())
        detail = what;
    return condition;
}

Vector vec(const std::vector<std::string>& entries)
{
    Vector v;
    for (const auto& e : entries)
        v.push_back(q(e));
    return v;
}

// The two-root example automaton with branch parameters p and q: t1's direct
// branch carries the absorption weights of s1's loop through s2.
ProbAutomaton example_automaton(const Rational& p, const Rational& qq)
{
    ProbAutomaton a;
    a.pa_form = true;
    for (const char* n : {"s1", "s2", "t1", "A", "B"})
        a.add_state(n);
    a.initial = 0;
    a.external_actions.insert("b");
    auto d = [&](std::vector<std::pair<std::string, Rational>> entries) {
        std::vector<std::pair<StateId, Rational>> out;
        for (auto& [name, mass] : entries)
            out.emplace_back(*a.state_by_name(name), mass);
        return SubDistribution::from_entries(out);
    };
    Rational denom = 1 - qq * (1 - p);
    a.pt.push_back({0, Action::tau(), d({{"A", p}, {"s2", 1 - p}})});
    a.pt.push_back({0, Action::tau(), d({{"s2", Rational(1)}})});
    a.pt.push_back({1, Action::tau(), d({{"s1", qq}, {"B", 1 - qq}})});
    a.pt.push_back({2, Action::tau(), d({{"A", p / denom}, {"B", (1 - p) * (1 - qq) / denom}})});
    a.pt.push_back({2, Action::tau(), d({{"B", Rational(1)}})});
    a.pt.push_back({4, Action::external("b"), d({{"B", Rational(1)}})});
    a.validate();
    return a;
}

bool check_example_run(const ProbAutomaton& fig7, std::string& detail)
{
    auto report = decide_states(fig7, "s1", "t1", {Semantics::Weak, ChiMode::WithChiZero, false});
    std::vector<std::vector<std::string>> partition = {{"s1", "t1"}, {"s2"}, {"A"}, {"B"}};
    std::vector<std::string> tangible = {"A", "B", "s1", "t1"};
    return expect(report.bisimilar, "verdict", detail) &&
           expect(report.partition == partition, "final partition", detail) &&
           expect(report.tangible == tangible, "tangible set", detail) &&
           expect(report.vanishing.size() == 1 && report.vanishing.count("s2") == 1,
                  "s2 nn-vanishing", detail);
}

struct RandomMa {
    MarkovAutomaton m;
};

std::vector<RandomMa> random_corpus(int count, unsigned seed)
{
    std::mt19937 rng(seed);
    const std::vector<std::vector<Rational>> splits = {
        {q("1")},
        {q("1/2"), q("1/2")},
        {q("1/2"), q("1/4"), q("1/4")},
        {q("1/4"), q("1/4"), q("1/4"), q("1/4")},
        {q("1/3"), q("1/3"), q("1/3")},
        {q("1/2"), q("1/3"), q("1/6")}};
    const std::vector<Rational> rates = {q("1/4"), q("1/3"), q("1/2"), q("1")};

    std::vector<RandomMa> out;
    while (static_cast<int>(out.size()) < count) {
        MarkovAutomaton m;
        int n = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i)
            m.add_state("q" + std::to_string(i));
        m.initial = 0;
        int transitions = static_cast<int>(rng() % 4);
        for (int t = 0; t < transitions; ++t) {
            int src = static_cast<int>(rng() % n);
            if (rng() % 10 < 7) {
                int which = static_cast<int>(rng() % 3);
                Action act = which == 0   ? Action::tau()
                             : which == 1 ? Action::external("a")
                                          : Action::external("b");
                if (!act.is_tau())
                    m.external_actions.insert(act.name());
                const auto& split = splits[rng() % splits.size()];
                std::vector<std::pair<StateId, Rational>> entries;
                for (const auto& mass : split)
                    entries.emplace_back(static_cast<int>(rng() % n), mass);
                m.pt.push_back({src, act, SubDistribution::from_entries(entries)});
            } else {
                m.mt.push_back({src, rates[rng() % rates.size()],
                                static_cast<int>(rng() % n)});
            }
        }
        m.validate();
        out.push_back({std::move(m)});
    }
    return out;
}

} // namespace

int main()
{
    criterion(1, "worked example: verdict, partition, tangible set, nn-vanishing s2",
              [](std::string& detail) {
                  auto shipped = corpus("fig7_example.ma");
                  if (!expect(structurally_equal(shipped, example_automaton(q("1/2"), q("1/2"))),
                              "shipped corpus file matches the p=q=1/2 instance", detail))
                      return false;
                  if (!check_example_run(shipped, detail))
                      return false;
                  return check_example_run(example_automaton(q("1/3"), q("1/4")), detail);
              });

    criterion(2, "worked example: intermediate partitions and the restricted tau set",
              [](std::string& detail) {
                  auto fig7 = corpus("fig7_example.ma");
                  AnalysisCache cache(fig7, false);
                  Partition w0 = Partition::single_block(5);
                  auto rs0 = tangible_fixpoint(cache, w0);
                  auto sp0 = find_weak_split(cache, rs0);
                  if (!expect(sp0.has_value(), "round-1 splitter", detail))
                      return false;
                  Partition w1 = refine(cache, rs0, *sp0);
                  Partition w1_expected = Partition::of_blocks(5, {{0, 1, 2, 4}, {3}});
                  if (!expect(w1 == w1_expected, "W1 = {{s1,s2,t1,B},{A}}", detail))
                      return false;
                  auto rs1 = tangible_fixpoint(cache, w1);
                  auto sp1 = find_weak_split(cache, rs1);
                  if (!expect(sp1.has_value(), "round-2 splitter", detail))
                      return false;
                  Partition w2 = refine(cache, rs1, *sp1);
                  Partition w2_expected = Partition::of_blocks(5, {{0, 2}, {1}, {3}, {4}});
                  if (!expect(w2 == w2_expected, "W2 = {{s1,t1},{s2},{A},{B}}", detail))
                      return false;

                  StateId s2 = 1;
                  ConvexSet restricted =
                      cache.restricted_projected(cache.weak_set(0, Action::tau()), {s2}, w2);
                  // all mass on [s2] is gone; dropping that coordinate leaves
                  // the vertex [s1] plus the segment (0,0,1) .. (0,2/3,1/3)
                  std::vector<Vector> dropped;
                  for (const auto& g : restricted.generators) {
                      if (g[1] != 0) {
                          detail = "restricted set kept mass on [s2]";
                          return false;
                      }
                      dropped.push_back({g[0], g[2], g[3]});
                  }
                  std::vector<Vector> expected = {vec({"1", "0", "0"}), vec({"0", "0", "1"}),
                                                  vec({"0", "2/3", "1/3"})};
                  for (const auto& e : expected)
                      if (!expect(std::find(dropped.begin(), dropped.end(), e) != dropped.end(),
                                  "expected generator missing", detail))
                          return false;
                  if (!expect(dropped.size() == 3, "exactly three generators", detail))
                      return false;
                  ConvexSet seg;
                  seg.dimension = 3;
                  seg.generators = {expected[1], expected[2]};
                  return expect(contains(seg, vec({"0", "1/3", "2/3"})),
                                "segment midpoint containment", detail);
              });

    criterion(3, "one-step counterexample automaton: A and B bisimilar (weak and naive)",
              [](std::string& detail) {
                  auto fig3 = corpus("fig3_ab.ma");
                  auto weak =
                      decide_states(fig3, "A", "B", {Semantics::Weak, ChiMode::WithChiZero, false});
                  auto naive = decide_states(fig3, "A", "B",
                                             {Semantics::Naive, ChiMode::WithChiZero, false});
                  detail = std::string("weak: ") + (weak.bisimilar ? "bisimilar" : "not") +
                           ", naive: " + (naive.bisimilar ? "bisimilar" : "not");
                  return weak.bisimilar && naive.bisimilar;
              });

    criterion(4, "lifted nondeterminism: s and t not bisimilar",
              [](std::string& detail) {
                  auto fig8 = corpus("fig8_nondet.ma");
                  auto report =
                      decide_states(fig8, "s", "t", {Semantics::Weak, ChiMode::WithChiZero, false});
                  return expect(!report.bisimilar, "verdict must be not-bisimilar", detail);
              });

    criterion(5, "branching example: C and D separated, E nn-vanishing, E not bisimilar to D",
              [](std::string& detail) {
                  auto fig5c = corpus("fig5c.ma");
                  auto cd = decide_states(fig5c, "C", "D",
                                          {Semantics::Weak, ChiMode::WithChiZero, false});
                  if (!expect(!cd.bisimilar, "C vs D", detail))
                      return false;
                  if (!expect(cd.vanishing.size() == 1 && cd.vanishing.count("E") == 1,
                              "E nn-vanishing", detail))
                      return false;
                  auto ed = decide_states(fig5c, "E", "D",
                                          {Semantics::Weak, ChiMode::WithChiZero, false});
                  return expect(!ed.bisimilar, "E vs D", detail);
              });

    criterion(6, "congruence scenario: chi(0) decides the composability verdicts",
              [](std::string& detail) {
                  auto m1 = corpus("fig1_m1.ma");
                  auto m2 = corpus("fig1_m2.ma");
                  auto m4 = corpus("fig10_m4.ma");
                  auto off = ChiMode::LegacyNoChiZero;
                  auto on = ChiMode::WithChiZero;
                  if (!expect(decide_weak(m1, m2, off).bisimilar,
                              "chi-zero off: M1 and M2 bisimilar", detail))
                      return false;
                  auto c1 = parallel_compose(m1, m4);
                  auto c2 = parallel_compose(m2, m4);
                  if (!expect(!decide_weak(c1, c2, off).bisimilar,
                              "chi-zero off: M1||M4 and M2||M4 differ", detail))
                      return false;
                  return expect(!decide_weak(m1, m2, on).bisimilar,
                                "chi-zero on: M1 and M2 differ", detail);
              });

    criterion(7, "property suite over 200 random Markov automata",
              [](std::string& detail) {
                  auto models = random_corpus(200, 20120815);
                  int naive_hits = 0;
                  for (size_t i = 0; i < models.size(); ++i) {
                      const auto& m = models[i].m;
                      // (a) reflexivity
                      if (!expect(decide_weak(m, m).bisimilar,
                                  "reflexivity at model " + std::to_string(i), detail))
                          return false;
                      // (d) the naive partition equals the brute-force oracle's
                      auto pa = ma_to_pa(m);
                      auto res = analyze(pa, {Semantics::Naive, false});
                      if (!expect(res.state.partition == coarsest_naive_partition_bruteforce(pa),
                                  "oracle agreement at model " + std::to_string(i), detail))
                          return false;
                      const auto& other = models[(i + 1) % models.size()].m;
                      auto naive = decide_naive(m, other);
                      auto weak = decide_weak(m, other);
                      // (b) symmetry
                      if (!expect(decide_weak(other, m).bisimilar == weak.bisimilar,
                                  "symmetry at pair " + std::to_string(i), detail))
                          return false;
                      // (c) naive implies weak
                      if (naive.bisimilar) {
                          ++naive_hits;
                          if (!expect(weak.bisimilar,
                                      "naive=>weak violated at pair " + std::to_string(i), detail))
                              return false;
                      }
                      // (e) preprocess on/off
                      auto off = decide(m, other, {Semantics::Weak, ChiMode::WithChiZero, false});
                      if (!expect(off.bisimilar == weak.bisimilar,
                                  "preprocess toggle at pair " + std::to_string(i), detail))
                          return false;
                  }
                  detail = std::to_string(naive_hits) + " naive-bisimilar pairs exercised";
                  return true;
              });

    criterion(8, "elimination invariance over every corpus pair",
              [](std::string& detail) {
                  std::vector<MarkovAutomaton> models, normals;
                  for (const auto& file : test::corpus_files()) {
                      models.push_back(corpus(file));
                      normals.push_back(normal_form(models.back()).automaton);
                  }
                  for (size_t i = 0; i < models.size(); ++i) {
                      for (size_t j = 0; j < models.size(); ++j) {
                          bool direct = decide_weak(models[i], models[j]).bisimilar;
                          bool weak_nf = decide_weak(normals[i], normals[j]).bisimilar;
                          bool naive_nf = decide_naive(normals[i], normals[j]).bisimilar;
                          std::string pair = test::corpus_files()[i] + " vs " +
                                             test::corpus_files()[j];
                          if (!expect(direct == weak_nf, "weak on normal forms differs: " + pair,
                                      detail))
                              return false;
                          if (!expect(direct == naive_nf, "naive on normal forms differs: " + pair,
                                      detail))
                              return false;
                      }
                  }
                  return true;
              });

    criterion(9, "loop rescaling is exact",
              [](std::string& detail) {
                  auto fig6 = corpus("fig6_rescale.ma");
                  auto pa = ma_to_pa(fig6);
                  StateId s = *pa.state_by_name("s");
                  auto targets = dirac_det_tau_targets(pa, s);
                  auto exact = test::named_dist(pa, {{"x", "1/2"}, {"y", "1/2"}});
                  if (!expect(std::find(targets.begin(), targets.end(), exact) != targets.end(),
                              "absorption solve yields 1/2 x + 1/2 y", detail))
                      return false;
                  // depth-40 truncated expansion: residue (1/3)^40 still loops
                  Rational x_mass = 0, residue = 1;
                  for (int k = 0; k < 40; ++k) {
                      x_mass += residue * q("1/3");
                      residue *= q("1/3");
                  }
                  Rational absorbed_x = exact(*pa.state_by_name("x"));
                  if (!expect(absorbed_x == q("1/2"), "exact solve authoritative", detail))
                      return false;
                  return expect(absorbed_x - x_mass <= residue && absorbed_x - x_mass > 0,
                                "truncation differs only by the tail", detail);
              });

    criterion(10, "polytope micro-suite",
              [](std::string& detail) {
                  // (i) hull_reduce vs the subset-enumeration extreme-point
                  // oracle on 100 random point sets in Q^3
                  std::mt19937 rng(97);
                  const std::vector<Rational> pool = {q("0"),   q("1/4"), q("1/3"),
                                                      q("1/2"), q("2/3"), q("1")};
                  auto in_hull_bf = [](const std::vector<Vector>& points, const Vector& target) {
                      size_t d = target.size(), n = points.size();
                      std::vector<size_t> idx;
                      std::function<bool(size_t, size_t)> search = [&](size_t start,
                                                                       size_t want) -> bool {
                          if (idx.size() == want) {
                              size_t k = idx.size();
                              std::vector<Vector> m(d + 1, Vector(k + 1, Rational(0)));
                              for (size_t r = 0; r < d; ++r) {
                                  for (size_t c = 0; c < k; ++c)
                                      m[r][c] = points[idx[c]][r];
                                  m[r][k] = target[r];
                              }
                              for (size_t c = 0; c < k; ++c)
                                  m[d][c] = 1;
                              m[d][k] = 1;
                              size_t row = 0;
                              std::vector<int> pc(d + 1, -1);
                              for (size_t col = 0; col < k && row <= d; ++col) {
                                  size_t pr = row;
                                  while (pr <= d && m[pr][col] == 0)
                                      ++pr;
                                  if (pr > d)
                                      continue;
                                  std::swap(m[row], m[pr]);
                                  Rational pv = m[row][col];
                                  for (auto& x : m[row])
                                      x /= pv;
                                  for (size_t r = 0; r <= d; ++r) {
                                      if (r == row || m[r][col] == 0)
                                          continue;
                                      Rational f = m[r][col];
                                      for (size_t cc = col; cc <= k; ++cc)
                                          m[r][cc] -= f * m[row][cc];
                                  }
                                  pc[row] = static_cast<int>(col);
                                  ++row;
                              }
                              for (size_t r = row; r <= d; ++r)
                                  if (m[r][k] != 0)
                                      return false;
                              if (row < k)
                                  return false;
                              for (size_t r = 0; r < row; ++r)
                                  if (m[r][k] < 0)
                                      return false;
                              return true;
                          }
                          for (size_t i = start; i < n; ++i) {
                              idx.push_back(i);
                              if (search(i + 1, want))
                                  return true;
                              idx.pop_back();
                          }
                          return false;
                      };
                      for (size_t size = 1; size <= std::min(n, d + 2); ++size) {
                          idx.clear();
                          if (search(0, size))
                              return true;
                      }
                      return false;
                  };
                  for (int round = 0; round < 100; ++round) {
                      size_t n = 3 + rng() % 5;
                      std::vector<Vector> points;
                      for (size_t i = 0; i < n; ++i)
                          points.push_back({pool[rng() % pool.size()], pool[rng() % pool.size()],
                                            pool[rng() % pool.size()]});
                      auto reduced = hull_reduce(points);
                      std::vector<Vector> unique;
                      for (const auto& p : points)
                          if (std::find(unique.begin(), unique.end(), p) == unique.end())
                              unique.push_back(p);
                      for (const auto& p : unique) {
                          std::vector<Vector> others;
                          for (const auto& o : unique)
                              if (o != p)
                                  others.push_back(o);
                          bool extreme = others.empty() || !in_hull_bf(others, p);
                          bool kept = std::find(reduced.generators.begin(),
                                                reduced.generators.end(),
                                                p) != reduced.generators.end();
                          if (!expect(kept == extreme,
                                      "oracle disagreement in round " + std::to_string(round),
                                      detail))
                              return false;
                      }
                  }
                  // (ii) the pipeline order witness: restrict-then-project
                  // and project-then-restrict disagree
                  ConvexSet c;
                  c.dimension = 3;
                  c.generators = {vec({"0", "1", "0"})};
                  std::vector<std::vector<int>> blocks = {{0, 1}, {2}};
                  auto restrict_first = quotient_project(restrict_zero(c, {0}), blocks);
                  auto project_first = restrict_zero(quotient_project(c, blocks), {0});
                  return expect(!set_equal(restrict_first, project_first),
                                "pipeline order witness must disagree", detail);
              });

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
