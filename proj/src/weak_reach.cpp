#include "mabisim/weak_reach.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

namespace mabisim {

namespace {

using Phase = DiracScheduler::Phase;
using PhaseState = std::pair<StateId, Phase>;

bool legal_choice(const ProbAutomaton& p, const WeakLabel& label, const PhaseState& ps, int choice)
{
    if (choice == DiracScheduler::kStop)
        return ps.second == Phase::AfterLabel;
    if (choice < 0 || choice >= static_cast<int>(p.pt.size()))
        return false;
    const auto& t = p.pt[choice];
    if (t.source != ps.first)
        return false;
    if (ps.second == Phase::AfterLabel)
        return t.action.is_tau();
    return t.action.is_tau() || (label.visible && t.action == label.action);
}

Phase successor_phase(const ProbAutomaton& p, const PhaseState& ps, int choice)
{
    if (ps.second == Phase::BeforeLabel && !p.pt[choice].action.is_tau())
        return Phase::AfterLabel;
    return ps.second;
}

// Exact absorption probabilities of the chain fixed by `choice`. Entries
// missing from `choice` mean Stop in the AfterLabel phase and a dead end in
// the BeforeLabel phase; dead ends and non-absorbing loops lose their mass,
// which surfaces as an absorbed total below 1.
std::optional<SubDistribution> absorb(const ProbAutomaton& p, StateId root, const WeakLabel& label,
                                      const std::map<PhaseState, int>& choice)
{
    auto choice_of = [&](const PhaseState& ps) {
        auto it = choice.find(ps);
        if (it != choice.end())
            return it->second;
        return ps.second == Phase::AfterLabel ? DiracScheduler::kStop : -2; // -2: dead end
    };

    PhaseState start{root, label.visible ? Phase::BeforeLabel : Phase::AfterLabel};

    // Discover the reachable phase-states.
    std::vector<PhaseState> order;
    std::set<PhaseState> seen{start};
    std::deque<PhaseState> todo{start};
    while (!todo.empty()) {
        PhaseState ps = todo.front();
        todo.pop_front();
        order.push_back(ps);
        int c = choice_of(ps);
        if (c < 0)
            continue;
        Phase next = successor_phase(p, ps, c);
        for (StateId t : p.pt[c].target.support()) {
            PhaseState succ{t, next};
            if (seen.insert(succ).second)
                todo.push_back(succ);
        }
    }

    std::vector<PhaseState> absorbing, transient;
    for (const auto& ps : order) {
        int c = choice_of(ps);
        if (c == DiracScheduler::kStop)
            absorbing.push_back(ps);
        else if (c >= 0)
            transient.push_back(ps);
        // dead ends keep no mass
    }

    if (choice_of(start) == DiracScheduler::kStop)
        return SubDistribution::dirac(root);

    // Keep only transient states that can reach absorption; the rest have
    // absorption probability zero (minimal nonnegative solution).
    std::map<PhaseState, std::vector<std::pair<PhaseState, Rational>>> incoming;
    for (const auto& ps : transient) {
        int c = choice_of(ps);
        Phase next = successor_phase(p, ps, c);
        for (const auto& [t, q] : p.pt[c].target.entries())
            incoming[{t, next}].emplace_back(ps, q);
    }
    std::set<PhaseState> reaches;
    std::deque<PhaseState> wave(absorbing.begin(), absorbing.end());
    while (!wave.empty()) {
        PhaseState ps = wave.front();
        wave.pop_front();
        for (const auto& [pred, q] : incoming[ps])
            if (reaches.insert(pred).second)
                wave.push_back(pred);
    }

    std::vector<PhaseState> kept;
    for (const auto& ps : transient)
        if (reaches.count(ps))
            kept.push_back(ps);

    if (absorbing.empty())
        return std::nullopt;

    std::map<PhaseState, int> t_index, a_index;
    for (size_t i = 0; i < kept.size(); ++i)
        t_index[kept[i]] = static_cast<int>(i);
    for (size_t i = 0; i < absorbing.size(); ++i)
        a_index[absorbing[i]] = static_cast<int>(i);

    size_t k = kept.size(), m = absorbing.size();
    if (!t_index.count(start)) {
        // The root either is a dead end or diverges outright.
        return std::nullopt;
    }

    // Solve (I - Q) X = R by Gaussian elimination over rationals.
    std::vector<Vector> aug(k, Vector(k + m, Rational(0)));
    for (size_t i = 0; i < k; ++i) {
        aug[i][i] = 1;
        int c = choice_of(kept[i]);
        Phase next = successor_phase(p, kept[i], c);
        for (const auto& [t, q] : p.pt[c].target.entries()) {
            PhaseState succ{t, next};
            if (auto it = t_index.find(succ); it != t_index.end())
                aug[i][it->second] -= q;
            else if (auto ia = a_index.find(succ); ia != a_index.end())
                aug[i][k + ia->second] += q;
            // mass into dropped states is lost
        }
    }
    for (size_t col = 0; col < k; ++col) {
        size_t pivot = col;
        while (pivot < k && aug[pivot][col] == 0)
            ++pivot;
        if (pivot == k)
            throw std::logic_error("absorption system is singular");
        std::swap(aug[col], aug[pivot]);
        Rational pv = aug[col][col];
        for (auto& v : aug[col])
            v /= pv;
        for (size_t row = 0; row < k; ++row) {
            if (row == col || aug[row][col] == 0)
                continue;
            Rational f = aug[row][col];
            for (size_t j = col; j < k + m; ++j)
                aug[row][j] -= f * aug[col][j];
        }
    }

    int r = t_index[start];
    Rational total = 0;
    std::vector<std::pair<StateId, Rational>> entries;
    for (size_t a = 0; a < m; ++a) {
        const Rational& q = aug[r][k + a];
        if (q > 0) {
            entries.emplace_back(absorbing[a].first, q);
            total += q;
        }
    }
    if (total < 1)
        return std::nullopt;
    return SubDistribution::from_entries(entries);
}

// Depth-first enumeration over choice functions restricted to phase-states
// reachable under the partial choices made so far. Worst case exponential.
class Enumerator {
public:
    Enumerator(const ProbAutomaton& p, const WeakLabel& label, long limit)
        : p_(p), label_(label), limit_(limit)
    {
    }

    std::vector<SubDistribution> run(StateId root)
    {
        root_ = root;
        PhaseState start{root, label_.visible ? Phase::BeforeLabel : Phase::AfterLabel};
        std::set<PhaseState> pending{start};
        recurse(pending);
        return std::move(outcomes_);
    }

private:
    void recurse(std::set<PhaseState>& pending)
    {
        if (pending.empty()) {
            emit();
            return;
        }
        PhaseState ps = *pending.begin();
        pending.erase(pending.begin());

        std::vector<int> options;
        if (ps.second == Phase::AfterLabel)
            options.push_back(DiracScheduler::kStop);
        for (int i = 0; i < static_cast<int>(p_.pt.size()); ++i)
            if (p_.pt[i].source == ps.first && legal_choice(p_, label_, ps, i))
                options.push_back(i);

        if (options.empty()) {
            // Dead end in the BeforeLabel phase; its mass is simply lost.
            choice_[ps] = -2;
            recurse(pending);
            choice_.erase(ps);
            pending.insert(ps);
            return;
        }

        for (int opt : options) {
            choice_[ps] = opt;
            std::vector<PhaseState> added;
            if (opt != DiracScheduler::kStop) {
                Phase next = successor_phase(p_, ps, opt);
                for (StateId t : p_.pt[opt].target.support()) {
                    PhaseState succ{t, next};
                    if (!choice_.count(succ) && !pending.count(succ)) {
                        pending.insert(succ);
                        added.push_back(succ);
                    }
                }
            }
            recurse(pending);
            for (const auto& a : added)
                pending.erase(a);
            choice_.erase(ps);
        }
        pending.insert(ps);
    }

    void emit()
    {
        if (++count_ > limit_)
            throw SchedulerLimitExceeded(
                "scheduler enumeration exceeded limit " + std::to_string(limit_) +
                " (set MABISIM_SCHED_LIMIT to raise it)");
        auto outcome = absorb(p_, root_, label_, choice_);
        if (!outcome)
            return;
        if (seen_.insert(*outcome).second)
            outcomes_.push_back(*outcome);
    }

    const ProbAutomaton& p_;
    WeakLabel label_;
    long limit_;
    StateId root_ = 0;
    long count_ = 0;
    std::map<PhaseState, int> choice_;
    std::set<SubDistribution> seen_;
    std::vector<SubDistribution> outcomes_;
};

} // namespace

std::optional<SubDistribution> scheduler_outcome(const ProbAutomaton& p, StateId root,
                                                 const WeakLabel& label,
                                                 const DiracScheduler& sched)
{
    for (const auto& [ps, c] : sched.choice)
        if (!legal_choice(p, label, ps, c))
            throw IllFormedScheduler("choice at state " + p.state_names.at(ps.first) +
                                     " violates the label discipline");
    return absorb(p, root, label, sched.choice);
}

long scheduler_limit()
{
    if (const char* env = std::getenv("MABISIM_SCHED_LIMIT")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
    }
    return 1000000L;
}

std::vector<SubDistribution> weak_outcomes(const ProbAutomaton& p, StateId s, const Action& alpha)
{
    Enumerator e(p, WeakLabel::of(alpha), scheduler_limit());
    return e.run(s);
}

std::vector<SubDistribution> dirac_det_tau_targets(const ProbAutomaton& p, StateId s)
{
    return weak_outcomes(p, s, Action::tau());
}

std::vector<SubDistribution> generator_set(const ProbAutomaton& p, StateId s, const Action& alpha)
{
    auto outcomes = weak_outcomes(p, s, alpha);
    int n = p.num_states();
    ConvexSet hull = to_convex_set(outcomes, n);
    std::vector<SubDistribution> out;
    for (const auto& d : outcomes) {
        Vector v = to_vector(d, n);
        if (std::find(hull.generators.begin(), hull.generators.end(), v) != hull.generators.end())
            out.push_back(d);
    }
    return out;
}

std::vector<SubDistribution> lift_weak(const ProbAutomaton& p, const SubDistribution& mu,
                                       const Action& alpha)
{
    std::vector<StateId> support = mu.support();
    std::vector<std::vector<SubDistribution>> per_state;
    for (StateId s : support) {
        auto gens = generator_set(p, s, alpha);
        if (gens.empty())
            return {}; // no weak alpha move from this part of the support
        per_state.push_back(std::move(gens));
    }
    std::vector<SubDistribution> sums;
    std::vector<size_t> pick(support.size(), 0);
    while (true) {
        SubDistribution total;
        for (size_t i = 0; i < support.size(); ++i)
            total = dist_sum(total, dist_scale(mu(support[i]), per_state[i][pick[i]]));
        sums.push_back(total);
        size_t i = 0;
        while (i < pick.size()) {
            if (++pick[i] < per_state[i].size())
                break;
            pick[i] = 0;
            ++i;
        }
        if (i == pick.size())
            break;
    }
    int n = p.num_states();
    ConvexSet hull = to_convex_set(sums, n);
    std::vector<SubDistribution> out;
    std::set<SubDistribution> added;
    for (const auto& d : sums) {
        Vector v = to_vector(d, n);
        if (std::find(hull.generators.begin(), hull.generators.end(), v) != hull.generators.end() &&
            added.insert(d).second)
            out.push_back(d);
    }
    return out;
}

Vector to_vector(const SubDistribution& d, int n)
{
    Vector v(n, Rational(0));
    for (const auto& [s, q] : d.entries())
        v[s] = q;
    return v;
}

ConvexSet to_convex_set(const std::vector<SubDistribution>& dists, int n)
{
    std::vector<Vector> points;
    points.reserve(dists.size());
    for (const auto& d : dists)
        points.push_back(to_vector(d, n));
    ConvexSet out = hull_reduce(points);
    out.dimension = n;
    return out;
}

} // namespace mabisim
