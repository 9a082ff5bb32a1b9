#include "mabisim/refinement.hpp"

#include "mabisim/elimination.hpp"

#include <algorithm>
#include <chrono>

namespace mabisim {

Partition Partition::single_block(int n)
{
    std::vector<StateId> all(n);
    for (int i = 0; i < n; ++i)
        all[i] = i;
    return of_blocks(n, {all});
}

Partition Partition::discrete(int n)
{
    std::vector<std::vector<StateId>> blocks;
    for (int i = 0; i < n; ++i)
        blocks.push_back({i});
    return of_blocks(n, std::move(blocks));
}

Partition Partition::of_blocks(int n, std::vector<std::vector<StateId>> blocks)
{
    Partition p;
    p.block_of.assign(n, -1);
    for (auto& b : blocks)
        std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (size_t k = 0; k < blocks.size(); ++k) {
        if (blocks[k].empty())
            throw ModelError("partition with empty block");
        for (StateId s : blocks[k]) {
            if (s < 0 || s >= n || p.block_of[s] != -1)
                throw ModelError("partition blocks must be disjoint and in range");
            p.block_of[s] = static_cast<int>(k);
        }
    }
    for (int s = 0; s < n; ++s)
        if (p.block_of[s] == -1)
            throw ModelError("partition does not cover all states");
    p.blocks = std::move(blocks);
    return p;
}

bool Partition::refines(const Partition& coarser) const
{
    for (const auto& block : blocks) {
        int target = coarser.block_of[block.front()];
        for (StateId s : block)
            if (coarser.block_of[s] != target)
                return false;
    }
    return true;
}

AnalysisCache::AnalysisCache(const ProbAutomaton& p, bool use_preprocess_flags) : pa_(p)
{
    int n = pa_.num_states();
    std::set<Action> actions;
    actions.insert(Action::tau());
    for (const auto& name : pa_.external_actions)
        actions.insert(Action::external(name));
    for (const auto& t : pa_.pt)
        actions.insert(t.action);
    alphabet_.assign(actions.begin(), actions.end());

    candidates_.resize(n);
    for (StateId s = 0; s < n; ++s)
        candidates_[s] = dirac_det_tau_targets(pa_, s);

    always_tangible_.assign(n, false);
    if (use_preprocess_flags) {
        for (StateId s = 0; s < n; ++s) {
            bool has_tau = false, all_self_loops = true;
            for (const auto& t : pa_.pt) {
                if (t.source != s || !t.action.is_tau())
                    continue;
                has_tau = true;
                if (t.target != SubDistribution::dirac(s))
                    all_self_loops = false;
            }
            always_tangible_[s] = has_tau && all_self_loops;
        }
    }
}

const ConvexSet& AnalysisCache::weak_set(StateId s, const Action& alpha)
{
    auto key = std::make_pair(s, alpha.to_string());
    auto it = weak_sets_.find(key);
    if (it != weak_sets_.end())
        return it->second;
    ConvexSet set = alpha.is_tau() ? to_convex_set(candidates_[s], pa_.num_states())
                                   : to_convex_set(weak_outcomes(pa_, s, alpha), pa_.num_states());
    return weak_sets_.emplace(key, std::move(set)).first->second;
}

const ConvexSet& AnalysisCache::modified_weak_set(StateId s, int candidate, const Action& alpha)
{
    auto key = std::make_tuple(s, candidate, alpha.to_string());
    auto it = modified_sets_.find(key);
    if (it != modified_sets_.end())
        return it->second;
    ProbAutomaton mod = modified_automaton(pa_, s, candidates_[s][candidate]);
    ConvexSet set = to_convex_set(weak_outcomes(mod, s, alpha), pa_.num_states());
    return modified_sets_.emplace(key, std::move(set)).first->second;
}

ConvexSet AnalysisCache::restricted_projected(const ConvexSet& c, const std::set<StateId>& zero_states,
                                              const Partition& part) const
{
    return quotient_project(restrict_zero(c, zero_states), part.blocks);
}

ProbAutomaton modified_automaton(const ProbAutomaton& p, StateId s, const SubDistribution& nu)
{
    ProbAutomaton out = p;
    out.pt.erase(std::remove_if(out.pt.begin(), out.pt.end(),
                                [s](const ProbTransition& t) { return t.source == s; }),
                 out.pt.end());
    out.pt.push_back({s, Action::tau(), nu});
    return out;
}

namespace {

bool leaves_block(const SubDistribution& nu, const Partition& part, StateId s)
{
    for (StateId x : nu.support())
        if (!part.same_block(x, s))
            return true;
    return false;
}

bool representation_valid(AnalysisCache& cache, StateId s, int candidate, const Partition& part,
                          const std::set<StateId>& zero_states)
{
    for (const auto& alpha : cache.alphabet()) {
        ConvexSet original = cache.restricted_projected(cache.weak_set(s, alpha), zero_states, part);
        ConvexSet modified =
            cache.restricted_projected(cache.modified_weak_set(s, candidate, alpha), zero_states, part);
        if (!set_equal(original, modified))
            return false;
    }
    return true;
}

} // namespace

std::optional<std::pair<int, SubDistribution>>
find_vanishing_representation(AnalysisCache& cache, StateId s, const Partition& part,
                              const std::set<StateId>& zero_states)
{
    const auto& candidates = cache.candidates(s);
    for (int i = 0; i < static_cast<int>(candidates.size()); ++i) {
        if (!leaves_block(candidates[i], part, s))
            continue;
        if (representation_valid(cache, s, i, part, zero_states))
            return std::make_pair(i, candidates[i]);
    }
    return std::nullopt;
}

RefinementState tangible_fixpoint(AnalysisCache& cache, const Partition& part)
{
    int n = cache.automaton().num_states();
    RefinementState rs;
    rs.partition = part;
    std::map<StateId, int> vanishing_idx; // state -> candidate index

    long guard = 2L * n * n + 8;
    while (true) {
        if (--guard < 0)
            throw std::logic_error("tangible fixpoint failed to converge");
        auto tangible_before = rs.tangible;
        auto vanishing_before = vanishing_idx;

        // Re-validate stored representations against the current restriction
        // set minus the state itself; failures go back to the pool.
        std::set<StateId> domain;
        for (const auto& [s, i] : vanishing_idx)
            domain.insert(s);
        for (auto it = vanishing_idx.begin(); it != vanishing_idx.end();) {
            std::set<StateId> zero = domain;
            zero.erase(it->first);
            if (!representation_valid(cache, it->first, it->second, part, zero)) {
                domain.erase(it->first);
                it = vanishing_idx.erase(it);
            } else {
                ++it;
            }
        }

        for (StateId s = 0; s < n; ++s) {
            if (rs.tangible.count(s) || vanishing_idx.count(s))
                continue;
            if (cache.always_tangible(s)) {
                rs.tangible.insert(s);
                continue;
            }
            std::set<StateId> zero;
            for (const auto& [v, i] : vanishing_idx)
                zero.insert(v);
            auto rep = find_vanishing_representation(cache, s, part, zero);
            if (rep)
                vanishing_idx[s] = rep->first;
            else
                rs.tangible.insert(s);
        }

        if (tangible_before == rs.tangible && vanishing_before == vanishing_idx)
            break;
    }

    for (const auto& [s, i] : vanishing_idx)
        rs.vanishing.emplace(s, cache.candidates(s)[i]);
    return rs;
}

std::optional<Splitter> find_weak_split(AnalysisCache& cache, const RefinementState& rs)
{
    std::set<StateId> zero;
    for (const auto& [s, nu] : rs.vanishing)
        zero.insert(s);
    for (int b = 0; b < rs.partition.num_blocks(); ++b) {
        const auto& block = rs.partition.blocks[b];
        if (block.size() < 2)
            continue;
        for (const auto& alpha : cache.alphabet()) {
            ConvexSet ref = cache.restricted_projected(cache.weak_set(block[0], alpha), zero,
                                                       rs.partition);
            for (size_t i = 1; i < block.size(); ++i) {
                ConvexSet other = cache.restricted_projected(cache.weak_set(block[i], alpha), zero,
                                                             rs.partition);
                if (!set_equal(ref, other))
                    return Splitter{b, alpha, block[0], block[i]};
            }
        }
    }
    return std::nullopt;
}

Partition refine(AnalysisCache& cache, const RefinementState& rs, const Splitter& splitter)
{
    std::set<StateId> zero;
    for (const auto& [s, nu] : rs.vanishing)
        zero.insert(s);

    const auto& block = rs.partition.blocks.at(splitter.block);
    std::vector<std::pair<ConvexSet, std::vector<StateId>>> groups;
    for (StateId s : block) {
        ConvexSet key =
            cache.restricted_projected(cache.weak_set(s, splitter.action), zero, rs.partition);
        bool placed = false;
        for (auto& [rep, members] : groups) {
            if (set_equal(rep, key)) {
                members.push_back(s);
                placed = true;
                break;
            }
        }
        if (!placed)
            groups.emplace_back(std::move(key), std::vector<StateId>{s});
    }
    if (groups.size() < 2)
        throw std::logic_error("refine called with a non-splitting splitter");

    std::vector<std::vector<StateId>> blocks;
    for (int b = 0; b < rs.partition.num_blocks(); ++b) {
        if (b == splitter.block)
            for (auto& [rep, members] : groups)
                blocks.push_back(members);
        else
            blocks.push_back(rs.partition.blocks[b]);
    }
    return Partition::of_blocks(static_cast<int>(rs.partition.block_of.size()), std::move(blocks));
}

AnalysisResult analyze(const ProbAutomaton& p, const AnalysisOptions& opts)
{
    AnalysisResult res;
    ProbAutomaton q = p;
    if (opts.preprocess && opts.semantics == Semantics::Weak)
        q = preprocess(p, &res.preprocess_eliminated);

    AnalysisCache cache(q, opts.preprocess || opts.tangible_flags);
    int n = q.num_states();
    Partition part = Partition::single_block(n);

    int guard = n + 1;
    while (true) {
        if (--guard < 0)
            throw std::logic_error("refinement exceeded the |S|-1 round bound");
        ++res.rounds;
        RefinementState rs;
        if (opts.semantics == Semantics::Weak) {
            rs = tangible_fixpoint(cache, part);
        } else {
            rs.partition = part;
            for (StateId s = 0; s < n; ++s)
                rs.tangible.insert(s);
        }
        auto splitter = find_weak_split(cache, rs);
        if (!splitter) {
            res.state = std::move(rs);
            break;
        }
        part = refine(cache, rs, *splitter);
    }
    res.automaton = std::move(q);
    return res;
}

ProbAutomaton preprocess(const ProbAutomaton& p, std::vector<std::string>* eliminated)
{
    return preprocess_protected(p, {p.initial}, eliminated);
}

ProbAutomaton preprocess_protected(const ProbAutomaton& p, const std::set<StateId>& protect,
                                   std::vector<std::string>* eliminated)
{
    std::set<std::string> shielded;
    for (StateId s : protect)
        shielded.insert(p.state_names.at(s));

    ProbAutomaton q = p;
    while (true) {
        StateId found = -1;
        SubDistribution target;
        for (StateId s = 0; s < q.num_states() && found < 0; ++s) {
            if (s == q.initial || shielded.count(q.state_names[s]))
                continue;
            auto trans = q.transitions_from(s);
            if (trans.size() != 1)
                continue;
            const auto& t = q.pt[trans.front()];
            if (!t.action.is_tau() || t.target == SubDistribution::dirac(s))
                continue;
            found = s;
            target = t.target;
        }
        if (found < 0)
            break;
        if (eliminated)
            eliminated->push_back(q.state_names[found]);
        q = eliminate_state(q, found, target);
    }
    return q;
}

DecisionReport make_report(const AnalysisResult& res, StateId left, StateId right,
                           const DecideOptions& opts)
{
    DecisionReport rep;
    rep.semantics = opts.semantics;
    rep.chi_mode = opts.chi_mode;
    rep.preprocessed = opts.preprocess;
    rep.rounds = res.rounds;
    rep.bisimilar = res.state.partition.same_block(left, right);
    const auto& names = res.automaton.state_names;
    for (const auto& block : res.state.partition.blocks) {
        std::vector<std::string> b;
        for (StateId s : block)
            b.push_back(names[s]);
        rep.partition.push_back(std::move(b));
    }
    for (StateId s : res.state.tangible)
        rep.tangible.push_back(names[s]);
    std::sort(rep.tangible.begin(), rep.tangible.end());
    for (const auto& [s, nu] : res.state.vanishing) {
        std::map<std::string, Rational> entry;
        for (const auto& [t, q] : nu.entries())
            entry[names[t]] = q;
        rep.vanishing[names[s]] = std::move(entry);
    }
    rep.preprocess_eliminated = res.preprocess_eliminated;
    return rep;
}

DecisionReport decide(const MarkovAutomaton& m1, const MarkovAutomaton& m2,
                      const DecideOptions& opts)
{
    auto t0 = std::chrono::steady_clock::now();
    ProbAutomaton pa1 = ma_to_pa(m1, opts.chi_mode);
    ProbAutomaton pa2 = ma_to_pa(m2, opts.chi_mode);
    std::vector<std::string> eliminated;
    if (opts.preprocess && opts.semantics == Semantics::Weak) {
        std::vector<std::string> e1, e2;
        pa1 = preprocess(pa1, &e1);
        pa2 = preprocess(pa2, &e2);
        for (const auto& n : e1)
            eliminated.push_back("1:" + n);
        for (const auto& n : e2)
            eliminated.push_back("2:" + n);
    }
    DirectSum sum = direct_sum(pa1, pa2);
    AnalysisResult res = analyze(sum.automaton, {opts.semantics, false, opts.preprocess});
    res.preprocess_eliminated = eliminated;
    DecisionReport rep = make_report(res, sum.left_root, sum.right_root, opts);
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

DecisionReport decide_states(const MarkovAutomaton& m, const std::string& s, const std::string& t,
                             const DecideOptions& opts)
{
    auto t0 = std::chrono::steady_clock::now();
    ProbAutomaton pa = ma_to_pa(m, opts.chi_mode);
    auto si = pa.state_by_name(s), ti = pa.state_by_name(t);
    if (!si || !ti)
        throw ModelError("decide_states: unknown state name");
    std::vector<std::string> eliminated;
    if (opts.preprocess && opts.semantics == Semantics::Weak)
        pa = preprocess_protected(pa, {pa.initial, *si, *ti}, &eliminated);
    AnalysisResult res = analyze(pa, {opts.semantics, false, opts.preprocess});
    res.preprocess_eliminated = eliminated;
    StateId left = *res.automaton.state_by_name(s);
    StateId right = *res.automaton.state_by_name(t);
    DecisionReport rep = make_report(res, left, right, opts);
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

DecisionReport decide_weak(const MarkovAutomaton& m1, const MarkovAutomaton& m2, ChiMode mode)
{
    return decide(m1, m2, {Semantics::Weak, mode, true});
}

DecisionReport decide_naive(const MarkovAutomaton& m1, const MarkovAutomaton& m2, ChiMode mode)
{
    return decide(m1, m2, {Semantics::Naive, mode, true});
}

} // namespace mabisim
