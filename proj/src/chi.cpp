#include "mabisim/chi.hpp"

#include <map>
#include <queue>

namespace mabisim {

Rational rate_between(const MarkovAutomaton& m, StateId s, StateId t)
{
    Rational total = 0;
    for (const auto& mt : m.mt)
        if (mt.source == s && mt.target == t)
            total += mt.rate;
    return total;
}

Rational exit_rate(const MarkovAutomaton& m, StateId s)
{
    Rational total = 0;
    for (const auto& mt : m.mt)
        if (mt.source == s)
            total += mt.rate;
    return total;
}

SubDistribution successor_distribution(const MarkovAutomaton& m, StateId s)
{
    Rational total = exit_rate(m, s);
    if (total == 0)
        return SubDistribution::dirac(s);
    std::vector<std::pair<StateId, Rational>> entries;
    for (const auto& mt : m.mt)
        if (mt.source == s)
            entries.emplace_back(mt.target, mt.rate / total);
    return SubDistribution::from_entries(entries);
}

std::set<Action> chi_action_set(const MarkovAutomaton& m, ChiMode mode)
{
    std::set<Action> out;
    if (m.pa_form) {
        for (const auto& t : m.pt)
            if (t.action.is_chi())
                out.insert(t.action);
        return out;
    }
    for (StateId s = 0; s < m.num_states(); ++s) {
        if (!is_stable(m, s))
            continue;
        Rational r = exit_rate(m, s);
        if (r == 0 && mode == ChiMode::LegacyNoChiZero)
            continue;
        out.insert(Action::chi(r));
    }
    return out;
}

ProbAutomaton ma_to_pa(const MarkovAutomaton& m, ChiMode mode)
{
    if (m.pa_form)
        return m;
    ProbAutomaton out;
    out.state_names = m.state_names;
    out.external_actions = m.external_actions;
    out.initial = m.initial;
    out.pa_form = true;
    out.pt = m.pt;
    for (StateId s = 0; s < m.num_states(); ++s) {
        if (!is_stable(m, s))
            continue; // maximal progress: unstable states show no timed behaviour
        Rational r = exit_rate(m, s);
        if (r == 0 && mode == ChiMode::LegacyNoChiZero)
            continue;
        out.pt.push_back({s, Action::chi(r), successor_distribution(m, s)});
    }
    return out;
}

MarkovAutomaton parallel_compose(const MarkovAutomaton& a, const MarkovAutomaton& b,
                                 std::vector<std::string>* warnings)
{
    if (warnings) {
        std::vector<std::string> shared;
        for (const auto& name : a.external_actions)
            if (b.external_actions.count(name))
                shared.push_back(name);
        if (!shared.empty()) {
            std::string msg = "shared external actions are interleaved, not synchronized:";
            for (const auto& name : shared)
                msg += " " + name;
            warnings->push_back(msg);
        }
    }

    MarkovAutomaton out;
    out.pa_form = a.pa_form || b.pa_form;
    out.external_actions = a.external_actions;
    out.external_actions.insert(b.external_actions.begin(), b.external_actions.end());

    std::map<std::pair<StateId, StateId>, StateId> index;
    std::queue<std::pair<StateId, StateId>> todo;
    auto intern = [&](StateId s, StateId t) {
        auto key = std::make_pair(s, t);
        auto it = index.find(key);
        if (it != index.end())
            return it->second;
        StateId id = out.add_state(a.state_names[s] + "|" + b.state_names[t]);
        index.emplace(key, id);
        todo.push(key);
        return id;
    };

    out.initial = intern(a.initial, b.initial);
    while (!todo.empty()) {
        auto [s, t] = todo.front();
        todo.pop();
        StateId here = index[{s, t}];
        for (const auto& pt : a.pt) {
            if (pt.source != s)
                continue;
            std::vector<std::pair<StateId, Rational>> entries;
            for (const auto& [u, q] : pt.target.entries())
                entries.emplace_back(intern(u, t), q);
            out.pt.push_back({here, pt.action, SubDistribution::from_entries(entries)});
        }
        for (const auto& pt : b.pt) {
            if (pt.source != t)
                continue;
            std::vector<std::pair<StateId, Rational>> entries;
            for (const auto& [u, q] : pt.target.entries())
                entries.emplace_back(intern(s, u), q);
            out.pt.push_back({here, pt.action, SubDistribution::from_entries(entries)});
        }
        for (const auto& mt : a.mt)
            if (mt.source == s)
                out.mt.push_back({here, mt.rate, intern(mt.target, t)});
        for (const auto& mt : b.mt)
            if (mt.source == t)
                out.mt.push_back({here, mt.rate, intern(s, mt.target)});
    }
    return out;
}

DirectSum direct_sum(const ProbAutomaton& a, const ProbAutomaton& b)
{
    ProbAutomaton sum;
    sum.pa_form = true;
    for (const auto& name : a.state_names)
        sum.add_state("1:" + name);
    for (const auto& name : b.state_names)
        sum.add_state("2:" + name);
    int offset = a.num_states();
    sum.external_actions = a.external_actions;
    sum.external_actions.insert(b.external_actions.begin(), b.external_actions.end());
    sum.pt = a.pt;
    for (const auto& t : b.pt) {
        std::vector<std::pair<StateId, Rational>> entries;
        for (const auto& [s, q] : t.target.entries())
            entries.emplace_back(s + offset, q);
        sum.pt.push_back({t.source + offset, t.action, SubDistribution::from_entries(entries)});
    }
    sum.initial = a.initial;
    return {std::move(sum), a.initial, b.initial + offset};
}

} // namespace mabisim
