#include "mabisim/automaton.hpp"

#include <algorithm>

namespace mabisim {

void MarkovAutomaton::validate() const
{
    if (state_names.empty())
        throw ModelError("automaton has no states");
    if (initial < 0 || initial >= num_states())
        throw ModelError("initial state out of range");
    std::set<std::string> seen;
    for (const auto& name : state_names)
        if (!seen.insert(name).second)
            throw ModelError("duplicate state name '" + name + "'");
    for (const auto& t : pt) {
        if (t.source < 0 || t.source >= num_states())
            throw ModelError("probabilistic transition from unknown state");
        if (!t.target.is_full())
            throw ModelError("probabilistic transition target mass is not 1");
        for (StateId s : t.target.support())
            if (s < 0 || s >= num_states())
                throw ModelError("probabilistic transition to unknown state");
        if (t.action.is_chi() && !pa_form)
            throw ModelError("chi action outside PA form");
    }
    for (const auto& t : mt) {
        if (pa_form)
            throw ModelError("Markovian transition in PA form");
        if (t.source < 0 || t.source >= num_states() || t.target < 0 || t.target >= num_states())
            throw ModelError("Markovian transition references unknown state");
        if (t.rate <= 0)
            throw ModelError("Markovian transition with non-positive rate");
    }
}

bool is_stable(const MarkovAutomaton& m, StateId s)
{
    return !m.has_tau_transition(s);
}

bool structurally_equal(const MarkovAutomaton& a, const MarkovAutomaton& b)
{
    if (a.state_names != b.state_names || a.initial != b.initial || a.pa_form != b.pa_form)
        return false;
    if (a.external_actions != b.external_actions)
        return false;
    auto pt_key = [](const ProbTransition& t) {
        return std::make_tuple(t.source, t.action.to_string(), t.target.entries());
    };
    auto mt_key = [](const MarkovTransition& t) { return std::make_tuple(t.source, t.rate, t.target); };
    auto pa = a.pt, pb = b.pt;
    auto by_pt = [&](const ProbTransition& x, const ProbTransition& y) { return pt_key(x) < pt_key(y); };
    std::sort(pa.begin(), pa.end(), by_pt);
    std::sort(pb.begin(), pb.end(), by_pt);
    if (pa.size() != pb.size())
        return false;
    for (size_t i = 0; i < pa.size(); ++i)
        if (pt_key(pa[i]) != pt_key(pb[i]))
            return false;
    auto ma = a.mt, mb = b.mt;
    auto by_mt = [&](const MarkovTransition& x, const MarkovTransition& y) { return mt_key(x) < mt_key(y); };
    std::sort(ma.begin(), ma.end(), by_mt);
    std::sort(mb.begin(), mb.end(), by_mt);
    if (ma.size() != mb.size())
        return false;
    for (size_t i = 0; i < ma.size(); ++i)
        if (mt_key(ma[i]) != mt_key(mb[i]))
            return false;
    return true;
}

} // namespace mabisim
