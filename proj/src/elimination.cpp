#include "mabisim/elimination.hpp"

#include <algorithm>

namespace mabisim {

SubDistribution substitute(const SubDistribution& mu, StateId s, const SubDistribution& nu)
{
    if (nu.contains(s))
        throw EliminationError("substitute: replacement mentions the replaced state");
    Rational c = mu(s);
    if (c == 0)
        return mu;
    return dist_sum(dist_minus(mu, s), dist_scale(c, nu));
}

std::pair<ProbAutomaton, std::optional<SubDistribution>> rescale(const ProbAutomaton& p, StateId s,
                                                                 const SubDistribution& nu)
{
    ProbAutomaton out = modified_automaton(p, s, nu);
    out.pt.erase(out.pt.begin() + out.transitions_from(s).front());
    if (nu == SubDistribution::dirac(s))
        return {std::move(out), std::nullopt};
    Rational self = nu(s);
    SubDistribution res = nu;
    if (self > 0)
        res = dist_scale(Rational(1) / (Rational(1) - self), dist_minus(nu, s));
    out.pt.push_back({s, Action::tau(), res});
    return {std::move(out), res};
}

namespace {

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken)
{
    std::string name = base + "'";
    while (std::find(taken.begin(), taken.end(), name) != taken.end())
        name += "'";
    return name;
}

// Removes state s, remapping indices and rewriting every target through
// nu_res. When s is the initial state with incoming transitions, a fresh
// initial copy with the single tau transition is appended.
ProbAutomaton remove_state(const ProbAutomaton& p, StateId s, const SubDistribution& nu_res)
{
    bool initial = (s == p.initial);
    bool has_incoming = false;
    for (const auto& t : p.pt)
        if (t.source != s && t.target.contains(s))
            has_incoming = true;
    if (initial && !has_incoming)
        return p; // still in representation form, nothing to do

    ProbAutomaton out;
    out.pa_form = p.pa_form;
    out.external_actions = p.external_actions;
    std::vector<int> remap(p.num_states(), -1);
    for (StateId i = 0; i < p.num_states(); ++i)
        if (i != s)
            remap[i] = out.add_state(p.state_names[i]);

    auto rewrite = [&](const SubDistribution& d) {
        SubDistribution substituted = substitute(d, s, nu_res);
        std::vector<std::pair<StateId, Rational>> entries;
        for (const auto& [t, q] : substituted.entries())
            entries.emplace_back(remap[t], q);
        return SubDistribution::from_entries(entries);
    };

    for (const auto& t : p.pt)
        if (t.source != s)
            out.pt.push_back({remap[t.source], t.action, rewrite(t.target)});

    if (initial) {
        StateId copy = out.add_state(fresh_name(p.state_names[s], p.state_names));
        out.pt.push_back({copy, Action::tau(), rewrite(nu_res)});
        out.initial = copy;
    } else {
        out.initial = remap[p.initial];
    }
    return out;
}

std::map<std::string, Rational> to_named(const SubDistribution& d,
                                         const std::vector<std::string>& names)
{
    std::map<std::string, Rational> out;
    for (const auto& [s, q] : d.entries())
        out[names[s]] = q;
    return out;
}

SubDistribution from_named(const std::map<std::string, Rational>& d, const ProbAutomaton& p)
{
    std::vector<std::pair<StateId, Rational>> entries;
    for (const auto& [name, q] : d) {
        auto sid = p.state_by_name(name);
        if (!sid)
            throw EliminationError("representation references unknown state '" + name + "'");
        entries.emplace_back(*sid, q);
    }
    return SubDistribution::from_entries(entries);
}

std::map<std::string, Rational> substitute_named(const std::map<std::string, Rational>& mu,
                                                 const std::string& name,
                                                 const std::map<std::string, Rational>& nu)
{
    auto it = mu.find(name);
    if (it == mu.end())
        return mu;
    Rational c = it->second;
    std::map<std::string, Rational> out = mu;
    out.erase(name);
    for (const auto& [t, q] : nu) {
        if (t == name)
            throw EliminationError("representation cycle with no escaping mass");
        out[t] += c * q;
    }
    return out;
}

} // namespace

ProbAutomaton eliminate_state(const ProbAutomaton& p, StateId s, const SubDistribution& nu)
{
    if (!p.mt.empty())
        throw EliminationError("eliminate_state expects a PA");
    auto [rescaled, res] = rescale(p, s, nu);
    if (!res)
        return rescaled; // self-loop dropped; s stays as a transitionless state
    return remove_state(rescaled, s, *res);
}

NormalFormResult normal_form(const MarkovAutomaton& m, ChiMode mode)
{
    NormalFormResult nf;
    ProbAutomaton pa = ma_to_pa(m, mode);
    AnalysisResult res = analyze(pa, {Semantics::Weak, false});

    DecideOptions ropts;
    ropts.semantics = Semantics::Weak;
    ropts.chi_mode = mode;
    ropts.preprocess = false;
    nf.report = make_report(res, pa.initial, pa.initial, ropts);

    // nn-vanishing states in ascending index order, representations keyed by
    // name so that they survive the index shifts of the eliminations.
    std::vector<std::pair<std::string, std::map<std::string, Rational>>> pending;
    for (const auto& [s, nu] : res.state.vanishing)
        pending.emplace_back(pa.state_names[s], to_named(nu, pa.state_names));

    ProbAutomaton current = pa;
    for (size_t k = 0; k < pending.size(); ++k) {
        const std::string name = pending[k].first;
        auto sid = current.state_by_name(name);
        if (!sid)
            throw EliminationError("vanishing state disappeared before its elimination");
        SubDistribution nu = from_named(pending[k].second, current);
        if (nu == SubDistribution::dirac(*sid))
            throw EliminationError("nn-vanishing representation degenerated to a self-loop");
        Rational self = nu(*sid);
        SubDistribution nu_res = nu;
        if (self > 0)
            nu_res = dist_scale(Rational(1) / (Rational(1) - self), dist_minus(nu, *sid));
        std::map<std::string, Rational> named_res = to_named(nu_res, current.state_names);

        std::string old_initial = current.state_names[current.initial];
        current = eliminate_state(current, *sid, nu);
        if (current.state_names[current.initial] != old_initial)
            nf.alias[current.state_names[current.initial]] = old_initial;

        nf.plan.steps.emplace_back(name, named_res);
        for (size_t j = k + 1; j < pending.size(); ++j)
            pending[j].second = substitute_named(pending[j].second, name, named_res);
    }

    // Back-substitute so every recorded representation references surviving
    // states only; later steps are already clean, so one reverse pass does it.
    for (size_t i = nf.plan.steps.size(); i-- > 0;)
        for (size_t j = i + 1; j < nf.plan.steps.size(); ++j)
            nf.plan.steps[i].second = substitute_named(nf.plan.steps[i].second,
                                                       nf.plan.steps[j].first,
                                                       nf.plan.steps[j].second);
    nf.automaton = std::move(current);
    return nf;
}

bool dist_equiv_on_normal_form(const NormalFormResult& nf,
                               const std::map<std::string, Rational>& mu,
                               const std::map<std::string, Rational>& gamma)
{
    auto mass = [](const std::map<std::string, Rational>& d) {
        Rational m = 0;
        for (const auto& [name, q] : d) {
            if (q < 0)
                throw ModelError("negative mass for state '" + name + "'");
            m += q;
        }
        return m;
    };
    if (mass(mu) != mass(gamma))
        throw MassMismatch("distributions have different total mass");

    auto rewrite = [&](std::map<std::string, Rational> d) {
        for (const auto& [name, rep] : nf.plan.steps)
            d = substitute_named(d, name, rep);
        return d;
    };

    std::map<std::string, int> block_of;
    for (size_t b = 0; b < nf.report.partition.size(); ++b)
        for (const auto& name : nf.report.partition[b])
            block_of[name] = static_cast<int>(b);

    auto block_mass = [&](const std::map<std::string, Rational>& d) {
        std::vector<Rational> acc(nf.report.partition.size(), Rational(0));
        for (const auto& [name, q] : d) {
            if (q == 0)
                continue;
            std::string resolved = name;
            if (auto it = nf.alias.find(resolved); it != nf.alias.end())
                resolved = it->second;
            auto bit = block_of.find(resolved);
            if (bit == block_of.end())
                throw ModelError("unknown state '" + name + "'");
            acc[bit->second] += q;
        }
        return acc;
    };

    return block_mass(rewrite(mu)) == block_mass(rewrite(gamma));
}

} // namespace mabisim
