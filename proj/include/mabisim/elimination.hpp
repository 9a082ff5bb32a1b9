#pragma once

#include "mabisim/refinement.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mabisim {

class EliminationError : public std::runtime_error {
public:
    explicit EliminationError(const std::string& what) : std::runtime_error(what) {}
};

class MassMismatch : public std::runtime_error {
public:
    explicit MassMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Replaces every occurrence of s in mu by the distribution nu (which must
/// not mention s). Total mass is preserved exactly.
SubDistribution substitute(const SubDistribution& mu, StateId s, const SubDistribution& nu);

/// Rescaling step of the elimination: with (s, tau, nu) as the only
/// transition from s, a pure self-loop nu = Dirac(s) is dropped entirely
/// (nullopt returned, s becomes transitionless); otherwise the transition is
/// replaced by (s, tau, (nu - s) / (1 - nu(s))) and that distribution
/// returned.
std::pair<ProbAutomaton, std::optional<SubDistribution>> rescale(const ProbAutomaton& p, StateId s,
                                                                 const SubDistribution& nu);

/// Full elimination of a vanishing state: the automaton is first put into
/// representation form at s (all of s's transitions replaced by (s, tau, nu)),
/// then rescaled, then s is removed with incoming mass redirected through the
/// rescaled representation. A vanishing initial state with incoming
/// transitions is replaced by a fresh copy carrying the single tau
/// transition; one without incoming transitions is left in representation
/// form. After a self-loop-only rescale no elimination happens and s remains
/// as a transitionless state.
ProbAutomaton eliminate_state(const ProbAutomaton& p, StateId s, const SubDistribution& nu);

/// Ordered elimination trace; each representation is over surviving state
/// names only.
struct EliminationPlan {
    std::vector<std::pair<std::string, std::map<std::string, Rational>>> steps;

    bool eliminates(const std::string& name) const
    {
        for (const auto& [n, rep] : steps)
            if (n == name)
                return true;
        return false;
    }
};

struct NormalFormResult {
    ProbAutomaton automaton;
    DecisionReport report; // of the analysis run that produced the representations
    EliminationPlan plan;
    std::map<std::string, std::string> alias; // fresh initial copy -> original name
};

/// Runs the weak analysis on PA(m) and eliminates every nn-vanishing state in
/// ascending index order, re-deriving pending representations by substitution
/// after each step. The result contains only tangible states (plus possibly a
/// fresh initial copy).
NormalFormResult normal_form(const MarkovAutomaton& m, ChiMode mode = ChiMode::WithChiZero);

/// Distribution-level bisimilarity on the nn-vanishing-free normal form:
/// after rewriting eliminated states through the plan, two full distributions
/// are equivalent iff they put equal mass on every block of the final
/// partition. Inputs are keyed by state name and may mention original
/// (eliminated) states.
bool dist_equiv_on_normal_form(const NormalFormResult& nf,
                               const std::map<std::string, Rational>& mu,
                               const std::map<std::string, Rational>& gamma);

} // namespace mabisim
