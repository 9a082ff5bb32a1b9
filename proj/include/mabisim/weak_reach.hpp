#pragma once

#include "mabisim/automaton.hpp"
#include "mabisim/polytope.hpp"

#include <map>
#include <optional>
#include <vector>

namespace mabisim {

class IllFormedScheduler : public std::runtime_error {
public:
    explicit IllFormedScheduler(const std::string& what) : std::runtime_error(what) {}
};

class SchedulerLimitExceeded : public std::runtime_error {
public:
    explicit SchedulerLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Weak transition labels: Tau is the hatted internal move (zero or more tau
/// steps, staying put allowed); Visible(a) requires exactly one a-labelled
/// step on every path, with tau steps before and after.
struct WeakLabel {
    bool visible = false;
    Action action = Action::tau();

    static WeakLabel internal() { return {}; }
    static WeakLabel of(const Action& a)
    {
        if (a.is_tau())
            return internal();
        return {true, a};
    }
};

/// Memoryless resolution of nondeterminism over phase-states. The phase
/// tracks whether the distinguished visible label has been performed yet; the
/// internal label only uses the AfterLabel phase. A missing entry means Stop
/// in the AfterLabel phase and a dead end in the BeforeLabel phase.
struct DiracScheduler {
    enum class Phase { BeforeLabel, AfterLabel };
    static constexpr int kStop = -1;

    // Maps (state, phase) to kStop or an index into ProbAutomaton::pt.
    std::map<std::pair<StateId, Phase>, int> choice;
};

/// Absorption distribution of the finite phase-state chain induced by the
/// scheduler, solved exactly; nullopt when the absorbed mass is below 1
/// (divergence). Throws IllFormedScheduler when a choice violates the label
/// discipline.
std::optional<SubDistribution> scheduler_outcome(const ProbAutomaton& p, StateId root,
                                                 const WeakLabel& label,
                                                 const DiracScheduler& sched);

/// Scheduler enumeration limit. Reads MABISIM_SCHED_LIMIT once; the
/// fallback keeps runaway models from hanging the tool.
long scheduler_limit();

/// All distinct full distributions reachable from s by weak alpha moves under
/// Dirac determinate schedulers, in deterministic construction order,
/// divergent outcomes discarded. Not hull-reduced.
std::vector<SubDistribution> weak_outcomes(const ProbAutomaton& p, StateId s, const Action& alpha);

/// weak_outcomes for tau, kept without hull reduction: candidates for
/// vanishing representations must include non-extreme points. Always contains
/// the Dirac on s.
std::vector<SubDistribution> dirac_det_tau_targets(const ProbAutomaton& p, StateId s);

/// Hull-reduced generator set of the convex set S(s, alpha).
std::vector<SubDistribution> generator_set(const ProbAutomaton& p, StateId s, const Action& alpha);

/// Generator set of the weak alpha moves lifted to a subdistribution: the
/// weighted Minkowski sum of the per-state generator sets, hull-reduced.
std::vector<SubDistribution> lift_weak(const ProbAutomaton& p, const SubDistribution& mu,
                                       const Action& alpha);

/// Views a subdistribution as an exact vector over 0..n-1.
Vector to_vector(const SubDistribution& d, int n);

ConvexSet to_convex_set(const std::vector<SubDistribution>& dists, int n);

} // namespace mabisim
