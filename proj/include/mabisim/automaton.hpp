#pragma once

#include "mabisim/distribution.hpp"
#include "mabisim/rational.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mabisim {

class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal tau, an externally visible action, or a synthetic chi(rate)
/// action produced by the MA -> PA mapping. External names never collide with
/// the tau keyword or the chi prefix (enforced at parse time).
class Action {
public:
    enum class Kind { Tau, External, Chi };

    static Action tau() { return Action(Kind::Tau, "", 0); }
    static Action external(std::string name) { return Action(Kind::External, std::move(name), 0); }
    static Action chi(Rational rate) { return Action(Kind::Chi, "", std::move(rate)); }

    Kind kind() const { return kind_; }
    bool is_tau() const { return kind_ == Kind::Tau; }
    bool is_chi() const { return kind_ == Kind::Chi; }
    const std::string& name() const { return name_; }
    const Rational& rate() const { return rate_; }

    std::string to_string() const
    {
        switch (kind_) {
        case Kind::Tau: return "tau";
        case Kind::External: return name_;
        case Kind::Chi: return "chi(" + format_rational(rate_) + ")";
        }
        return "";
    }

    // Ordering fixes the deterministic action iteration of the refinement
    // loop: tau first, then externals by name, then chi by rate.
    bool operator<(const Action& other) const
    {
        if (kind_ != other.kind_)
            return static_cast<int>(kind_) < static_cast<int>(other.kind_);
        if (kind_ == Kind::External)
            return name_ < other.name_;
        if (kind_ == Kind::Chi)
            return rate_ < other.rate_;
        return false;
    }
    bool operator==(const Action& other) const
    {
        return kind_ == other.kind_ && name_ == other.name_ && rate_ == other.rate_;
    }
    bool operator!=(const Action& other) const { return !(*this == other); }

private:
    Action(Kind kind, std::string name, Rational rate)
        : kind_(kind), name_(std::move(name)), rate_(std::move(rate))
    {
    }

    Kind kind_;
    std::string name_;
    Rational rate_;
};

struct ProbTransition {
    StateId source;
    Action action;
    SubDistribution target; // always a full distribution
};

struct MarkovTransition {
    StateId source;
    Rational rate; // strictly positive
    StateId target;
};

/// States are densely indexed 0..n-1; display names are kept alongside.
/// A ProbAutomaton is a MarkovAutomaton with mt empty and pa_form set (its
/// action set may contain chi actions).
struct MarkovAutomaton {
    std::vector<std::string> state_names;
    std::set<std::string> external_actions; // declared plus used
    std::vector<ProbTransition> pt;
    std::vector<MarkovTransition> mt;
    StateId initial = 0;
    bool pa_form = false;

    int num_states() const { return static_cast<int>(state_names.size()); }

    StateId add_state(const std::string& name)
    {
        state_names.push_back(name);
        return num_states() - 1;
    }

    std::optional<StateId> state_by_name(const std::string& name) const
    {
        for (StateId s = 0; s < num_states(); ++s)
            if (state_names[s] == name)
                return s;
        return std::nullopt;
    }

    /// Indices into pt of the transitions emanating from s, in insertion order.
    std::vector<int> transitions_from(StateId s) const
    {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(pt.size()); ++i)
            if (pt[i].source == s)
                out.push_back(i);
        return out;
    }

    bool has_tau_transition(StateId s) const
    {
        for (const auto& t : pt)
            if (t.source == s && t.action.is_tau())
                return true;
        return false;
    }

    bool has_chi_transition(StateId s) const
    {
        for (const auto& t : pt)
            if (t.source == s && t.action.is_chi())
                return true;
        return false;
    }

    /// Checks the structural invariants; throws ModelError on violation.
    void validate() const;
};

using ProbAutomaton = MarkovAutomaton;

/// A state is stable iff it has no emanating tau transitions.
bool is_stable(const MarkovAutomaton& m, StateId s);

/// Structural equality: same names, transitions and initial state.
bool structurally_equal(const MarkovAutomaton& a, const MarkovAutomaton& b);

} // namespace mabisim
