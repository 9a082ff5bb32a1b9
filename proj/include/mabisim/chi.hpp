#pragma once

#include "mabisim/automaton.hpp"

#include <set>
#include <vector>

namespace mabisim {

/// WithChiZero gives every stable state a chi transition, including chi(0) on
/// stable states with exit rate 0. LegacyNoChiZero suppresses the chi(0)
/// transition; it exists only to reproduce the behaviour of earlier
/// definitions where rate 0 was left undefined.
enum class ChiMode { WithChiZero, LegacyNoChiZero };

/// Sum of the rates of all Markovian transitions from s to t.
Rational rate_between(const MarkovAutomaton& m, StateId s, StateId t);

/// Total outgoing Markovian rate of s.
Rational exit_rate(const MarkovAutomaton& m, StateId s);

/// Normalized rate vector of s, or the Dirac on s when the exit rate is 0.
SubDistribution successor_distribution(const MarkovAutomaton& m, StateId s);

/// The chi actions the mapping emits for m under the given mode.
std::set<Action> chi_action_set(const MarkovAutomaton& m, ChiMode mode);

/// The MA -> PA mapping: probabilistic transitions are kept, every stable
/// state gains one chi(exit rate) transition to its successor distribution
/// (maximal progress: unstable states contribute nothing), and the Markovian
/// transitions are dropped. Inputs already in PA form are returned unchanged.
ProbAutomaton ma_to_pa(const MarkovAutomaton& m, ChiMode mode = ChiMode::WithChiZero);

/// Unsynchronised parallel composition: a state of the result may perform all
/// transitions of its components. Only pairs reachable from the initial pair
/// are kept. Shared external action names are interleaved, not synchronized;
/// a note is appended to *warnings when the action sets intersect.
MarkovAutomaton parallel_compose(const MarkovAutomaton& a, const MarkovAutomaton& b,
                                 std::vector<std::string>* warnings = nullptr);

struct DirectSum {
    ProbAutomaton automaton;
    StateId left_root;
    StateId right_root;
};

/// Disjoint union of two PAs with index offsetting; display names get an
/// automaton prefix. The action universe is the union of both alphabets.
DirectSum direct_sum(const ProbAutomaton& a, const ProbAutomaton& b);

} // namespace mabisim
