#pragma once

#include "mabisim/chi.hpp"
#include "mabisim/polytope.hpp"
#include "mabisim/weak_reach.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mabisim {

/// Disjoint nonempty blocks covering 0..n-1. Blocks are kept sorted by their
/// smallest member and members ascending, so equal partitions compare equal.
struct Partition {
    std::vector<std::vector<StateId>> blocks;
    std::vector<int> block_of;

    static Partition single_block(int n);
    static Partition discrete(int n);
    static Partition of_blocks(int n, std::vector<std::vector<StateId>> blocks);

    int num_blocks() const { return static_cast<int>(blocks.size()); }
    bool same_block(StateId a, StateId b) const { return block_of[a] == block_of[b]; }
    bool operator==(const Partition& other) const { return blocks == other.blocks; }
    bool operator!=(const Partition& other) const { return !(*this == other); }

    /// True when every block of *this is contained in a block of coarser.
    bool refines(const Partition& coarser) const;
};

/// Evidence that a block needs refining: two witness states inside it whose
/// restricted, quotiented sets differ for the action.
struct Splitter {
    int block;
    Action action;
    StateId witness_s;
    StateId witness_t;
};

/// Working state of the inner tangible/vanishing fixpoint: the tangible set
/// and, per discovered vanishing state, the representation that justified it.
struct RefinementState {
    Partition partition;
    std::set<StateId> tangible;
    std::map<StateId, SubDistribution> vanishing;
};

/// Per-automaton caches: candidate targets DiracDet(s, tau), the sets
/// S(s, alpha) and the modified-automaton sets S_nu(s, alpha). Sets are
/// computed once on first use and only re-restricted/re-projected per round.
class AnalysisCache {
public:
    explicit AnalysisCache(const ProbAutomaton& p, bool use_preprocess_flags = true);

    const ProbAutomaton& automaton() const { return pa_; }
    const std::vector<Action>& alphabet() const { return alphabet_; }
    const std::vector<SubDistribution>& candidates(StateId s) const { return candidates_[s]; }
    bool always_tangible(StateId s) const { return always_tangible_[s]; }

    const ConvexSet& weak_set(StateId s, const Action& alpha);
    const ConvexSet& modified_weak_set(StateId s, int candidate, const Action& alpha);

    /// Restriction to zero mass on zero_states followed by projection onto
    /// the partition blocks. The pipeline always restricts first; the two
    /// operations do not commute.
    ConvexSet restricted_projected(const ConvexSet& c, const std::set<StateId>& zero_states,
                                   const Partition& part) const;

private:
    ProbAutomaton pa_;
    std::vector<Action> alphabet_;
    std::vector<std::vector<SubDistribution>> candidates_;
    std::vector<bool> always_tangible_;
    std::map<std::pair<StateId, std::string>, ConvexSet> weak_sets_;
    std::map<std::tuple<StateId, int, std::string>, ConvexSet> modified_sets_;
};

/// All transitions emanating from s replaced by the single transition
/// (s, tau, nu). Indices are kept so that coordinates align for set
/// comparison.
ProbAutomaton modified_automaton(const ProbAutomaton& p, StateId s, const SubDistribution& nu);

/// First candidate nu in DiracDet(s, tau) that leaves the block of s and
/// whose restricted, quotiented sets match the original automaton's for every
/// action. Returns the candidate index and distribution.
std::optional<std::pair<int, SubDistribution>>
find_vanishing_representation(AnalysisCache& cache, StateId s, const Partition& part,
                              const std::set<StateId>& zero_states);

/// Inner fixpoint of Alg.-style tangible detection: grows the tangible set
/// and the vanishing map until stable, re-validating stored representations
/// whenever the restriction set changes.
RefinementState tangible_fixpoint(AnalysisCache& cache, const Partition& part);

/// First block/action/state pair whose restricted, quotiented sets differ;
/// nullopt when the partition is stable.
std::optional<Splitter> find_weak_split(AnalysisCache& cache, const RefinementState& rs);

/// Splits the named block into sub-blocks of equal restricted, quotiented
/// sets for the splitter's action. Strictly finer than the input.
Partition refine(AnalysisCache& cache, const RefinementState& rs, const Splitter& splitter);

enum class Semantics { Weak, Naive };

struct AnalysisOptions {
    Semantics semantics = Semantics::Weak;
    bool preprocess = false;     // structural up-front elimination (weak only)
    bool tangible_flags = false; // always-tangible flagging in the fixpoint
};

struct AnalysisResult {
    ProbAutomaton automaton; // the automaton the loop actually ran on
    RefinementState state;
    int rounds = 0;
    std::vector<std::string> preprocess_eliminated;
};

/// The refinement loop on a single PA: alternate the tangible fixpoint,
/// splitter search and refinement until no splitter exists.
AnalysisResult analyze(const ProbAutomaton& p, const AnalysisOptions& opts = {});

/// Optimization pass: states whose only tau transitions are self-loops are
/// flagged always-tangible, and non-initial states with exactly one emanating
/// transition, tau-labelled and not a pure self-loop, are eliminated up
/// front. Must not change any verdict.
ProbAutomaton preprocess(const ProbAutomaton& p, std::vector<std::string>* eliminated = nullptr);

/// preprocess with additional states shielded from up-front elimination (the
/// states whose verdict is being asked about).
ProbAutomaton preprocess_protected(const ProbAutomaton& p, const std::set<StateId>& protect,
                                   std::vector<std::string>* eliminated = nullptr);

struct DecisionReport {
    bool bisimilar = false;
    Semantics semantics = Semantics::Weak;
    ChiMode chi_mode = ChiMode::WithChiZero;
    bool preprocessed = false;
    int rounds = 0;
    std::vector<std::vector<std::string>> partition;
    std::vector<std::string> tangible;
    std::map<std::string, std::map<std::string, Rational>> vanishing;
    std::vector<std::string> preprocess_eliminated;
    double elapsed_ms = 0;
};

struct DecideOptions {
    Semantics semantics = Semantics::Weak;
    ChiMode chi_mode = ChiMode::WithChiZero;
    bool preprocess = true;
};

/// Builds a report from an analysis run; the verdict compares the blocks of
/// the two given states.
DecisionReport make_report(const AnalysisResult& res, StateId left, StateId right,
                           const DecideOptions& opts);

/// Decides weak or naive weak bisimilarity of two automata on the direct sum
/// of their PA images.
DecisionReport decide(const MarkovAutomaton& m1, const MarkovAutomaton& m2,
                      const DecideOptions& opts = {});

/// Decides whether two named states of one automaton are bisimilar; used for
/// the condensed two-root models.
DecisionReport decide_states(const MarkovAutomaton& m, const std::string& s, const std::string& t,
                             const DecideOptions& opts = {});

DecisionReport decide_weak(const MarkovAutomaton& m1, const MarkovAutomaton& m2,
                           ChiMode mode = ChiMode::WithChiZero);
DecisionReport decide_naive(const MarkovAutomaton& m1, const MarkovAutomaton& m2,
                            ChiMode mode = ChiMode::WithChiZero);

} // namespace mabisim
