#pragma once

#include "mabisim/refinement.hpp"

namespace mabisim {

class TooLarge : public std::runtime_error {
public:
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// Checks the naive weak bisimulation condition directly: for every pair x, y
/// in one block and every strong transition x -a-> mu, the block projection
/// of mu must lie in the projected convex hull of y's weak a moves (hull
/// membership is exactly the existence of the combined weak response).
bool check_naive_partition(const ProbAutomaton& p, const Partition& part);

/// Exhaustive oracle: scans all partitions of the state set (Bell-number
/// many) and returns the coarsest one passing check_naive_partition, computed
/// as the join of all passing partitions. Throws TooLarge above the bound.
Partition coarsest_naive_partition_bruteforce(const ProbAutomaton& p, int max_states = 6);

/// All partitions of {0..n-1}, generated from restricted growth strings.
std::vector<Partition> all_partitions(int n);

/// Finest common coarsening of two partitions.
Partition join_partitions(const Partition& a, const Partition& b);

} // namespace mabisim
