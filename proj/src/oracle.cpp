#include "mabisim/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace mabisim {

bool check_naive_partition(const ProbAutomaton& p, const Partition& part)
{
    auto project = [&](const SubDistribution& d) {
        Vector v(part.num_blocks(), Rational(0));
        for (const auto& [s, q] : d.entries())
            v[part.block_of[s]] += q;
        return v;
    };

    for (const auto& block : part.blocks) {
        for (StateId x : block) {
            for (const auto& t : p.pt) {
                if (t.source != x)
                    continue;
                Vector lhs = project(t.target);
                for (StateId y : block) {
                    auto gens = generator_set(p, y, t.action);
                    std::vector<Vector> projected;
                    for (const auto& g : gens)
                        projected.push_back(project(g));
                    ConvexSet hull = hull_reduce(projected);
                    hull.dimension = part.num_blocks();
                    if (!contains(hull, lhs))
                        return false;
                }
            }
        }
    }
    return true;
}

std::vector<Partition> all_partitions(int n)
{
    std::vector<Partition> out;
    std::vector<int> rgs(n, 0);
    while (true) {
        int k = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<StateId>> blocks(k);
        for (int s = 0; s < n; ++s)
            blocks[rgs[s]].push_back(s);
        out.push_back(Partition::of_blocks(n, std::move(blocks)));

        // next restricted growth string
        int i = n - 1;
        for (; i > 0; --i) {
            int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
            if (rgs[i] < cap) {
                ++rgs[i];
                std::fill(rgs.begin() + i + 1, rgs.end(), 0);
                break;
            }
            rgs[i] = 0;
        }
        if (i == 0)
            break;
    }
    return out;
}

Partition join_partitions(const Partition& a, const Partition& b)
{
    int n = static_cast<int>(a.block_of.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    for (const auto& part : {a, b})
        for (const auto& block : part.blocks)
            for (size_t i = 1; i < block.size(); ++i)
                unite(block[0], block[i]);
    std::map<int, std::vector<StateId>> groups;
    for (int s = 0; s < n; ++s)
        groups[find(s)].push_back(s);
    std::vector<std::vector<StateId>> blocks;
    for (auto& [root, members] : groups)
        blocks.push_back(std::move(members));
    return Partition::of_blocks(n, std::move(blocks));
}

Partition coarsest_naive_partition_bruteforce(const ProbAutomaton& p, int max_states)
{
    int n = p.num_states();
    if (n > max_states)
        throw TooLarge("brute-force oracle limited to " + std::to_string(max_states) + " states");
    Partition best = Partition::discrete(n);
    bool any = false;
    for (const auto& part : all_partitions(n)) {
        if (!check_naive_partition(p, part))
            continue;
        best = any ? join_partitions(best, part) : part;
        any = true;
    }
    if (!any)
        throw std::logic_error("discrete partition must pass the naive check");
    if (!check_naive_partition(p, best))
        throw std::logic_error("join of passing partitions failed the naive check");
    return best;
}

} // namespace mabisim
