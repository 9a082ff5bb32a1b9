#pragma once

#include "mabisim/rational.hpp"

#include <set>
#include <stdexcept>
#include <vector>

namespace mabisim {

using Vector = std::vector<Rational>;

class DimensionMismatch : public std::runtime_error {
public:
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// V-representation of a convex set of nonnegative rational vectors. After
/// hull_reduce no generator is a convex combination of the others. An empty
/// generator list is the empty set (``no weak transition exists''), distinct
/// from any nonempty set.
struct ConvexSet {
    size_t dimension = 0;
    std::vector<Vector> generators;

    bool empty() const { return generators.empty(); }
    size_t size() const { return generators.size(); }
};

/// Exact feasibility of {x >= 0, A x = b}, decided by a phase-1 simplex over
/// rationals with Bland's rule.
bool lp_feasible(const std::vector<Vector>& columns, const Vector& rhs);

/// Keeps exactly the extreme points of the convex hull of the input.
ConvexSet hull_reduce(const std::vector<Vector>& points);

/// True iff v is a convex combination of the generators.
bool contains(const ConvexSet& c, const Vector& v);

/// Mutual generator inclusion. Two empty sets are equal regardless of
/// dimension.
bool set_equal(const ConvexSet& a, const ConvexSet& b);

/// Intersection with the hyperplanes x_i = 0 for i in zero_coords. Because
/// all coordinates are nonnegative, a convex combination vanishes at i iff
/// every positively weighted generator does, so filtering generators is
/// exact.
ConvexSet restrict_zero(const ConvexSet& c, const std::set<int>& zero_coords);

/// Projects every generator by summing coordinates within each block, then
/// hull-reduces. Projection commutes with taking convex hulls, so projecting
/// the generators suffices.
ConvexSet quotient_project(const ConvexSet& c, const std::vector<std::vector<int>>& blocks);

} // namespace mabisim
