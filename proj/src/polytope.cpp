#include "mabisim/polytope.hpp"

#include <algorithm>

namespace mabisim {

namespace {

// Dense phase-1 simplex tableau. Rows are the equality constraints with an
// identity block of artificial variables; the objective minimizes the sum of
// the artificials. Bland's rule on entering and leaving variables guarantees
// termination.
class Phase1Simplex {
public:
    Phase1Simplex(const std::vector<Vector>& columns, const Vector& rhs)
        : rows_(rhs.size()), cols_(columns.size())
    {
        tableau_.assign(rows_, Vector(cols_ + rows_ + 1, Rational(0)));
        for (size_t i = 0; i < rows_; ++i) {
            bool flip = rhs[i] < 0;
            for (size_t j = 0; j < cols_; ++j)
                tableau_[i][j] = flip ? -columns[j][i] : columns[j][i];
            tableau_[i][cols_ + i] = 1;
            tableau_[i].back() = flip ? -rhs[i] : rhs[i];
        }
        basis_.resize(rows_);
        for (size_t i = 0; i < rows_; ++i)
            basis_[i] = cols_ + i;
        objective_.assign(cols_ + rows_ + 1, Rational(0));
        for (size_t j = 0; j < cols_ + rows_; ++j) {
            Rational cost = j < cols_ ? Rational(0) : Rational(1);
            for (size_t i = 0; i < rows_; ++i)
                cost -= tableau_[i][j];
            objective_[j] = j < cols_ ? cost : Rational(0);
        }
        Rational w = 0;
        for (size_t i = 0; i < rows_; ++i)
            w += tableau_[i].back();
        objective_.back() = -w;
    }

    bool feasible()
    {
        while (true) {
            size_t enter = cols_ + rows_;
            for (size_t j = 0; j < cols_ + rows_; ++j) {
                if (objective_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_ + rows_)
                break;
            size_t leave = rows_;
            Rational best_ratio = 0;
            for (size_t i = 0; i < rows_; ++i) {
                if (tableau_[i][enter] <= 0)
                    continue;
                Rational ratio = tableau_[i].back() / tableau_[i][enter];
                if (leave == rows_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows_)
                throw std::logic_error("phase-1 simplex: unbounded objective");
            pivot(leave, enter);
        }
        return objective_.back() == 0;
    }

private:
    void pivot(size_t row, size_t col)
    {
        Rational p = tableau_[row][col];
        for (auto& v : tableau_[row])
            v /= p;
        for (size_t i = 0; i < rows_; ++i) {
            if (i == row || tableau_[i][col] == 0)
                continue;
            Rational f = tableau_[i][col];
            for (size_t j = 0; j < tableau_[i].size(); ++j)
                tableau_[i][j] -= f * tableau_[row][j];
        }
        if (objective_[col] != 0) {
            Rational f = objective_[col];
            for (size_t j = 0; j < objective_.size(); ++j)
                objective_[j] -= f * tableau_[row][j];
        }
        basis_[row] = col;
    }

    size_t rows_;
    size_t cols_;
    std::vector<Vector> tableau_;
    Vector objective_;
    std::vector<size_t> basis_;
};

} // namespace

bool lp_feasible(const std::vector<Vector>& columns, const Vector& rhs)
{
    for (const auto& col : columns)
        if (col.size() != rhs.size())
            throw DimensionMismatch("lp_feasible: column/rhs size mismatch");
    if (columns.empty()) {
        for (const auto& v : rhs)
            if (v != 0)
                return false;
        return true;
    }
    Phase1Simplex simplex(columns, rhs);
    return simplex.feasible();
}

bool contains(const ConvexSet& c, const Vector& v)
{
    if (c.empty())
        return false;
    if (v.size() != c.dimension)
        throw DimensionMismatch("contains: vector dimension mismatch");
    // Sum lambda_i g_i = v together with sum lambda_i = 1.
    std::vector<Vector> columns;
    columns.reserve(c.generators.size());
    for (const auto& g : c.generators) {
        Vector col = g;
        col.push_back(1);
        columns.push_back(std::move(col));
    }
    Vector rhs = v;
    rhs.push_back(1);
    return lp_feasible(columns, rhs);
}

ConvexSet hull_reduce(const std::vector<Vector>& points)
{
    ConvexSet out;
    if (points.empty())
        return out;
    out.dimension = points[0].size();
    for (const auto& p : points)
        if (p.size() != out.dimension)
            throw DimensionMismatch("hull_reduce: inconsistent dimensions");

    std::vector<Vector> unique;
    for (const auto& p : points)
        if (std::find(unique.begin(), unique.end(), p) == unique.end())
            unique.push_back(p);

    std::vector<bool> alive(unique.size(), true);
    for (size_t i = 0; i < unique.size(); ++i) {
        ConvexSet others;
        others.dimension = out.dimension;
        for (size_t j = 0; j < unique.size(); ++j)
            if (j != i && alive[j])
                others.generators.push_back(unique[j]);
        if (!others.empty() && contains(others, unique[i]))
            alive[i] = false;
    }
    for (size_t i = 0; i < unique.size(); ++i)
        if (alive[i])
            out.generators.push_back(unique[i]);
    return out;
}

bool set_equal(const ConvexSet& a, const ConvexSet& b)
{
    if (a.empty() && b.empty())
        return true;
    if (a.empty() != b.empty())
        return false;
    if (a.dimension != b.dimension)
        throw DimensionMismatch("set_equal: dimension mismatch");
    for (const auto& g : a.generators)
        if (!contains(b, g))
            return false;
    for (const auto& g : b.generators)
        if (!contains(a, g))
            return false;
    return true;
}

ConvexSet restrict_zero(const ConvexSet& c, const std::set<int>& zero_coords)
{
    for (int i : zero_coords)
        if (i < 0 || static_cast<size_t>(i) >= c.dimension)
            throw DimensionMismatch("restrict_zero: coordinate out of range");
    ConvexSet out;
    out.dimension = c.dimension;
    for (const auto& g : c.generators) {
        bool keep = true;
        for (int i : zero_coords) {
            if (g[i] != 0) {
                keep = false;
                break;
            }
        }
        if (keep)
            out.generators.push_back(g);
    }
    return out;
}

ConvexSet quotient_project(const ConvexSet& c, const std::vector<std::vector<int>>& blocks)
{
    std::vector<Vector> projected;
    projected.reserve(c.generators.size());
    for (const auto& g : c.generators) {
        Vector v(blocks.size(), Rational(0));
        for (size_t k = 0; k < blocks.size(); ++k)
            for (int i : blocks[k])
                v[k] += g[i];
        projected.push_back(std::move(v));
    }
    ConvexSet out = hull_reduce(projected);
    out.dimension = blocks.size();
    return out;
}

} // namespace mabisim
