#pragma once

#include "mabisim/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace mabisim {

using StateId = int;

class MassOverflow : public std::runtime_error {
public:
    explicit MassOverflow(const std::string& what) : std::runtime_error(what) {}
};

class NotInSupport : public std::runtime_error {
public:
    explicit NotInSupport(const std::string& what) : std::runtime_error(what) {}
};

/// Finitely supported map state -> positive rational mass, total mass <= 1.
/// Zero entries are never stored, so structural equality of the entry maps is
/// equality of subdistributions.
class SubDistribution {
public:
    SubDistribution() = default;

    static SubDistribution dirac(StateId s) { return scaled_dirac(s, 1); }

    static SubDistribution scaled_dirac(StateId s, const Rational& mass)
    {
        SubDistribution d;
        if (mass < 0 || mass > 1)
            throw MassOverflow("dirac mass outside [0,1]");
        if (mass > 0)
            d.entries_[s] = mass;
        return d;
    }

    /// Builds from (state, mass) pairs; repeated states accumulate.
    static SubDistribution from_entries(const std::vector<std::pair<StateId, Rational>>& entries)
    {
        SubDistribution d;
        for (const auto& [s, q] : entries)
            d.add(s, q);
        if (d.mass() > 1)
            throw MassOverflow("total mass exceeds 1");
        return d;
    }

    const std::map<StateId, Rational>& entries() const { return entries_; }

    Rational operator()(StateId s) const
    {
        auto it = entries_.find(s);
        return it == entries_.end() ? Rational(0) : it->second;
    }

    bool contains(StateId s) const { return entries_.count(s) > 0; }
    bool empty() const { return entries_.empty(); }
    size_t support_size() const { return entries_.size(); }

    std::vector<StateId> support() const
    {
        std::vector<StateId> out;
        out.reserve(entries_.size());
        for (const auto& [s, q] : entries_)
            out.push_back(s);
        return out;
    }

    Rational mass() const
    {
        Rational total = 0;
        for (const auto& [s, q] : entries_)
            total += q;
        return total;
    }

    bool is_full() const { return mass() == 1; }

    bool operator==(const SubDistribution& other) const { return entries_ == other.entries_; }
    bool operator!=(const SubDistribution& other) const { return !(*this == other); }
    bool operator<(const SubDistribution& other) const { return entries_ < other.entries_; }

private:
    void add(StateId s, const Rational& q)
    {
        if (q < 0)
            throw MassOverflow("negative mass");
        if (q == 0)
            return;
        auto [it, inserted] = entries_.emplace(s, q);
        if (!inserted)
            it->second += q;
    }

    friend SubDistribution dist_sum(const SubDistribution&, const SubDistribution&);
    friend SubDistribution dist_scale(const Rational&, const SubDistribution&);
    friend SubDistribution dist_minus(const SubDistribution&, StateId);

    std::map<StateId, Rational> entries_;
};

/// Pointwise sum; total mass must stay <= 1.
SubDistribution dist_sum(const SubDistribution& a, const SubDistribution& b);

/// Pointwise scaling by c >= 0 with c*|mu| <= 1.
SubDistribution dist_scale(const Rational& c, const SubDistribution& mu);

/// Removes the mass of s (which must be in the support).
SubDistribution dist_minus(const SubDistribution& mu, StateId s);

} // namespace mabisim
