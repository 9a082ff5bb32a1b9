#include "mabisim/distribution.hpp"

namespace mabisim {

SubDistribution dist_sum(const SubDistribution& a, const SubDistribution& b)
{
    if (a.mass() + b.mass() > 1)
        throw MassOverflow("dist_sum: combined mass exceeds 1");
    SubDistribution out = a;
    for (const auto& [s, q] : b.entries_) {
        auto [it, inserted] = out.entries_.emplace(s, q);
        if (!inserted)
            it->second += q;
    }
    return out;
}

SubDistribution dist_scale(const Rational& c, const SubDistribution& mu)
{
    if (c < 0)
        throw MassOverflow("dist_scale: negative factor");
    if (c * mu.mass() > 1)
        throw MassOverflow("dist_scale: scaled mass exceeds 1");
    SubDistribution out;
    if (c == 0)
        return out;
    for (const auto& [s, q] : mu.entries_)
        out.entries_[s] = c * q;
    return out;
}

SubDistribution dist_minus(const SubDistribution& mu, StateId s)
{
    if (!mu.contains(s))
        throw NotInSupport("dist_minus: state not in support");
    SubDistribution out = mu;
    out.entries_.erase(s);
    return out;
}

} // namespace mabisim
