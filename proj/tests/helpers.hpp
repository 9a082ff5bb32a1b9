#pragma once

#include "mabisim/io.hpp"

#include <string>
#include <vector>

namespace test {

inline mabisim::Rational q(const std::string& text) { return mabisim::parse_rational(text); }

inline mabisim::SubDistribution dist(const std::vector<std::pair<int, std::string>>& entries)
{
    std::vector<std::pair<mabisim::StateId, mabisim::Rational>> out;
    for (const auto& [s, v] : entries)
        out.emplace_back(s, q(v));
    return mabisim::SubDistribution::from_entries(out);
}

inline std::string corpus_path(const std::string& name)
{
    return std::string(MABISIM_CORPUS_DIR) + "/" + name;
}

inline mabisim::MarkovAutomaton corpus(const std::string& name)
{
    return mabisim::load_ma(corpus_path(name));
}

inline const std::vector<std::string>& corpus_files()
{
    static const std::vector<std::string> files = {
        "fig1_m1.ma", "fig1_m2.ma", "fig1_m3.ma", "fig2_m1.ma", "fig2_m2.ma",
        "fig3_ab.ma", "fig5a.ma",   "fig5b.ma",   "fig5c.ma",   "fig5_ef.ma",
        "fig6_rescale.ma", "fig7_example.ma", "fig8_nondet.ma", "fig10_m4.ma"};
    return files;
}

/// Distribution over named states of a specific automaton.
inline mabisim::SubDistribution named_dist(const mabisim::MarkovAutomaton& m,
                                           const std::vector<std::pair<std::string, std::string>>& entries)
{
    std::vector<std::pair<mabisim::StateId, mabisim::Rational>> out;
    for (const auto& [name, v] : entries)
        out.emplace_back(*m.state_by_name(name), q(v));
    return mabisim::SubDistribution::from_entries(out);
}

} // namespace test
