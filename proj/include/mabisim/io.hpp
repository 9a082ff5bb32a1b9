#pragma once

#include "mabisim/refinement.hpp"

#include <optional>
#include <string>

namespace mabisim {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line)
    {
    }
    ParseError(int line, int column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line(line), column(column)
    {
    }
    int line;
    int column = 0;
};

class SemanticError : public std::runtime_error {
public:
    SemanticError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line)
    {
    }
    SemanticError(int line, int column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line(line), column(column)
    {
    }
    int line;
    int column = 0;
};

/// Parses the line-oriented .ma format:
///
///   markov_automaton | prob_automaton
///   states <name>+
///   initial <name>
///   actions <name>+                          (optional)
///   prob <src> <action|tau> : <q> <tgt> (, <q> <tgt>)*
///   markov <src> <q> <tgt>
///
/// Probabilities and rates are rational literals (p/q or integers); the
/// branch probabilities of each prob line must sum to exactly 1 and rates
/// must be strictly positive. chi(r) action tokens are accepted only under
/// the prob_automaton header; markov lines are rejected there.
MarkovAutomaton parse_ma(const std::string& text);

/// Reads and parses a .ma file.
MarkovAutomaton load_ma(const std::string& path);

/// Canonical text form; parse_ma(print_ma(m)) is structurally equal to m.
std::string print_ma(const MarkovAutomaton& m);

std::string format_distribution(const SubDistribution& d, const MarkovAutomaton& m);

enum class ReportFormat { Text, Json };

std::string emit_report(const DecisionReport& r, ReportFormat format);

/// GraphViz rendering: one node per state, probabilistic branches as
/// intermediate point nodes, chi/tau/external labels distinguished. When a
/// partition is given, states are clustered by block.
std::string export_dot(const MarkovAutomaton& m, const Partition* part = nullptr);

} // namespace mabisim
