#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace mabisim {

// All probabilities and rates in the library are exact rationals; nothing in
// the pipeline ever rounds. cpp_rational keeps values normalized (lowest
// terms, positive denominator).
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class BadRational : public std::runtime_error {
public:
    explicit BadRational(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "n" or "n/d" with optional leading minus. Throws BadRational on
/// malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical form: "n" when the denominator is 1, otherwise "n/d".
std::string format_rational(const Rational& value);

inline bool is_integer(const Rational& value) { return denominator(value) == 1; }

} // namespace mabisim
