#include "mabisim/rational.hpp"

namespace mabisim {

Rational parse_rational(const std::string& text)
{
    if (text.empty())
        throw BadRational("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0)
            throw BadRational("zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const BadRational&) {
        throw;
    } catch (const std::exception&) {
        throw BadRational("malformed rational literal '" + text + "'");
    }
}

std::string format_rational(const Rational& value)
{
    std::string out = numerator(value).str();
    if (denominator(value) != 1)
        out += "/" + denominator(value).str();
    return out;
}

} // namespace mabisim
