#include "flowtorus/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace flowtorus {

namespace {

Integer parse_integer(const std::string& text, std::size_t begin, std::size_t end, const std::string& whole)
{
    std::size_t i = begin;
    if (i < end && (text[i] == '-' || text[i] == '+'))
        ++i;
    if (i == end)
        throw std::invalid_argument("malformed rational '" + whole + "'");
    for (std::size_t k = i; k < end; ++k)
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw std::invalid_argument("malformed rational '" + whole + "'");
    std::string digits = text.substr(begin, end - begin);
    if (!digits.empty() && digits.front() == '+')
        digits.erase(0, 1);
    return Integer(digits);
}

} // namespace

Rational parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        return Rational(parse_integer(text, 0, text.size(), text));
    const Integer num = parse_integer(text, 0, slash, text);
    const Integer den = parse_integer(text, slash + 1, text.size(), text);
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
}

} // namespace flowtorus
