// Exact rational scalar used everywhere; no floating point in this library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace fibsurf {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return numerator(r); }
inline Integer den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

inline Integer to_integer(const Rational& r)
{
    if (!is_integer(r))
        throw std::domain_error("expected an integer, got " + r.str());
    return num(r);
}

// "p" for integers, "p/q" otherwise.
inline std::string rat_str(const Rational& r)
{
    if (is_integer(r))
        return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline Rational rat_parse(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

} // namespace fibsurf
