#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace covlab {

// Exact arbitrary-precision rational scalar. mpq keeps values canonical
// (lowest terms, positive denominator), which is exactly the invariant we
// need, so there is no wrapper class. Expression templates are off: every
// operation yields a concrete value, so lambdas and auto returns cannot
// dangle on subexpression references.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

inline Int rat_num(const Rat& r) { return Int(numerator(r)); }
inline Int rat_den(const Rat& r) { return Int(denominator(r)); }

inline int sign(const Rat& r) { return r.sign(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Parses "p/q" or "p" (decimal integers, optional leading '-').
inline Rat parse_rat(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument("parse_rat: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0)
            throw std::invalid_argument("parse_rat: zero denominator");
        return Rat(p, q);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    }
}

/// Renders in canonical form: "p" when integral, else "p/q".
inline std::string rat_to_string(const Rat& r)
{
    if (rat_den(r) == 1)
        return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

/// Exact square root when r is the square of a rational, else nullopt.
inline std::optional<Rat> rat_sqrt_exact(const Rat& r)
{
    if (r < 0)
        return std::nullopt;
    Int p = rat_num(r), q = rat_den(r);
    Int sp = sqrt(p), sq = sqrt(q);
    if (sp * sp != p || sq * sq != q)
        return std::nullopt;
    return Rat(sp, sq);
}

} // namespace covlab
