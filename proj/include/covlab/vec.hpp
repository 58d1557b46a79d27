#pragma once

#include <initializer_list>
#include <numeric>
#include <sstream>
#include <vector>

#include "covlab/error.hpp"
#include "covlab/rat.hpp"

namespace covlab {

/// Rational coordinate vector, dimension fixed at construction (2-4 in
/// practice; the code does not hard-wire the bound).
class Vec {
public:
    Vec() = default;
    explicit Vec(int dim) : c_(dim, Rat(0)) {}
    Vec(std::initializer_list<Rat> xs) : c_(xs) {}
    explicit Vec(std::vector<Rat> xs) : c_(std::move(xs)) {}

    int dim() const { return static_cast<int>(c_.size()); }
    const Rat& operator[](int i) const { return c_[i]; }
    Rat& operator[](int i) { return c_[i]; }

    bool operator==(const Vec& o) const { return c_ == o.c_; }
    bool operator!=(const Vec& o) const { return c_ != o.c_; }

    // lexicographic; used for canonical vertex ordering
    bool operator<(const Vec& o) const
    {
        return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
    }

    bool is_zero() const
    {
        for (const Rat& x : c_)
            if (x != 0)
                return false;
        return true;
    }

    const std::vector<Rat>& coords() const { return c_; }

    std::string str() const
    {
        std::ostringstream os;
        os << "(";
        for (int i = 0; i < dim(); ++i)
            os << (i ? "," : "") << rat_to_string(c_[i]);
        os << ")";
        return os.str();
    }

private:
    std::vector<Rat> c_;
};

inline Vec operator+(const Vec& a, const Vec& b)
{
    Vec r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b)
{
    Vec r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline Vec operator-(const Vec& a)
{
    Vec r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        r[i] = -a[i];
    return r;
}

inline Vec operator*(const Rat& s, const Vec& a)
{
    Vec r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        r[i] = s * a[i];
    return r;
}

inline Rat dot(const Vec& a, const Vec& b)
{
    Rat s(0);
    for (int i = 0; i < a.dim(); ++i)
        s += a[i] * b[i];
    return s;
}

inline Vec cross3(const Vec& a, const Vec& b)
{
    return Vec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
               a[0] * b[1] - a[1] * b[0]};
}

inline Rat norm_sq(const Vec& a) { return dot(a, a); }

/// Scales a nonzero rational vector to the unique integer vector with
/// coprime entries and the same direction.
inline Vec primitive(const Vec& v)
{
    if (v.is_zero())
        throw Error(ErrorKind::DegenerateInput, "primitive: zero vector");
    Int l(1);
    for (int i = 0; i < v.dim(); ++i)
        l = lcm(l, rat_den(v[i]));
    std::vector<Int> w(v.dim());
    Int g(0);
    for (int i = 0; i < v.dim(); ++i) {
        w[i] = rat_num(v[i]) * (l / rat_den(v[i]));
        g = gcd(g, w[i]);
    }
    Vec r(v.dim());
    for (int i = 0; i < v.dim(); ++i)
        r[i] = Rat(w[i] / g);
    return r;
}

inline Vec unit_axis(int dim, int k)
{
    Vec r(dim);
    r[k] = 1;
    return r;
}

inline Vec parse_vec(const std::string& s)
{
    std::vector<Rat> xs;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ',')) {
        auto b = tok.find_first_not_of(" \t");
        auto e = tok.find_last_not_of(" \t");
        xs.push_back(parse_rat(tok.substr(b, e - b + 1)));
    }
    return Vec(std::move(xs));
}

} // namespace covlab
