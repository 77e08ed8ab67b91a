// Dense univariate polynomials over Q; support for the singular-locus search.
#pragma once

#include "fibsurf/rational.hpp"

#include <vector>

namespace fibsurf {

class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static UPoly constant(Rational v) { return UPoly({std::move(v)}); }

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return (int)c_.size() - 1; } // -1 for zero
    const Rational& leading() const { return c_.back(); }

    Rational eval(const Rational& v) const;
    UPoly derivative() const;

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly scaled(const Rational& k) const;
    bool operator==(const UPoly& o) const { return c_ == o.c_; }

    // Euclidean division; divisor must be nonzero.
    std::pair<UPoly, UPoly> divrem(const UPoly& d) const;
    UPoly monic() const;

    std::string str(char var = 'v') const;

  private:
    void normalize();
    std::vector<Rational> c_; // c_[i] is the coefficient of v^i
};

UPoly upoly_gcd(const UPoly& a, const UPoly& b);               // monic gcd
UPoly squarefree_part(const UPoly& f);                         // monic
bool divides(const UPoly& d, const UPoly& f);

// All rational roots of f (each listed once), plus the monic cofactor of f's
// squarefree part after removing those roots. Throws if the integer divisor
// enumeration would explode (beyond desk scale).
struct RationalRoots {
    std::vector<Rational> roots;
    UPoly leftover; // squarefree, no rational roots; constant 1 when none remain
};
RationalRoots rational_roots(const UPoly& f);

} // namespace fibsurf
