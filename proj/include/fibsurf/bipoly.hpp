// Sparse exact-rational bivariate polynomials on the affine charts of P1xP1.
#pragma once

#include "fibsurf/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fibsurf {

// Each global chart fixes one coordinate of [t:s] and one of [x:z] to 1.
// Coordinates are always ordered (base-like, fibre-like).
//   S1Z1 -> (t, x)   S1X1 -> (t, z)   T1Z1 -> (s, x)   T1X1 -> (s, z)
// Local charts arise from blow-ups; their coordinates print as (u, x).
enum class Chart { S1Z1, S1X1, T1Z1, T1X1, Local };

const char* chart_name(Chart c);
// Variable names for a chart, (base, fibre).
std::pair<char, char> chart_vars(Chart c);

using Exponents = std::pair<int, int>; // (base exponent, fibre exponent)
using Bidegree  = std::pair<int, int>; // (degree in [t:s], degree in [x:z])

class BiPoly {
  public:
    BiPoly() = default;
    explicit BiPoly(Chart chart) : chart_(chart) {}
    BiPoly(Chart chart, Rational constant);

    static BiPoly variable(Chart chart, bool fibre_var, int exp = 1);
    static BiPoly monomial(Chart chart, int base_exp, int fib_exp, Rational coeff);

    Chart chart() const { return chart_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;

    const std::optional<Bidegree>& bidegree() const { return bidegree_; }
    // Attaches bihomogeneous data; throws if the chart degrees exceed it.
    void attach_bidegree(Bidegree d);
    void clear_bidegree() { bidegree_.reset(); }

    int degree_base() const;  // -1 for the zero polynomial
    int degree_fibre() const;
    int total_degree_min() const; // multiplicity at the chart origin; -1 if zero

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator-() const;
    bool operator==(const BiPoly& o) const { return chart_ == o.chart_ && terms_ == o.terms_; }
    BiPoly pow(int e) const;
    BiPoly scaled(const Rational& c) const;

    Rational eval(const Rational& base_val, const Rational& fib_val) const;
    BiPoly derivative_base() const;
    BiPoly derivative_fibre() const;

    // f(u + a, x + b): recentres the point (a, b) at the origin.
    BiPoly shifted(const Rational& a, const Rational& b) const;

    // Monomial substitutions used by point blow-ups.
    //   fibre_chart: u = x'u', x = x'   (exceptional divisor {x' = 0})
    //   base_chart:  u = u', x = x'u'   (exceptional divisor {u' = 0})
    BiPoly blowup_fibre_chart() const;
    BiPoly blowup_base_chart() const;

    // Exact division by base^k or fibre^k; throws if not divisible.
    BiPoly divided_by_var(bool fibre_var, int k) const;
    // Largest k with var^k dividing the polynomial (0 for the zero poly).
    int var_order(bool fibre_var) const;

    // Coefficients as univariate slices.
    std::vector<Rational> coeffs_in_fibre_at_base_zero() const; // f(0, x)
    std::vector<Rational> coeffs_in_base_at_fibre_zero() const; // f(u, 0)

    std::string str() const; // canonical printer: graded-lex, explicit * and ^

  private:
    void add_term(Exponents e, const Rational& c);
    void check_chart(const BiPoly& o) const;

    Chart chart_ = Chart::S1Z1;
    std::map<Exponents, Rational> terms_;
    std::optional<Bidegree> bidegree_;

    friend BiPoly chart_change(const BiPoly&, Chart);
};

// Moves a polynomial with attached bidegree to another global chart.
BiPoly chart_change(const BiPoly& f, Chart to);

// Parses the expression grammar (integers, a/b rationals, x z t s, + - * ^,
// parentheses). Variables fixed to 1 by the chart evaluate to 1. Throws
// ParseError with a character position on malformed input.
struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

BiPoly parse_poly(const std::string& text, Chart chart);

// Least total degree of f translated so p = (a, b) is the origin; 0 iff f(p) != 0.
// Throws on the zero polynomial.
int multiplicity_at_point(const BiPoly& f, const Rational& a, const Rational& b);

} // namespace fibsurf
