// Rational singular-locus search on P1xP1 via resultants and root extraction.
#pragma once

#include "fibsurf/bipoly.hpp"
#include "fibsurf/upoly.hpp"

#include <string>
#include <vector>

namespace fibsurf {

// A point of P1xP1 with rational coordinates, normalised for deduplication:
// each factor is either [c:1] (finite, value c) or [1:0] (infinity).
struct ProjPoint {
    bool ts_inf = false;
    Rational ts; // t/s when finite
    bool xz_inf = false;
    Rational xz; // x/z when finite

    friend bool operator==(const ProjPoint& a, const ProjPoint& b)
    {
        return a.ts_inf == b.ts_inf && a.xz_inf == b.xz_inf &&
               (a.ts_inf || a.ts == b.ts) && (a.xz_inf || a.xz == b.xz);
    }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b);
    std::string str() const;
};

// Builds the point from finite chart coordinates (base value, fibre value).
ProjPoint chart_point(Chart c, const Rational& base_val, const Rational& fib_val);
// Whether the point has finite coordinates in the chart; fills them if so.
bool point_in_chart(const ProjPoint& p, Chart c, Rational& base_val, Rational& fib_val);

struct SingularPoint {
    ProjPoint point;
    int multiplicity = 0;
};

struct SingularLocus {
    std::vector<SingularPoint> points; // deduplicated, sorted
    bool complete = true;              // false if non-rational singular points may exist
    std::vector<std::string> notes;    // which chart produced irrational leftovers
    // Rational base values whose fibre carries singular points with irrational
    // fibre coordinates ("([c:1]-or-[1:0]" pairs as (inf, value)).
    std::vector<std::pair<bool, Rational>> incomplete_fibres;
};

// Resultant of f and g with respect to the fibre variable, as a polynomial in
// the base variable (Sylvester determinant, evaluation/interpolation).
UPoly resultant_fibre(const BiPoly& f, const BiPoly& g);

// True when the curve f has no repeated factor (checked via res(f, f_x) and the
// squarefreeness of the fibre-content).
bool is_squarefree_curve(const BiPoly& f);

// All singular points (multiplicity >= 2) with rational coordinates, searched
// over the four charts and deduplicated; requires an attached bidegree.
SingularLocus rational_singular_points(const BiPoly& f);

} // namespace fibsurf
