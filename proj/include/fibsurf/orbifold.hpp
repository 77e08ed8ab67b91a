// Campana base-orbifold arithmetic: degree of K_B + Delta(f) and classification.
#pragma once

#include "fibsurf/rational.hpp"

#include <string>
#include <vector>

namespace fibsurf {

struct OrbifoldBase {
    long long base_genus = 0;
    std::vector<long long> mults; // every entry >= 2; m(b) = 1 points are omitted

    void validate() const;
};

// deg(K_B + Delta(f)) = 2 g_B - 2 + sum (1 - 1/m_i), exactly.
Rational delta_degree(const OrbifoldBase& base);

struct OrbifoldClass {
    bool general_type = false;
    Rational degree;
    // For g_B = 0 and special: which exception string matched,
    // one of "()", "(n)", "(n,m)", "(2,2,n)", "(2,3,k<=6)", "(2,4,4)", "(3,3,3)", "(2,2,2,2)".
    std::string exception_family;
};

OrbifoldClass classify(const OrbifoldBase& base);

// Genus of the degree-d cover with uniform ramification profile m_i over each
// marked point: g' = 1 + (d/2) deg(K_B + Delta). Throws when the profile is
// infeasible (m_i not dividing d, odd 2g'-2, or a Namba exception over P1).
long long cover_genus(const OrbifoldBase& base, long long d);

} // namespace fibsurf
