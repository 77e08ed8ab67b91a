#include "fibsurf/orbifold.hpp"

#include <algorithm>
#include <sstream>

namespace fibsurf {

void OrbifoldBase::validate() const
{
    if (base_genus < 0)
        throw std::domain_error("negative base genus");
    for (long long m : mults)
        if (m < 2)
            throw std::domain_error("orbifold multiplicities must be >= 2");
}

Rational delta_degree(const OrbifoldBase& base)
{
    base.validate();
    Rational deg = 2 * base.base_genus - 2;
    for (long long m : base.mults)
        deg += Rational(m - 1, m);
    return deg;
}

OrbifoldClass classify(const OrbifoldBase& base)
{
    OrbifoldClass out;
    out.degree = delta_degree(base);
    out.general_type = out.degree > 0;
    if (base.base_genus == 0 && !out.general_type) {
        std::vector<long long> m = base.mults;
        std::sort(m.begin(), m.end());
        auto fam = [&]() -> std::string {
            switch (m.size()) {
                case 0: return "()";
                case 1: return "(n)";
                case 2: return "(n,m)";
                case 3:
                    if (m[0] == 2 && m[1] == 2) return "(2,2,n)";
                    if (m[0] == 2 && m[1] == 3 && m[2] <= 6) return "(2,3,k<=6)";
                    if (m[0] == 2 && m[1] == 4 && m[2] == 4) return "(2,4,4)";
                    if (m[0] == 3 && m[1] == 3 && m[2] == 3) return "(3,3,3)";
                    return "";
                case 4:
                    if (m[0] == 2 && m[1] == 2 && m[2] == 2 && m[3] == 2) return "(2,2,2,2)";
                    return "";
                default: return "";
            }
        }();
        if (fam.empty())
            throw std::logic_error("special orbifold outside the exception list; "
                                   "degree test and recogniser disagree");
        out.exception_family = fam;
    }
    return out;
}

long long cover_genus(const OrbifoldBase& base, long long d)
{
    base.validate();
    if (d < 1)
        throw std::domain_error("cover degree must be positive");
    for (long long m : base.mults)
        if (d % m != 0)
            throw std::domain_error("profile infeasible: " + std::to_string(m) +
                                    " does not divide the degree");
    if (base.base_genus == 0) {
        // Namba exceptions over P1: k = 1, and k = 2 with distinct multiplicities.
        if (base.mults.size() == 1)
            throw std::domain_error("no cover of P1 ramified over a single point");
        if (base.mults.size() == 2 && base.mults[0] != base.mults[1])
            throw std::domain_error("no cover of P1 ramified over two points with "
                                    "distinct multiplicities");
    }
    Rational twog2 = Rational(d) * delta_degree(base); // 2g' - 2
    if (!is_integer(twog2) || to_integer(twog2) % 2 != 0)
        throw std::domain_error("profile infeasible: 2g'-2 = " + rat_str(twog2) +
                                " is not an even integer");
    long long g = (long long)to_integer(twog2) / 2 + 1;
    if (g < 0)
        throw std::domain_error("profile infeasible: negative cover genus");
    return g;
}

} // namespace fibsurf
