#include "fibsurf/invariants.hpp"

#include "fibsurf/singular.hpp"
#include "fibsurf/upoly.hpp"

namespace fibsurf {

void SurfaceInvariants::apply(const LedgerEntry& e)
{
    chi += e.dchi;
    K2 += e.dK2;
    c2 = 12 * chi - K2;
    ledger.push_back(e);
    assert_noether();
}

void SurfaceInvariants::assert_noether() const
{
    if (c2 != 12 * chi - K2)
        throw std::logic_error("Noether identity violated in the invariant ledger");
}

bool even_divisor_check(Bidegree d)
{
    return d.first % 2 == 0 && d.second % 2 == 0;
}

SurfaceInvariants smooth_double_cover_invariants(Bidegree d)
{
    if (!even_divisor_check(d))
        throw std::domain_error("branch bidegree (" + std::to_string(d.first) + "," +
                                std::to_string(d.second) + ") is not an even divisor");
    long long p = d.first / 2, q = d.second / 2; // L = (p, q), K_W = (-2, -2)
    // (a,b).(a',b') = ab' + a'b on the quadric
    long long LKL = 2 * p * q + (-2 * p - 2 * q); // L.(L + K_W)
    if (LKL % 2 != 0)
        throw std::logic_error("L.(L+K) must be even");
    SurfaceInvariants s;
    s.chi = 2 + LKL / 2;
    s.K2 = 2 * (2 * (p - 2) * (q - 2)); // 2 (K_W + L)^2
    s.c2 = 12 * s.chi - s.K2;
    s.assert_noether();
    return s;
}

std::pair<long long, long long> step_invariant_delta(int m)
{
    if (m < 2)
        throw std::domain_error("blow-up centres have branch multiplicity >= 2");
    long long k = m / 2;
    return {-k * (k - 1) / 2, -2 * (k - 1) * (k - 1)};
}

SurfaceInvariants resolved_invariants(SurfaceInvariants raw,
                                      const std::vector<std::pair<std::string, int>>& steps,
                                      int contractions)
{
    for (const auto& [label, m] : steps) {
        auto [dchi, dK2] = step_invariant_delta(m);
        raw.apply({label + " (m=" + std::to_string(m) + ")", dchi, dK2});
    }
    if (contractions > 0)
        raw.apply({"contract " + std::to_string(contractions) + " (-1)-curves", 0,
                   contractions});
    return raw;
}

long long generic_fibre_genus(const BiPoly& branch)
{
    if (branch.is_zero())
        throw std::domain_error("zero branch");
    if (!branch.bidegree())
        throw std::domain_error("generic_fibre_genus requires an attached bidegree");
    BiPoly f = branch.chart() == Chart::S1Z1 ? branch : chart_change(branch, Chart::S1Z1);
    // Remove vertical components (they miss every generic fibre).
    std::vector<UPoly> cols;
    for (const auto& [e, c] : f.terms()) {
        if ((int)cols.size() <= e.second)
            cols.resize(e.second + 1);
        std::vector<Rational> cc = cols[e.second].coeffs();
        if ((int)cc.size() <= e.first)
            cc.resize(e.first + 1, Rational(0));
        cc[e.first] = c;
        cols[e.second] = UPoly(std::move(cc));
    }
    UPoly content;
    for (const auto& c : cols)
        content = upoly_gcd(content, c);
    if (content.is_zero())
        throw std::logic_error("unexpected zero content");
    BiPoly rest(Chart::S1Z1);
    // divide each fibre-coefficient by the content
    for (int j = 0; j < (int)cols.size(); ++j) {
        UPoly qj = cols[j].divrem(content).first;
        for (int i = 0; i <= qj.degree(); ++i)
            if (qj.coeffs()[i] != 0)
                rest = rest + BiPoly::monomial(Chart::S1Z1, i, j, qj.coeffs()[i]);
    }
    if (rest.degree_fibre() <= 0)
        throw std::domain_error("branch is a union of vertical fibres; "
                                "no double cover of the generic fibre");
    // Square-free restriction to the generic fibre.
    if (resultant_fibre(rest, rest.derivative_fibre()).is_zero())
        throw std::domain_error("branch restricted to the generic fibre is not square-free");
    long long r = rest.degree_fibre();
    // The point at infinity of the fibre is a branch point iff the affine
    // x-degree drops below the attached [x:z]-degree.
    if (r < branch.bidegree()->second)
        r += 1;
    if (r % 2 != 0)
        throw std::domain_error("odd branch count " + std::to_string(r) +
                                " on the generic fibre");
    return r / 2 - 1;
}

AmplenessFlag ampleness_flag(Bidegree d)
{
    AmplenessFlag f{d.first > 0 && d.second > 0, false};
    f.simply_connected_conclusion = f.ample;
    return f;
}

} // namespace fibsurf
