#include "fibsurf/singular.hpp"

#include <algorithm>
#include <sstream>

namespace fibsurf {

bool operator<(const ProjPoint& a, const ProjPoint& b)
{
    if (a.ts_inf != b.ts_inf) return b.ts_inf;
    if (!a.ts_inf && a.ts != b.ts) return a.ts < b.ts;
    if (a.xz_inf != b.xz_inf) return b.xz_inf;
    if (!a.xz_inf && a.xz != b.xz) return a.xz < b.xz;
    return false;
}

std::string ProjPoint::str() const
{
    std::ostringstream o;
    o << "([" << (ts_inf ? "1:0" : rat_str(ts) + ":1") << "],["
      << (xz_inf ? "1:0" : rat_str(xz) + ":1") << "])";
    return o.str();
}

ProjPoint chart_point(Chart c, const Rational& base_val, const Rational& fib_val)
{
    ProjPoint p;
    switch (c) {
        case Chart::S1Z1: p.ts = base_val; p.xz = fib_val; break;
        case Chart::S1X1:
            p.ts = base_val;
            if (fib_val == 0) p.xz_inf = true; else p.xz = Rational(1) / fib_val;
            break;
        case Chart::T1Z1:
            if (base_val == 0) p.ts_inf = true; else p.ts = Rational(1) / base_val;
            p.xz = fib_val;
            break;
        case Chart::T1X1:
            if (base_val == 0) p.ts_inf = true; else p.ts = Rational(1) / base_val;
            if (fib_val == 0) p.xz_inf = true; else p.xz = Rational(1) / fib_val;
            break;
        case Chart::Local:
            throw std::domain_error("local charts carry no global point");
    }
    return p;
}

bool point_in_chart(const ProjPoint& p, Chart c, Rational& base_val, Rational& fib_val)
{
    switch (c) {
        case Chart::S1Z1:
            if (p.ts_inf || p.xz_inf) return false;
            base_val = p.ts; fib_val = p.xz; return true;
        case Chart::S1X1:
            if (p.ts_inf || (!p.xz_inf && p.xz == 0)) return false;
            base_val = p.ts;
            fib_val = p.xz_inf ? Rational(0) : Rational(1) / p.xz;
            return true;
        case Chart::T1Z1:
            if ((!p.ts_inf && p.ts == 0) || p.xz_inf) return false;
            base_val = p.ts_inf ? Rational(0) : Rational(1) / p.ts;
            fib_val = p.xz; return true;
        case Chart::T1X1:
            if ((!p.ts_inf && p.ts == 0) || (!p.xz_inf && p.xz == 0)) return false;
            base_val = p.ts_inf ? Rational(0) : Rational(1) / p.ts;
            fib_val = p.xz_inf ? Rational(0) : Rational(1) / p.xz;
            return true;
        case Chart::Local:
            return false;
    }
    return false;
}

namespace {

// f as a polynomial in the fibre variable with UPoly (base variable) coefficients.
std::vector<UPoly> fibre_coeffs(const BiPoly& f)
{
    std::vector<std::vector<Rational>> raw;
    for (const auto& [e, c] : f.terms()) {
        if ((int)raw.size() <= e.second)
            raw.resize(e.second + 1);
        auto& col = raw[e.second];
        if ((int)col.size() <= e.first)
            col.resize(e.first + 1, Rational(0));
        col[e.first] = c;
    }
    std::vector<UPoly> out;
    for (auto& col : raw)
        out.emplace_back(std::move(col));
    return out;
}

Rational sylvester_det(const std::vector<Rational>& fc, const std::vector<Rational>& gc,
                       int m, int n)
{
    // det of the (m+n)x(m+n) Sylvester matrix with formal degrees m, n.
    int N = m + n;
    std::vector<std::vector<Rational>> a(N, std::vector<Rational>(N, Rational(0)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            a[r][r + (m - k)] = k < (int)fc.size() ? fc[k] : Rational(0);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            a[n + r][r + (n - k)] = k < (int)gc.size() ? gc[k] : Rational(0);
    Rational det = 1;
    for (int col = 0; col < N; ++col) {
        int piv = -1;
        for (int r = col; r < N; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0)
            return Rational(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        Rational inv = Rational(1) / a[col][col];
        for (int r = col + 1; r < N; ++r) {
            if (a[r][col] == 0)
                continue;
            Rational f = a[r][col] * inv;
            for (int cc = col; cc < N; ++cc)
                a[r][cc] -= f * a[col][cc];
        }
    }
    return det;
}

UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys)
{
    UPoly acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        UPoly li = UPoly::constant(1);
        Rational denom = 1;
        for (size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            li = li * UPoly({-xs[j], Rational(1)});
            denom *= xs[i] - xs[j];
        }
        acc = acc + li.scaled(ys[i] / denom);
    }
    return acc;
}

} // namespace

UPoly resultant_fibre(const BiPoly& f, const BiPoly& g)
{
    int m = f.degree_fibre(), n = g.degree_fibre();
    if (f.is_zero() || g.is_zero())
        return UPoly();
    if (m <= 0 && n <= 0)
        return UPoly::constant(1);
    auto fc = fibre_coeffs(f), gc = fibre_coeffs(g);
    int db = std::max(f.degree_base(), 0), dg = std::max(g.degree_base(), 0);
    int bound = db * std::max(n, 0) + dg * std::max(m, 0);
    std::vector<Rational> xs, ys;
    for (int k = 0; k <= bound; ++k) {
        Rational u0(k);
        std::vector<Rational> fv, gv;
        for (auto& p : fc) fv.push_back(p.eval(u0));
        for (auto& p : gc) gv.push_back(p.eval(u0));
        xs.push_back(u0);
        ys.push_back(sylvester_det(fv, gv, std::max(m, 0), std::max(n, 0)));
    }
    return interpolate(xs, ys);
}

bool is_squarefree_curve(const BiPoly& f)
{
    if (f.is_zero())
        return false;
    BiPoly fx = f.derivative_fibre();
    if (f.degree_fibre() >= 1) {
        if (resultant_fibre(f, fx).is_zero())
            return false;
    }
    // Repeated vertical lines live in the fibre-content.
    std::vector<UPoly> cols = fibre_coeffs(f);
    UPoly content;
    for (auto& c : cols)
        content = upoly_gcd(content, c);
    if (content.degree() >= 1) {
        UPoly sf = squarefree_part(content);
        if (sf.degree() != content.degree())
            return false;
    }
    return true;
}

SingularLocus rational_singular_points(const BiPoly& f)
{
    if (f.is_zero())
        throw std::domain_error("singular points of the zero polynomial");
    if (!f.bidegree())
        throw std::domain_error("rational_singular_points requires an attached bidegree");
    SingularLocus out;
    std::vector<SingularPoint> found;
    for (Chart c : {Chart::S1Z1, Chart::S1X1, Chart::T1Z1, Chart::T1X1}) {
        BiPoly fc = chart_change(f, c);
        if (!is_squarefree_curve(fc))
            throw std::domain_error(std::string("branch is not square-free in chart ") +
                                    chart_name(c));
        if (fc.degree_fibre() <= 0)
            continue; // union of vertical lines; smooth in this chart
        BiPoly fu = fc.derivative_base();
        BiPoly fv = fc.derivative_fibre();
        UPoly r1 = resultant_fibre(fc, fu);
        UPoly r2 = resultant_fibre(fc, fv);
        UPoly cand;
        if (!r1.is_zero() && !r2.is_zero())
            cand = upoly_gcd(r1, r2);
        else if (!r2.is_zero())
            cand = r2;
        else
            cand = r1;
        if (cand.is_zero())
            throw std::domain_error("degenerate elimination; branch not reduced?");
        if (cand.degree() <= 0)
            continue;
        auto rr = rational_roots(cand);
        if (rr.leftover.degree() >= 1) {
            out.complete = false;
            out.notes.push_back(std::string("chart ") + chart_name(c) +
                                ": candidate base values with no rational root: " +
                                rr.leftover.str('u'));
        }
        for (const auto& u0 : rr.roots) {
            // Univariate system in the fibre variable at u = u0.
            auto slice = [&](const BiPoly& g) {
                std::vector<Rational> cs;
                for (const auto& [e, k] : g.terms()) {
                    if ((int)cs.size() <= e.second)
                        cs.resize(e.second + 1, Rational(0));
                    Rational p = k;
                    for (int i = 0; i < e.first; ++i) p *= u0;
                    cs[e.second] += p;
                }
                return UPoly(std::move(cs));
            };
            UPoly a = slice(fc), b = slice(fu), d = slice(fv);
            UPoly g;
            for (const UPoly* p : {&a, &b, &d})
                if (!p->is_zero())
                    g = g.is_zero() ? p->monic() : upoly_gcd(g, *p);
            if (g.is_zero())
                throw std::domain_error("vertical double line; branch not reduced");
            if (g.degree() <= 0)
                continue; // extraneous resultant factor
            auto vr = rational_roots(g);
            if (vr.leftover.degree() >= 1) {
                out.complete = false;
                out.notes.push_back(std::string("chart ") + chart_name(c) + ", base value " +
                                    rat_str(u0) + ": irrational singular fibre values: " +
                                    vr.leftover.str('x'));
                ProjPoint bp = chart_point(c, u0, Rational(0));
                out.incomplete_fibres.push_back({bp.ts_inf, bp.ts});
            }
            for (const auto& v0 : vr.roots) {
                int mult = multiplicity_at_point(fc, u0, v0);
                if (mult >= 2)
                    found.push_back({chart_point(c, u0, v0), mult});
            }
        }
    }
    std::sort(found.begin(), found.end(),
              [](const SingularPoint& a, const SingularPoint& b) { return a.point < b.point; });
    for (const auto& p : found)
        if (out.points.empty() || !(out.points.back().point == p.point))
            out.points.push_back(p);
    std::sort(out.incomplete_fibres.begin(), out.incomplete_fibres.end());
    out.incomplete_fibres.erase(
        std::unique(out.incomplete_fibres.begin(), out.incomplete_fibres.end()),
        out.incomplete_fibres.end());
    return out;
}

} // namespace fibsurf
