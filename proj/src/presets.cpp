#include "fibsurf/presets.hpp"

#include "fibsurf/singular.hpp"
#include "fibsurf/upoly.hpp"

namespace fibsurf {

namespace {

BiPoly var_t() { return BiPoly::variable(Chart::S1Z1, false); }
BiPoly var_x() { return BiPoly::variable(Chart::S1Z1, true); }
BiPoly constant(const Rational& c) { return BiPoly(Chart::S1Z1, c); }

// prod_{w^n = 1} ((x - w)^3 + t^2) as an exact polynomial over Q, via the
// Sylvester resultant Res_w(w^n - 1, (x - w)^3 + t^2) evaluated on a grid
// and interpolated in both variables.
BiPoly cusp_product(int n)
{
    auto value_at = [&](const Rational& x0, const Rational& t0) {
        // g(w) = -(w^3) + 3 x0 w^2 - 3 x0^2 w + (x0^3 + t0^2)
        std::vector<Rational> g{x0 * x0 * x0 + t0 * t0, -3 * x0 * x0, 3 * x0, Rational(-1)};
        std::vector<Rational> f(n + 1, Rational(0));
        f[0] = -1;
        f[n] = 1;
        // Sylvester determinant of f (deg n) and g (deg 3)
        int N = n + 3;
        std::vector<std::vector<Rational>> a(N, std::vector<Rational>(N, Rational(0)));
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k <= n; ++k)
                a[r][r + (n - k)] = f[k];
        for (int r = 0; r < n; ++r)
            for (int k = 0; k <= 3; ++k)
                a[3 + r][r + (3 - k)] = g[k];
        Rational det = 1;
        for (int col = 0; col < N; ++col) {
            int piv = -1;
            for (int r = col; r < N; ++r)
                if (a[r][col] != 0) { piv = r; break; }
            if (piv < 0)
                return Rational(0);
            if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
            det *= a[col][col];
            Rational inv = Rational(1) / a[col][col];
            for (int r = col + 1; r < N; ++r) {
                if (a[r][col] == 0) continue;
                Rational fac = a[r][col] * inv;
                for (int cc = col; cc < N; ++cc)
                    a[r][cc] -= fac * a[col][cc];
            }
        }
        return det;
    };
    int dx = 3 * n, dt = 2 * n;
    // interpolate in x for every t sample, then in t coefficient-wise
    std::vector<UPoly> xpolys;
    std::vector<Rational> tsamples;
    for (int it = 0; it <= dt; ++it) {
        Rational t0(it);
        std::vector<Rational> xs, ys;
        for (int ix = 0; ix <= dx; ++ix) {
            xs.push_back(Rational(ix));
            ys.push_back(value_at(Rational(ix), t0));
        }
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
        xpolys.push_back(acc);
        tsamples.push_back(t0);
    }
    BiPoly out(Chart::S1Z1);
    for (int j = 0; j <= dx; ++j) {
        std::vector<Rational> xs = tsamples, ys;
        for (const auto& p : xpolys)
            ys.push_back(j <= p.degree() ? p.coeffs()[j] : Rational(0));
        UPoly tc;
        for (size_t i = 0; i < xs.size(); ++i) {
            UPoly li = UPoly::constant(1);
            Rational denom = 1;
            for (size_t k = 0; k < xs.size(); ++k) {
                if (i == k) continue;
                li = li * UPoly({-xs[k], Rational(1)});
                denom *= xs[i] - xs[k];
            }
            tc = tc + li.scaled(ys[i] / denom);
        }
        for (int i = 0; i <= tc.degree(); ++i)
            if (tc.coeffs()[i] != 0)
                out = out + BiPoly::monomial(Chart::S1Z1, i, j, tc.coeffs()[i]);
    }
    return out;
}

} // namespace

PresetSpec make_preset(const std::string& id, const Rational& alpha, int h,
                       bool corrected_type3)
{
    PresetSpec spec;
    spec.name = id;
    spec.alpha = alpha;
    spec.h = h;
    BasePt b0{false, Rational(0)}, binf{true, Rational(0)}, b1{false, Rational(1)};

    if (id == "type1") {
        // ts(s^2 x^6 + alpha s t x^3 z^3 + t^2 z^6), chart s = z = 1
        BiPoly f = var_t() * (var_x().pow(6) + var_t() * var_x().pow(3).scaled(alpha) +
                              var_t().pow(2));
        f.attach_bidegree({4, 6});
        spec.branch = f;
        spec.designated = {b0, binf};
        spec.paper_base_degree_per_n = 4;
        return spec;
    }
    if (id == "type2") {
        // ts(s x^2 + t z^2)(s x^4 + t z^4)
        BiPoly f = var_t() * (var_x().pow(2) + var_t()) * (var_x().pow(4) + var_t());
        f.attach_bidegree({4, 6});
        spec.branch = f;
        spec.designated = {b0, binf};
        spec.paper_base_degree_per_n = 4;
        return spec;
    }
    if (id == "type3") {
        // ts(t - s)(s^2 x^3 + t^2 z^3)(s^2 (x - z)^3 + t^2 z^3); bidegree (7,6)
        BiPoly f = var_t() * (var_t() - constant(1)) * (var_x().pow(3) + var_t().pow(2)) *
                   ((var_x() - constant(1)).pow(3) + var_t().pow(2));
        if (corrected_type3) {
            // extra rational fibre to restore evenness: multiply by (t + s)
            f = f * (var_t() + constant(1));
            f.attach_bidegree({8, 6});
            spec.designated = {b0, binf, b1, BasePt{false, Rational(-1)}};
        } else {
            f.attach_bidegree({7, 6});
            spec.designated = {b0, binf, b1};
        }
        spec.branch = f;
        spec.paper_base_degree_per_n = 6;
        spec.evenness_failure_is_paper_conflict = true;
        return spec;
    }
    if (id == "type4") {
        // ts(s^h (s x^3 - t z^3)^2 + t^(h+2)); bidegree (h+4, 6)
        if (h < 0)
            throw std::domain_error("type4 requires h >= 0");
        BiPoly f = var_t() * ((var_x().pow(3) - var_t()).pow(2) + var_t().pow(h + 2));
        f.attach_bidegree({h + 4, 6});
        spec.branch = f;
        spec.designated = {b0};
        spec.paper_base_degree_per_n = h + 4;
        return spec;
    }
    if (id.rfind("even:", 0) == 0) {
        int n = std::stoi(id.substr(5));
        if (n < 2)
            throw std::domain_error("even-genus preset requires n >= 2");
        spec.even_n = n;
        BiPoly f = var_t() * cusp_product(n);
        f.attach_bidegree({2 * n + 2, 3 * n});
        spec.branch = f;
        spec.designated = {b0, binf};
        // cusp-with-fibre-line template: u ((x)^3 + u^2) at the origin
        LocalTemplate t;
        t.poly = parse_poly("u*(x^3 + u^2)", Chart::Local);
        t.copies = n;
        spec.fibre_template = t;
        return spec;
    }
    throw std::domain_error("unknown preset '" + id + "'");
}

} // namespace fibsurf
