#include "fibsurf/upoly.hpp"

#include <algorithm>
#include <sstream>

namespace fibsurf {

void UPoly::normalize()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Rational UPoly::eval(const Rational& v) const
{
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * v + *it;
    return acc;
}

UPoly UPoly::derivative() const
{
    std::vector<Rational> d;
    for (size_t i = 1; i < c_.size(); ++i)
        d.push_back(c_[i] * (int)i);
    return UPoly(std::move(d));
}

UPoly UPoly::operator+(const UPoly& o) const
{
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const
{
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UPoly(std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const
{
    if (is_zero() || o.is_zero())
        return UPoly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    return UPoly(std::move(r));
}

UPoly UPoly::scaled(const Rational& k) const
{
    if (k == 0)
        return UPoly();
    std::vector<Rational> r = c_;
    for (auto& x : r) x *= k;
    return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> UPoly::divrem(const UPoly& d) const
{
    if (d.is_zero())
        throw std::domain_error("division by the zero polynomial");
    std::vector<Rational> rem = c_;
    int dd = d.degree();
    if ((int)rem.size() - 1 < dd)
        return {UPoly(), *this};
    std::vector<Rational> q((int)rem.size() - dd, Rational(0));
    for (int i = (int)rem.size() - 1; i >= dd; --i) {
        if (rem[i] == 0)
            continue;
        Rational f = rem[i] / d.c_[dd];
        q[i - dd] = f;
        for (int j = 0; j <= dd; ++j)
            rem[i - dd + j] -= f * d.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(rem))};
}

UPoly UPoly::monic() const
{
    if (is_zero())
        return *this;
    return scaled(Rational(1) / leading());
}

std::string UPoly::str(char var) const
{
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational a = c_[i];
        if (a == 0)
            continue;
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (a != 1 || i == 0)
            out << rat_str(a);
        if (i > 0) {
            if (a != 1) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

UPoly upoly_gcd(const UPoly& a, const UPoly& b)
{
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = x.divrem(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

UPoly squarefree_part(const UPoly& f)
{
    if (f.degree() <= 0)
        return f.monic();
    UPoly g = upoly_gcd(f, f.derivative());
    return f.divrem(g).first.monic();
}

bool divides(const UPoly& d, const UPoly& f)
{
    if (d.is_zero())
        return f.is_zero();
    return f.divrem(d).second.is_zero();
}

namespace {

// All positive divisors of |n| by trial division; throws past desk scale.
std::vector<Integer> integer_divisors(Integer n)
{
    if (n < 0) n = -n;
    if (n == 0)
        throw std::domain_error("divisors of zero requested");
    std::vector<std::pair<Integer, int>> factors;
    Integer m = n;
    for (Integer p = 2; p * p <= m; ++p) {
        if (p > 1048576)
            break; // leave the cofactor as a single pseudo-prime
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            factors.push_back({p, e});
        }
    }
    if (m > 1)
        factors.push_back({m, 1});
    std::vector<Integer> divs{Integer(1)};
    for (auto& [p, e] : factors) {
        size_t sz = divs.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i)
                divs.push_back(divs[i] * pk);
        }
        if (divs.size() > 200000)
            throw std::domain_error("rational root search: divisor set too large");
    }
    return divs;
}

} // namespace

RationalRoots rational_roots(const UPoly& f)
{
    RationalRoots out;
    if (f.is_zero())
        throw std::domain_error("rational roots of the zero polynomial");
    UPoly g = squarefree_part(f);
    if (g.degree() <= 0) {
        out.leftover = UPoly::constant(1);
        return out;
    }
    // Strip the root at 0.
    if (g.coeffs()[0] == 0) {
        out.roots.push_back(Rational(0));
        std::vector<Rational> c(g.coeffs().begin() + 1, g.coeffs().end());
        g = UPoly(std::move(c));
    }
    if (g.degree() >= 1) {
        // Clear denominators to a primitive integer polynomial.
        Integer lcm = 1;
        for (const auto& c : g.coeffs())
            lcm = boost::multiprecision::lcm(lcm, den(c));
        std::vector<Integer> ic;
        for (const auto& c : g.coeffs())
            ic.push_back(num(c) * (lcm / den(c)));
        Integer content = 0;
        for (const auto& c : ic)
            content = boost::multiprecision::gcd(content, c);
        for (auto& c : ic)
            c /= content;
        auto ps = integer_divisors(ic.front());
        auto qs = integer_divisors(ic.back());
        if (ps.size() * qs.size() > 400000)
            throw std::domain_error("rational root search: candidate set too large");
        std::vector<Rational> found;
        for (const auto& p : ps)
            for (const auto& q : qs)
                for (int sign : {1, -1}) {
                    Rational cand(sign * p, q);
                    if (g.eval(cand) == 0)
                        found.push_back(cand);
                }
        std::sort(found.begin(), found.end());
        found.erase(std::unique(found.begin(), found.end()), found.end());
        for (const auto& r : found) {
            out.roots.push_back(r);
            g = g.divrem(UPoly({-r, Rational(1)})).first;
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.leftover = g.monic();
    if (out.leftover.is_zero())
        out.leftover = UPoly::constant(1);
    return out;
}

} // namespace fibsurf
