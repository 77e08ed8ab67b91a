#include "fibsurf/bipoly.hpp"

#include <algorithm>
#include <sstream>

namespace fibsurf {

const char* chart_name(Chart c)
{
    switch (c) {
        case Chart::S1Z1: return "s=z=1";
        case Chart::S1X1: return "s=x=1";
        case Chart::T1Z1: return "t=z=1";
        case Chart::T1X1: return "t=x=1";
        case Chart::Local: return "local";
    }
    return "?";
}

std::pair<char, char> chart_vars(Chart c)
{
    switch (c) {
        case Chart::S1Z1: return {'t', 'x'};
        case Chart::S1X1: return {'t', 'z'};
        case Chart::T1Z1: return {'s', 'x'};
        case Chart::T1X1: return {'s', 'z'};
        case Chart::Local: return {'u', 'x'};
    }
    return {'?', '?'};
}

BiPoly::BiPoly(Chart chart, Rational constant) : chart_(chart)
{
    if (constant != 0)
        terms_[{0, 0}] = std::move(constant);
}

BiPoly BiPoly::variable(Chart chart, bool fibre_var, int exp)
{
    return monomial(chart, fibre_var ? 0 : exp, fibre_var ? exp : 0, 1);
}

BiPoly BiPoly::monomial(Chart chart, int base_exp, int fib_exp, Rational coeff)
{
    BiPoly p(chart);
    if (coeff != 0)
        p.terms_[{base_exp, fib_exp}] = std::move(coeff);
    return p;
}

bool BiPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0});
}

Rational BiPoly::constant_term() const
{
    auto it = terms_.find({0, 0});
    return it == terms_.end() ? Rational(0) : it->second;
}

void BiPoly::attach_bidegree(Bidegree d)
{
    if (degree_base() > d.first || degree_fibre() > d.second)
        throw std::domain_error("bidegree smaller than actual chart degrees");
    bidegree_ = d;
}

int BiPoly::degree_base() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first);
    return d;
}

int BiPoly::degree_fibre() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
}

int BiPoly::total_degree_min() const
{
    if (terms_.empty())
        return -1;
    int m = -1;
    for (const auto& [e, c] : terms_) {
        int t = e.first + e.second;
        if (m < 0 || t < m) m = t;
    }
    return m;
}

void BiPoly::add_term(Exponents e, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

void BiPoly::check_chart(const BiPoly& o) const
{
    if (chart_ != o.chart_)
        throw std::domain_error("chart mismatch in polynomial arithmetic");
}

BiPoly BiPoly::operator+(const BiPoly& o) const
{
    check_chart(o);
    BiPoly r = *this;
    r.bidegree_.reset();
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const
{
    check_chart(o);
    BiPoly r = *this;
    r.bidegree_.reset();
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

BiPoly BiPoly::operator-() const
{
    BiPoly r(chart_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const
{
    check_chart(o);
    BiPoly r(chart_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            r.add_term({e1.first + e2.first, e1.second + e2.second}, c1 * c2);
    return r;
}

BiPoly BiPoly::pow(int e) const
{
    if (e < 0)
        throw std::domain_error("negative exponent");
    BiPoly r(chart_, Rational(1));
    BiPoly b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

BiPoly BiPoly::scaled(const Rational& c) const
{
    BiPoly r(chart_);
    if (c == 0)
        return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

Rational BiPoly::eval(const Rational& base_val, const Rational& fib_val) const
{
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < e.first; ++i) term *= base_val;
        for (int j = 0; j < e.second; ++j) term *= fib_val;
        acc += term;
    }
    return acc;
}

BiPoly BiPoly::derivative_base() const
{
    BiPoly r(chart_);
    for (const auto& [e, c] : terms_)
        if (e.first > 0)
            r.add_term({e.first - 1, e.second}, c * e.first);
    return r;
}

BiPoly BiPoly::derivative_fibre() const
{
    BiPoly r(chart_);
    for (const auto& [e, c] : terms_)
        if (e.second > 0)
            r.add_term({e.first, e.second - 1}, c * e.second);
    return r;
}

BiPoly BiPoly::shifted(const Rational& a, const Rational& b) const
{
    // Binomial expansion of (u + a)^i (x + b)^j, term by term.
    BiPoly r(chart_);
    if (a == 0 && b == 0) {
        r.terms_ = terms_;
        return r;
    }
    for (const auto& [e, c] : terms_) {
        std::vector<Rational> bu(e.first + 1), bx(e.second + 1);
        Rational acc = 1;
        for (int k = 0; k <= e.first; ++k) { // binom(i,k) a^(i-k)
            bu[k] = acc;
            acc = acc * (e.first - k) / (k + 1);
        }
        Rational pw = 1;
        for (int k = e.first; k >= 0; --k) { bu[k] *= pw; pw *= a; }
        acc = 1;
        for (int k = 0; k <= e.second; ++k) {
            bx[k] = acc;
            acc = acc * (e.second - k) / (k + 1);
        }
        pw = 1;
        for (int k = e.second; k >= 0; --k) { bx[k] *= pw; pw *= b; }
        for (int k = 0; k <= e.first; ++k)
            for (int l = 0; l <= e.second; ++l)
                r.add_term({k, l}, c * bu[k] * bx[l]);
    }
    return r;
}

BiPoly BiPoly::blowup_fibre_chart() const
{
    BiPoly r(Chart::Local);
    for (const auto& [e, c] : terms_)
        r.add_term({e.first, e.first + e.second}, c);
    return r;
}

BiPoly BiPoly::blowup_base_chart() const
{
    BiPoly r(Chart::Local);
    for (const auto& [e, c] : terms_)
        r.add_term({e.first + e.second, e.second}, c);
    return r;
}

BiPoly BiPoly::divided_by_var(bool fibre_var, int k) const
{
    BiPoly r(chart_);
    for (const auto& [e, c] : terms_) {
        int ee = fibre_var ? e.second : e.first;
        if (ee < k)
            throw std::domain_error("polynomial not divisible by variable power");
        r.terms_[{fibre_var ? e.first : e.first - k,
                  fibre_var ? e.second - k : e.second}] = c;
    }
    return r;
}

int BiPoly::var_order(bool fibre_var) const
{
    int m = -1;
    for (const auto& [e, c] : terms_) {
        int ee = fibre_var ? e.second : e.first;
        if (m < 0 || ee < m) m = ee;
    }
    return m < 0 ? 0 : m;
}

std::vector<Rational> BiPoly::coeffs_in_fibre_at_base_zero() const
{
    std::vector<Rational> v;
    for (const auto& [e, c] : terms_)
        if (e.first == 0) {
            if ((int)v.size() <= e.second) v.resize(e.second + 1, Rational(0));
            v[e.second] = c;
        }
    return v;
}

std::vector<Rational> BiPoly::coeffs_in_base_at_fibre_zero() const
{
    std::vector<Rational> v;
    for (const auto& [e, c] : terms_)
        if (e.second == 0) {
            if ((int)v.size() <= e.first) v.resize(e.first + 1, Rational(0));
            v[e.first] = c;
        }
    return v;
}

std::string BiPoly::str() const
{
    if (terms_.empty())
        return "0";
    auto [bv, fv] = chart_vars(chart_);
    // Graded-lex: total degree descending, then fibre exponent descending.
    std::vector<std::pair<Exponents, Rational>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [](const auto& l, const auto& r) {
        int dl = l.first.first + l.first.second, dr = r.first.first + r.first.second;
        if (dl != dr) return dl > dr;
        return l.first.second > r.first.second;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : ts) {
        Rational a = c;
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_vars = e.first > 0 || e.second > 0;
        bool wrote_coeff = false;
        if (a != 1 || !has_vars) {
            out << rat_str(a);
            wrote_coeff = true;
        }
        // fibre variable first, explicit '*' between factors
        std::ostringstream vars;
        if (e.second > 0) {
            vars << fv;
            if (e.second > 1) vars << "^" << e.second;
        }
        if (e.first > 0) {
            if (e.second > 0) vars << "*";
            vars << bv;
            if (e.first > 1) vars << "^" << e.first;
        }
        std::string vs = vars.str();
        if (!vs.empty()) {
            if (wrote_coeff) out << "*";
            out << vs;
        }
    }
    return out.str();
}

BiPoly chart_change(const BiPoly& f, Chart to)
{
    if (!f.bidegree())
        throw std::domain_error("chart_change requires an attached bidegree");
    if (f.chart() == Chart::Local || to == Chart::Local)
        throw std::domain_error("chart_change is only defined between global charts");
    auto [a, b] = *f.bidegree();
    // Convert chart exponents to bihomogeneous (t-exp, x-exp).
    auto to_th = [&](Chart c, Exponents e) -> Exponents {
        switch (c) {
            case Chart::S1Z1: return {e.first, e.second};
            case Chart::S1X1: return {e.first, b - e.second};
            case Chart::T1Z1: return {a - e.first, e.second};
            case Chart::T1X1: return {a - e.first, b - e.second};
            default: return e;
        }
    };
    auto from_th = [&](Chart c, Exponents th) -> Exponents {
        switch (c) {
            case Chart::S1Z1: return {th.first, th.second};
            case Chart::S1X1: return {th.first, b - th.second};
            case Chart::T1Z1: return {a - th.first, th.second};
            case Chart::T1X1: return {a - th.first, b - th.second};
            default: return th;
        }
    };
    BiPoly r(to);
    for (const auto& [e, c] : f.terms()) {
        Exponents th = to_th(f.chart(), e);
        if (th.first < 0 || th.first > a || th.second < 0 || th.second > b)
            throw std::domain_error("exponents exceed the attached bidegree");
        r.terms_[from_th(to, th)] = c;
    }
    r.bidegree_ = f.bidegree();
    return r;
}

int multiplicity_at_point(const BiPoly& f, const Rational& a, const Rational& b)
{
    if (f.is_zero())
        throw std::domain_error("multiplicity of the zero polynomial is undefined");
    return f.shifted(a, b).total_degree_min();
}

} // namespace fibsurf
