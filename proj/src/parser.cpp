// Recursive-descent parser for the polynomial expression grammar.
#include "fibsurf/bipoly.hpp"

#include <cctype>

namespace fibsurf {

namespace {

struct Parser {
    const std::string& s;
    Chart chart;
    size_t pos = 0;

    explicit Parser(const std::string& text, Chart c) : s(text), chart(c) {}

    void skip_ws()
    {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool peek(char c)
    {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool accept(char c)
    {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg)
    {
        throw ParseError(msg, pos);
    }

    Integer integer_literal()
    {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start)
            fail("expected an integer");
        return Integer(s.substr(start, pos - start));
    }

    BiPoly variable_poly(char v)
    {
        auto [bv, fv] = chart_vars(chart);
        if (v == bv || (chart == Chart::Local && v == 't'))
            return BiPoly::variable(chart, false);
        if (v == fv)
            return BiPoly::variable(chart, true);
        // The remaining legal names are the coordinates the chart fixes to 1.
        bool legal = v == 'x' || v == 'z' || v == 't' || v == 's';
        if (chart == Chart::Local)
            legal = legal || v == 'u';
        if (!legal)
            fail(std::string("variable '") + v + "' outside {x,z,t,s}");
        return BiPoly(chart, Rational(1));
    }

    BiPoly atom()
    {
        skip_ws();
        if (pos >= s.size())
            fail("unexpected end of expression");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            BiPoly inner = expr();
            if (!accept(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit((unsigned char)c)) {
            Integer n = integer_literal();
            // a/b rational literal (the '/' binds only between integers)
            size_t save = pos;
            skip_ws();
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                skip_ws();
                if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
                    Integer d = integer_literal();
                    if (d == 0)
                        fail("zero denominator");
                    return BiPoly(chart, Rational(n, d));
                }
                pos = save;
            } else {
                pos = save;
            }
            return BiPoly(chart, Rational(n));
        }
        if (std::isalpha((unsigned char)c)) {
            ++pos;
            return variable_poly(c);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    BiPoly power()
    {
        BiPoly base = atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
                fail("exponent must be a nonnegative integer");
            Integer e = integer_literal();
            if (e > 64)
                fail("exponent too large");
            return base.pow((int)e);
        }
        return base;
    }

    BiPoly factor()
    {
        skip_ws();
        if (accept('-'))
            return -factor();
        if (accept('+'))
            return factor();
        return power();
    }

    BiPoly term()
    {
        BiPoly r = factor();
        while (accept('*'))
            r = r * factor();
        return r;
    }

    BiPoly expr()
    {
        BiPoly r = term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                r = r + term();
            else if (accept('-'))
                r = r - term();
            else
                break;
        }
        return r;
    }
};

} // namespace

BiPoly parse_poly(const std::string& text, Chart chart)
{
    Parser p(text, chart);
    BiPoly r = p.expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError("trailing input", p.pos);
    return r;
}

} // namespace fibsurf
