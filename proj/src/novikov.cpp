#include "nova/novikov.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace nova {

NovikovScalar NovikovScalar::monomial(const Rational& exponent, const Rational& coeff) {
    NovikovScalar x;
    if (!coeff.is_zero()) x.terms_.push_back({exponent, coeff});
    return x;
}

NovikovScalar NovikovScalar::from_terms(std::vector<Term> terms) {
    std::map<Rational, Rational> acc;
    for (auto& t : terms) acc[t.first] += t.second;
    NovikovScalar x;
    for (auto& [e, c] : acc)
        if (!c.is_zero()) x.terms_.push_back({e, c});
    return x;
}

bool NovikovScalar::is_one() const {
    return terms_.size() == 1 && terms_[0].first.is_zero() && terms_[0].second == Rational(1);
}

Val NovikovScalar::val() const {
    if (terms_.empty()) return Val::infinity();
    return Val(terms_.front().first);
}

Rational NovikovScalar::leading_coeff() const {
    if (terms_.empty()) raise(errc::invalid_argument, "leading coefficient of zero");
    return terms_.front().second;
}

NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b) {
    NovikovScalar r;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
            r.terms_.push_back(*ia++);
        } else if (ia == a.terms_.end() || ib->first < ia->first) {
            r.terms_.push_back(*ib++);
        } else {
            Rational c = ia->second + ib->second;
            if (!c.is_zero()) r.terms_.push_back({ia->first, c});
            ++ia;
            ++ib;
        }
    }
    return r;
}

NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b) { return a + (-b); }

NovikovScalar NovikovScalar::operator-() const {
    NovikovScalar r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.first, -t.second});
    return r;
}

NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b) {
    std::map<Rational, Rational> acc;
    for (auto& ta : a.terms_)
        for (auto& tb : b.terms_) acc[ta.first + tb.first] += ta.second * tb.second;
    NovikovScalar r;
    for (auto& [e, c] : acc)
        if (!c.is_zero()) r.terms_.push_back({e, c});
    return r;
}

NovikovScalar NovikovScalar::scale(const Rational& c) const {
    if (c.is_zero()) return zero();
    NovikovScalar r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.first, t.second * c});
    return r;
}

NovikovScalar NovikovScalar::shift(const Rational& e) const {
    NovikovScalar r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.first + e, t.second});
    return r;
}

NovikovScalar NovikovScalar::truncate(const Precision& prec) const {
    NovikovScalar r;
    for (auto& t : terms_) {
        if (t.first >= prec.cutoff) break;
        r.terms_.push_back(t);
    }
    return r;
}

NovikovScalar NovikovScalar::invert(const Precision& prec) const {
    if (is_zero()) raise(errc::zero_division, "inversion of the zero Novikov scalar");
    // x = c T^v (1 + u) with val(u) > 0; invert the unit part by the
    // geometric series, which stabilizes below any finite cutoff.
    Rational v = terms_.front().first;
    Rational c = terms_.front().second;
    NovikovScalar unit_tail;  // u = x / (c T^v) - 1
    for (size_t i = 1; i < terms_.size(); ++i)
        unit_tail.terms_.push_back({terms_[i].first - v, terms_[i].second / c});
    // y has no term of exponent >= cutoff - val(x); the unit-part inverse
    // therefore needs its series to exponent < cutoff, independent of v.
    Precision series_prec(prec.cutoff);
    NovikovScalar acc = one();
    NovikovScalar power = one();
    if (!unit_tail.is_zero()) {
        Rational step = unit_tail.terms_.front().first;  // > 0
        for (Rational reached = step; reached < series_prec.cutoff; reached += step) {
            power = (power * (-unit_tail)).truncate(series_prec);
            if (power.is_zero()) break;
            acc = acc + power;
        }
        acc = acc.truncate(series_prec);
    }
    NovikovScalar r;
    for (auto& t : acc.terms_) r.terms_.push_back({t.first - v, t.second / c});
    return r;
}

std::string NovikovScalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) out += " + ";
        if (terms_[i].first.is_zero())
            out += terms_[i].second.str();
        else
            out += terms_[i].second.str() + "*T^(" + terms_[i].first.str() + ")";
    }
    return out;
}

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!eat(c))
            raise(errc::parse_error,
                  std::string("expected '") + c + "' (" + what + ") at column " +
                      std::to_string(pos + 1));
    }
    [[noreturn]] void fail(const std::string& what) {
        raise(errc::parse_error, what + " at column " + std::to_string(pos + 1));
    }
};

std::int64_t parse_integer(Cursor& cur) {
    cur.skip_ws();
    size_t start = cur.pos;
    bool neg = cur.eat('-');
    if (!neg) cur.eat('+');
    cur.skip_ws();
    if (cur.pos >= cur.s.size() || !std::isdigit((unsigned char)cur.s[cur.pos]))
        cur.fail("expected integer");
    std::int64_t v = 0;
    while (cur.pos < cur.s.size() && std::isdigit((unsigned char)cur.s[cur.pos])) {
        v = v * 10 + (cur.s[cur.pos] - '0');
        if (v < 0) raise(errc::overflow, "integer literal too large");
        ++cur.pos;
    }
    (void)start;
    return neg ? -v : v;
}

Rational parse_rational_at(Cursor& cur) {
    std::int64_t n = parse_integer(cur);
    if (cur.peek() == '/') {
        cur.eat('/');
        cur.skip_ws();
        if (cur.pos >= cur.s.size() || !std::isdigit((unsigned char)cur.s[cur.pos]))
            cur.fail("expected denominator after '/'");
        std::int64_t d = parse_integer(cur);
        return Rational(n, d);
    }
    return Rational(n);
}

// One term: [sign] ( rational ['*' T-part] | T-part ), T-part = T^(rational) | T^int.
NovikovScalar::Term parse_term(Cursor& cur, bool leading_minus) {
    Rational coeff(1);
    bool have_coeff = false;
    cur.skip_ws();
    if (cur.peek() != 'T') {
        coeff = parse_rational_at(cur);
        have_coeff = true;
    }
    Rational expo(0);
    if (cur.peek() == '*' || (!have_coeff && cur.peek() == 'T')) {
        if (have_coeff) cur.expect('*', "term separator");
        cur.skip_ws();
        if (cur.peek() != 'T') cur.fail("expected 'T'");
        ++cur.pos;
        cur.expect('^', "exponent marker");
        if (cur.eat('(')) {
            expo = parse_rational_at(cur);
            cur.expect(')', "closing exponent");
        } else {
            expo = Rational(parse_integer(cur));
        }
    }
    if (leading_minus) coeff = -coeff;
    return {expo, coeff};
}

}  // namespace

NovikovScalar NovikovScalar::parse(const std::string& text) {
    Cursor cur{text};
    if (cur.done()) raise(errc::parse_error, "empty Novikov scalar");
    std::vector<Term> terms;
    bool first = true;
    while (!cur.done()) {
        bool minus = false;
        if (!first) {
            if (cur.eat('+')) {
            } else if (cur.eat('-')) {
                minus = true;
            } else {
                cur.fail("expected '+' or '-' between terms");
            }
        } else {
            minus = cur.eat('-');
            first = false;
        }
        terms.push_back(parse_term(cur, minus));
    }
    // "0" parses as the single term 0*T^0 and normalizes to zero.
    return from_terms(std::move(terms));
}

}  // namespace nova
