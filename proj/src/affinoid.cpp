#include "nova/affinoid.hpp"

#include <algorithm>
#include <cctype>

namespace nova {

LaurentElement LaurentElement::monomial(IntVec beta, NovikovScalar c) {
    LaurentElement f((int)beta.size());
    if (!c.is_zero()) f.terms_.emplace(std::move(beta), std::move(c));
    return f;
}

void LaurentElement::add_term(const IntVec& beta, const NovikovScalar& c) {
    if ((int)beta.size() != dim_) raise(errc::dimension_mismatch, "term exponent length != dim");
    auto it = terms_.find(beta);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(beta, c);
        return;
    }
    NovikovScalar s = it->second + c;
    if (s.is_zero())
        terms_.erase(it);
    else
        it->second = std::move(s);
}

LaurentElement operator+(const LaurentElement& a, const LaurentElement& b) {
    if (a.dim_ != b.dim_) raise(errc::dimension_mismatch, "Laurent sum dims differ");
    LaurentElement r = a;
    for (auto& [beta, c] : b.terms_) r.add_term(beta, c);
    return r;
}

LaurentElement operator-(const LaurentElement& a, const LaurentElement& b) { return a + (-b); }

LaurentElement LaurentElement::operator-() const {
    LaurentElement r(dim_);
    for (auto& [beta, c] : terms_) r.terms_.emplace(beta, -c);
    return r;
}

LaurentElement operator*(const LaurentElement& a, const LaurentElement& b) {
    if (a.dim_ != b.dim_) raise(errc::dimension_mismatch, "Laurent product dims differ");
    LaurentElement r(a.dim_);
    for (auto& [ba, ca] : a.terms_) {
        for (auto& [bb, cb] : b.terms_) {
            IntVec beta(ba.size());
            for (size_t i = 0; i < ba.size(); ++i) beta[i] = ba[i] + bb[i];
            r.add_term(beta, ca * cb);
        }
    }
    return r;
}

LaurentElement LaurentElement::scale(const NovikovScalar& c) const {
    LaurentElement r(dim_);
    if (c.is_zero()) return r;
    for (auto& [beta, coeff] : terms_) {
        NovikovScalar s = coeff * c;
        if (!s.is_zero()) r.terms_.emplace(beta, std::move(s));
    }
    return r;
}

std::string LaurentElement::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [beta, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += "(" + c.str() + ")*z[";
        for (size_t i = 0; i < beta.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(beta[i]);
        }
        out += "]";
    }
    return out;
}

LaurentElement LaurentElement::parse(const std::string& text, int dim) {
    LaurentElement f(dim);
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
    };
    skip();
    if (i < text.size() && text[i] == '0' && i + 1 >= text.size()) return f;
    bool first = true;
    while (true) {
        skip();
        if (i >= text.size()) break;
        int sign = 1;
        if (!first) {
            if (text[i] == '+') {
                ++i;
            } else if (text[i] == '-') {
                sign = -1;
                ++i;
            } else {
                raise(errc::parse_error, "expected '+' between Laurent terms at column " +
                                             std::to_string(i + 1));
            }
            skip();
        }
        first = false;
        if (i >= text.size() || text[i] != '(')
            raise(errc::parse_error, "expected '(' at column " + std::to_string(i + 1));
        size_t depth = 1, start = ++i;
        while (i < text.size() && depth > 0) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')') --depth;
            ++i;
        }
        if (depth != 0) raise(errc::parse_error, "unbalanced parentheses in Laurent term");
        NovikovScalar c = NovikovScalar::parse(text.substr(start, i - 1 - start));
        if (sign < 0) c = -c;
        skip();
        if (text.compare(i, 2, "*z") != 0)
            raise(errc::parse_error, "expected '*z' at column " + std::to_string(i + 1));
        i += 2;
        skip();
        if (i >= text.size() || text[i] != '[')
            raise(errc::parse_error, "expected '[' at column " + std::to_string(i + 1));
        size_t close = text.find(']', i);
        if (close == std::string::npos) raise(errc::parse_error, "unterminated exponent vector");
        IntVec beta = parse_int_vec(text.substr(i, close - i + 1));
        if ((int)beta.size() != dim) raise(errc::parse_error, "exponent vector length != dim");
        i = close + 1;
        f.add_term(beta, c);
        skip();
    }
    return f;
}

AffinoidContext::AffinoidContext(Polytope p, RatVec q) : polytope(std::move(p)), basepoint(std::move(q)) {
    if ((int)basepoint.size() != polytope.dim())
        raise(errc::dimension_mismatch, "basepoint length != polytope dim");
}

Val val_at_point(const LaurentElement& f, const RatVec& point, const RatVec& basepoint) {
    if (f.is_zero()) return Val::infinity();
    Val best = Val::infinity();
    for (auto& [beta, c] : f.terms()) {
        Rational pairing(0);
        for (size_t i = 0; i < beta.size(); ++i)
            pairing += (point[i] - basepoint[i]) * Rational(beta[i]);
        best = Val::min(best, c.val() + Val(pairing));
    }
    return best;
}

Rational monomial_val(const IntVec& beta, const AffinoidContext& ctx) {
    return ctx.polytope.support_min(beta) - dot(beta, ctx.basepoint);
}

Val val_P(const LaurentElement& f, const AffinoidContext& ctx) {
    if (f.dim() != ctx.dim()) raise(errc::dimension_mismatch, "val_P dims differ");
    Val best = Val::infinity();
    for (auto& [beta, c] : f.terms()) best = Val::min(best, c.val() + Val(monomial_val(beta, ctx)));
    return best;
}

LaurentElement truncate_P(const LaurentElement& f, const AffinoidContext& ctx,
                          const Precision& prec) {
    if (f.dim() != ctx.dim()) raise(errc::dimension_mismatch, "truncate dims differ");
    LaurentElement r(f.dim());
    for (auto& [beta, c] : f.terms()) {
        NovikovScalar kept = c.truncate(Precision(prec.cutoff - monomial_val(beta, ctx)));
        if (!kept.is_zero()) r.add_term(beta, kept);
    }
    return r;
}

LaurentElement restrict(const LaurentElement& f, const AffinoidContext& from,
                        const AffinoidContext& to, const Precision& prec) {
    if (f.dim() != from.dim() || from.dim() != to.dim())
        raise(errc::dimension_mismatch, "restrict dims differ");
    if (from.basepoint != to.basepoint)
        raise(errc::invalid_argument, "restrict requires a shared basepoint; use rebase first");
    if (!is_subset(to.polytope, from.polytope).subset)
        raise(errc::not_a_subset, "restriction target is not contained in the source polytope");
    return truncate_P(f, to, prec);
}

LaurentElement mul_P(const LaurentElement& f, const LaurentElement& g, const AffinoidContext& ctx,
                     const Precision& prec) {
    if (f.dim() != ctx.dim() || g.dim() != ctx.dim())
        raise(errc::dimension_mismatch, "mul_P dims differ");
    return truncate_P(f * g, ctx, prec);
}

LaurentElement rebase(const LaurentElement& f, const AffinoidContext& ctx, const RatVec& new_q) {
    if (f.dim() != ctx.dim() || (int)new_q.size() != ctx.dim())
        raise(errc::dimension_mismatch, "rebase dims differ");
    LaurentElement r(f.dim());
    for (auto& [beta, c] : f.terms()) {
        Rational flux(0);
        for (size_t i = 0; i < beta.size(); ++i)
            flux += (new_q[i] - ctx.basepoint[i]) * Rational(beta[i]);
        r.add_term(beta, c.shift(flux));
    }
    return r;
}

std::pair<LaurentElement, LaurentElement> tate_split(const LaurentElement& f, int axis) {
    if (axis < 0 || axis >= f.dim()) raise(errc::invalid_argument, "split axis out of range");
    LaurentElement plus(f.dim()), minus(f.dim());
    for (auto& [beta, c] : f.terms()) {
        if (beta[(size_t)axis] >= 1)
            plus.add_term(beta, c);
        else
            minus.add_term(beta, c);
    }
    return {plus, minus};
}

ConvergenceCertificate convergence_certificate(
    const Rational& delta, const Rational& eps,
    const std::vector<std::pair<Rational, Rational>>& pairs) {
    if (delta.sign() <= 0) raise(errc::nonpositive_delta, "delta must be positive");
    for (auto& [lambda, n] : pairs) {
        (void)lambda;
        if (n.sign() < 0) raise(errc::invalid_argument, "norm entries must be non-negative");
    }
    ConvergenceCertificate cert;
    Rational bound = Rational::min(Rational(1, 2), delta / Rational(2));
    if (!(eps < bound)) return cert;  // strict inequality required
    Rational a(0);
    bool first = true;
    for (auto& [lambda, n] : pairs) {
        Rational v = delta * n - lambda;
        a = first ? v : Rational::max(a, v);
        first = false;
    }
    cert.convergent = true;
    cert.bound_constant_A = a;
    cert.slope = Rational(1) - (Rational(2) * eps) / delta;
    cert.additive_constant = -(Rational(2) * eps * a) / delta;
    return cert;
}

}  // namespace nova
