#pragma once

#include <map>
#include <string>
#include <vector>

#include "nova/novikov.hpp"
#include "nova/polytope.hpp"

namespace nova {

// Finite Laurent sum  sum_beta c_beta z^beta  with Novikov coefficients; a
// representative of an element of Gamma or of a completion Gamma^P. Terms
// are keyed by exponent vector, no zero values stored.
class LaurentElement {
  public:
    LaurentElement() : dim_(0) {}  // dimension-0 zero, for containers
    explicit LaurentElement(int dim) : dim_(dim) {}

    static LaurentElement zero(int dim) { return LaurentElement(dim); }
    static LaurentElement one(int dim) {
        return monomial(IntVec((size_t)dim, 0), NovikovScalar::one());
    }
    static LaurentElement monomial(IntVec beta, NovikovScalar c);

    int dim() const { return dim_; }
    const std::map<IntVec, NovikovScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const IntVec& beta, const NovikovScalar& c);

    friend LaurentElement operator+(const LaurentElement& a, const LaurentElement& b);
    friend LaurentElement operator-(const LaurentElement& a, const LaurentElement& b);
    LaurentElement operator-() const;
    friend LaurentElement operator*(const LaurentElement& a, const LaurentElement& b);
    LaurentElement scale(const NovikovScalar& c) const;
    friend bool operator==(const LaurentElement& a, const LaurentElement& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentElement& a, const LaurentElement& b) { return !(a == b); }

    // Canonical text form "(novikov)*z[b1,...,bn] + ...", exponent vectors in
    // lexicographic order; "0" for zero.
    std::string str() const;
    static LaurentElement parse(const std::string& text, int dim);

  private:
    int dim_;
    std::map<IntVec, NovikovScalar> terms_;
};

// Polytope with a chosen rational basepoint; the carrier of val_P. The
// basepoint need not lie in P.
struct AffinoidContext {
    Polytope polytope;
    RatVec basepoint;

    AffinoidContext(Polytope p, RatVec q);

    int dim() const { return polytope.dim(); }
};

// val at a single point p: min over terms of val(c_beta) + <beta, p - q>.
Val val_at_point(const LaurentElement& f, const RatVec& point, const RatVec& basepoint);

// val_P: min over P of val_p, computed by the vertex formula.
Val val_P(const LaurentElement& f, const AffinoidContext& ctx);

// Valuation of a single monomial z^beta over the context.
Rational monomial_val(const IntVec& beta, const AffinoidContext& ctx);

// Representative unchanged; terms of valuation >= prec over the target are
// dropped. Requires to.P inside from.P and equal basepoints.
LaurentElement restrict(const LaurentElement& f, const AffinoidContext& from,
                        const AffinoidContext& to, const Precision& prec);

// Truncation of f at precision w.r.t. val_P (termwise).
LaurentElement truncate_P(const LaurentElement& f, const AffinoidContext& ctx,
                          const Precision& prec);

// Exact convolution product truncated at prec w.r.t. val_P.
LaurentElement mul_P(const LaurentElement& f, const LaurentElement& g, const AffinoidContext& ctx,
                     const Precision& prec);

// Basepoint change q -> q': each term picks up T^(<beta, q'-q>); preserves
// val_P measured from the new basepoint.
LaurentElement rebase(const LaurentElement& f, const AffinoidContext& ctx, const RatVec& new_q);

// Splits f along the exponent of axis j (0-based): plus collects exponent
// >= 1, minus collects exponent <= 0; plus + minus = f exactly.
std::pair<LaurentElement, LaurentElement> tate_split(const LaurentElement& f, int axis);

// Certificate for T-adic convergence of a series sum T^(lambda_i) z^(gamma_i)
// given delta and the bound delta*|gamma_i| <= lambda_i + A: reports the
// guaranteed valuation lower bound (1 - 2 eps/delta) lambda_i + const.
struct ConvergenceCertificate {
    bool convergent = false;
    Rational bound_constant_A;   // max(delta*n_i - lambda_i)
    Rational slope;              // 1 - 2 eps / delta
    Rational additive_constant;  // -2 eps A / delta
};

ConvergenceCertificate convergence_certificate(const Rational& delta, const Rational& eps,
                                               const std::vector<std::pair<Rational, Rational>>& pairs);

}  // namespace nova
