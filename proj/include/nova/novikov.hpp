#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nova/rational.hpp"

namespace nova {

// T-adic cutoff: truncating operations drop everything of valuation >= cutoff.
struct Precision {
    Rational cutoff;

    explicit Precision(Rational e) : cutoff(std::move(e)) {}
    static Precision exponent(std::int64_t e) { return Precision(Rational(e)); }
};

// Element of the Novikov field over Q: a finite sum  sum_i c_i T^(e_i)  held
// in normal form (exponents strictly increasing, no zero coefficients, empty
// list = 0). Equality of normal forms is structural equality.
class NovikovScalar {
  public:
    using Term = std::pair<Rational, Rational>;  // (exponent, coefficient)

    NovikovScalar() = default;

    static NovikovScalar zero() { return NovikovScalar(); }
    static NovikovScalar one() { return monomial(Rational(0), Rational(1)); }
    static NovikovScalar constant(const Rational& c) { return monomial(Rational(0), c); }
    static NovikovScalar monomial(const Rational& exponent, const Rational& coeff);
    // Normalizes an arbitrary term list (sorts, merges, drops zeros).
    static NovikovScalar from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;

    // Smallest exponent with nonvanishing coefficient; +inf for zero.
    Val val() const;
    Rational leading_coeff() const;

    friend NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b);
    friend NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b);
    friend NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b);
    NovikovScalar operator-() const;
    friend bool operator==(const NovikovScalar& a, const NovikovScalar& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const NovikovScalar& a, const NovikovScalar& b) { return !(a == b); }

    NovikovScalar scale(const Rational& c) const;            // multiply by a constant
    NovikovScalar shift(const Rational& e) const;            // multiply by T^e
    NovikovScalar truncate(const Precision& prec) const;     // drop terms with exponent >= cutoff

    // Truncated inverse: for x != 0 returns y with val(x*y - 1) >= prec.cutoff
    // and no term of y of exponent >= cutoff - val(x).
    NovikovScalar invert(const Precision& prec) const;

    // Canonical text form: terms ascending, "c" for exponent 0, "c*T^(e)"
    // otherwise, "0" for zero. parse() accepts arbitrary order and signs.
    std::string str() const;
    static NovikovScalar parse(const std::string& text);

  private:
    std::vector<Term> terms_;
};

}  // namespace nova
