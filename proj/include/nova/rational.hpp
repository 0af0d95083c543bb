#pragma once

#include <cstdint>
#include <string>

#include "nova/error.hpp"

namespace nova {

// Exact rational arithmetic on 128-bit numerator/denominator, normalized to
// lowest terms with a positive denominator. Overflow raises instead of
// wrapping; the working scales of this project (small exponents and
// coefficients, short truncated series, desk-size polytopes) stay far below
// the 2^127 ceiling.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const {
        if (num_ > INT64_MAX || num_ < INT64_MIN) raise(errc::overflow, "numerator exceeds 64 bits");
        return (std::int64_t)num_;
    }
    std::int64_t den() const {
        if (den_ > INT64_MAX) raise(errc::overflow, "denominator exceeds 64 bits");
        return (std::int64_t)den_;
    }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                    checked_mul(a.den_, b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(checked_add(checked_mul(a.num_, b.den_), -checked_mul(b.num_, a.den_)),
                    checked_mul(a.den_, b.den_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) raise(errc::zero_division, "division by zero rational");
        return make(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational inverse() const {
        if (num_ == 0) raise(errc::zero_division, "inverse of zero rational");
        return make(den_, num_);
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
    std::string str() const {
        if (den_ == 1) return to_string(num_);
        return to_string(num_) + "/" + to_string(den_);
    }

    static Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
    static Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

  private:
    static __int128 checked_mul(__int128 a, __int128 b) {
        __int128 out;
        if (__builtin_mul_overflow(a, b, &out)) raise(errc::overflow, "rational product overflow");
        return out;
    }
    static __int128 checked_add(__int128 a, __int128 b) {
        __int128 out;
        if (__builtin_add_overflow(a, b, &out)) raise(errc::overflow, "rational sum overflow");
        return out;
    }

    static Rational make(__int128 n, __int128 d) {
        if (d == 0) raise(errc::zero_division, "zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static std::string to_string(__int128 v) {
        if (v == 0) return "0";
        bool neg = v < 0;
        // -2^127 cannot arise from normalized values at these scales
        unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
        std::string digits;
        while (u > 0) {
            digits.push_back((char)('0' + (int)(u % 10)));
            u /= 10;
        }
        if (neg) digits.push_back('-');
        return std::string(digits.rbegin(), digits.rend());
    }

    void normalize() { *this = make(num_, den_); }

    __int128 num_;
    __int128 den_;
};

// Rational extended with +infinity, the codomain of every valuation map.
class Val {
  public:
    Val() : infinite_(true) {}  // default: +infinity (valuation of zero)
    Val(const Rational& r) : infinite_(false), value_(r) {}

    static Val infinity() { return Val(); }

    bool is_infinite() const { return infinite_; }
    const Rational& finite() const {
        if (infinite_) raise(errc::invalid_argument, "valuation is +infinity");
        return value_;
    }

    friend Val operator+(const Val& a, const Val& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Val(a.value_ + b.value_);
    }
    friend bool operator==(const Val& a, const Val& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const Val& a, const Val& b) { return !(a == b); }
    friend bool operator<(const Val& a, const Val& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator>=(const Val& a, const Val& b) { return !(a < b); }
    friend bool operator<=(const Val& a, const Val& b) { return !(b < a); }
    friend bool operator>(const Val& a, const Val& b) { return b < a; }

    static Val min(const Val& a, const Val& b) { return a < b ? a : b; }

    std::string str() const { return infinite_ ? "+inf" : value_.str(); }

  private:
    bool infinite_;
    Rational value_;
};

}  // namespace nova
