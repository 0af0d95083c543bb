#pragma once

#include <cstdint>

#include "nova/affinoid.hpp"
#include "nova/operator.hpp"

namespace nova {

// splitmix64: tiny, portable, byte-reproducible across platforms, which the
// deterministic verification reports depend on.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // inclusive range
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + (std::int64_t)(next() % (std::uint64_t)(hi - lo + 1));
    }

    Rational rational(std::int64_t max_num = 6, std::int64_t max_den = 4) {
        std::int64_t n = range(-max_num, max_num);
        std::int64_t d = range(1, max_den);
        return Rational(n, d);
    }

    Rational nonzero_rational(std::int64_t max_num = 6, std::int64_t max_den = 4) {
        Rational r = rational(max_num, max_den);
        return r.is_zero() ? Rational(1, range(1, max_den)) : r;
    }

    // Exponents on the half-integer grid and coefficients with |num| <= 3,
    // den <= 2 keep truncated-inverse series inside the 128-bit rational
    // range for cutoffs through roughly 12.
    NovikovScalar novikov(int max_terms = 3) {
        std::vector<NovikovScalar::Term> terms;
        int k = (int)range(0, max_terms);
        for (int i = 0; i < k; ++i) terms.push_back({rational(4, 2), rational(3, 2)});
        return NovikovScalar::from_terms(std::move(terms));
    }

    NovikovScalar nonzero_novikov(int max_terms = 3) {
        NovikovScalar x = novikov(max_terms);
        return x.is_zero() ? NovikovScalar::monomial(rational(4, 2), nonzero_rational(3, 2)) : x;
    }

    IntVec exponent(int dim, std::int64_t bound = 3) {
        IntVec v((size_t)dim);
        for (auto& x : v) x = range(-bound, bound);
        return v;
    }

    LaurentElement laurent(int dim, int max_terms = 3, std::int64_t bound = 3) {
        LaurentElement f(dim);
        int k = (int)range(0, max_terms);
        for (int i = 0; i < k; ++i) f.add_term(exponent(dim, bound), nonzero_novikov(2));
        return f;
    }

    FiniteOperator finite_operator(int dim, int max_entries = 3, std::int64_t bound = 3) {
        FiniteOperator phi(dim);
        int k = (int)range(1, max_entries);
        for (int i = 0; i < k; ++i)
            phi.add_entry(exponent(dim, bound), exponent(dim, bound), nonzero_novikov(2));
        return phi;
    }

    GradedOperator graded_operator(int dim, int max_components = 2, int max_entries = 2,
                                   std::int64_t bound = 3) {
        GradedOperator psi(dim);
        int k = (int)range(1, max_components);
        for (int i = 0; i < k; ++i) {
            ExtSubset s = (ExtSubset)(next() % (1u << dim));
            psi.add_component(s, finite_operator(dim, max_entries, bound));
        }
        return psi;
    }

    // interval [a,b] with rational endpoints, a < b
    Polytope interval(std::int64_t span = 4) {
        Rational a = rational(span, 2);
        Rational len = nonzero_rational(span, 2).abs();
        Rational b = a + len;
        return Polytope::from_halfspaces(
            1, {Halfspace::make({1}, a), Halfspace::make({-1}, -b)});
    }

    // axis-aligned box in the given dimension
    Polytope box(int dim, std::int64_t span = 4) {
        std::vector<Halfspace> cs;
        for (int j = 0; j < dim; ++j) {
            Rational a = rational(span, 2);
            Rational b = a + nonzero_rational(span, 2).abs();
            IntVec pos((size_t)dim, 0), neg((size_t)dim, 0);
            pos[(size_t)j] = 1;
            neg[(size_t)j] = -1;
            cs.push_back(Halfspace::make(pos, a));
            cs.push_back(Halfspace::make(neg, -b));
        }
        return Polytope::from_halfspaces(dim, cs);
    }

  private:
    std::uint64_t state_;
};

}  // namespace nova
