#include "nova/affinoid.hpp"

#include "doctest.h"
#include "nova/rng.hpp"

using namespace nova;

namespace {

Polytope interval(Rational a, Rational b) {
    return Polytope::from_halfspaces(1, {Halfspace::make({1}, a), Halfspace::make({-1}, -b)});
}

LaurentElement z_pow(std::int64_t k) {
    return LaurentElement::monomial({k}, NovikovScalar::one());
}

NovikovScalar tee(Rational e) { return NovikovScalar::monomial(e, Rational(1)); }

}  // namespace

TEST_CASE("val_P by the vertex formula") {
    AffinoidContext unit(interval(Rational(0), Rational(1)), {Rational(0)});
    CHECK(val_P(z_pow(1), unit) == Val(Rational(0)));
    CHECK(val_P(z_pow(1) + z_pow(-1).scale(tee(Rational(1))), unit) == Val(Rational(0)));
    AffinoidContext half(interval(Rational(0), Rational(1, 2)), {Rational(0)});
    CHECK(val_P(z_pow(-1).scale(tee(Rational(1))), half) == Val(Rational(1, 2)));
    CHECK(val_P(LaurentElement::zero(1), unit).is_infinite());
}

TEST_CASE("restriction drops terms beyond the cutoff") {
    AffinoidContext unit(interval(Rational(0), Rational(1)), {Rational(0)});
    AffinoidContext half(interval(Rational(0), Rational(1, 2)), {Rational(0)});
    LaurentElement f = LaurentElement::one(1) + z_pow(1).scale(tee(Rational(5)));
    CHECK(restrict(f, unit, half, Precision::exponent(3)) == LaurentElement::one(1));
    CHECK(restrict(f, unit, unit, Precision::exponent(100)) == f);
    CHECK_THROWS_AS(
        restrict(f, unit, AffinoidContext(interval(Rational(-1), Rational(2)), {Rational(0)}),
                 Precision::exponent(3)),
        Error);
}

TEST_CASE("mul_P truncates the convolution against val_P") {
    AffinoidContext unit(interval(Rational(0), Rational(1)), {Rational(0)});
    Precision big = Precision::exponent(100);
    CHECK(mul_P(z_pow(1), z_pow(-1).scale(tee(Rational(1))), unit, big) ==
          LaurentElement::one(1).scale(tee(Rational(1))));
    LaurentElement f = LaurentElement::one(1) + z_pow(2).scale(tee(Rational(1, 2)));
    CHECK(mul_P(f, LaurentElement::one(1), unit, big) == f);
    LaurentElement one_plus_z = LaurentElement::one(1) + z_pow(1);
    LaurentElement one_minus_z = LaurentElement::one(1) - z_pow(1);
    CHECK(mul_P(one_plus_z, one_minus_z, unit, big) == LaurentElement::one(1) - z_pow(2));
}

TEST_CASE("rebase implements the flux factor and preserves val") {
    AffinoidContext unit(interval(Rational(0), Rational(1)), {Rational(0)});
    LaurentElement moved = rebase(z_pow(1), unit, {Rational(1, 2)});
    CHECK(moved == z_pow(1).scale(tee(Rational(1, 2))));
    CHECK(rebase(LaurentElement::one(1), unit, {Rational(1, 2)}) == LaurentElement::one(1));

    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        Polytope p = rng.interval();
        RatVec q{rng.rational()}, q2{rng.rational()};
        AffinoidContext ctx(p, q), ctx2(p, q2);
        LaurentElement f = rng.laurent(1, 4);
        LaurentElement g = rebase(f, ctx, q2);
        CHECK(val_P(g, ctx2) == val_P(f, ctx));
        CHECK(rebase(g, ctx2, q) == f);
    }
}

TEST_CASE("monotonicity and submultiplicativity of val_P") {
    Rng rng(37);
    for (int i = 0; i < 100; ++i) {
        Polytope outer = rng.interval();
        Rational lo = outer.support_min({1}), hi = outer.support_max({1});
        Rational quarter = (hi - lo) / Rational(4);
        AffinoidContext octx(outer, {Rational(0)});
        AffinoidContext ictx(interval(lo + quarter, hi - quarter), {Rational(0)});
        LaurentElement f = rng.laurent(1, 4), g = rng.laurent(1, 4);
        CHECK(val_P(f, ictx) >= val_P(f, octx));
        CHECK(val_P(f * g, octx) >= val_P(f, octx) + val_P(g, octx));
    }
    // the mandatory strict instance
    AffinoidContext unit(interval(Rational(0), Rational(1)), {Rational(0)});
    LaurentElement f = z_pow(1);
    LaurentElement g = z_pow(-1).scale(tee(Rational(1)));
    CHECK(val_P(f, unit) == Val(Rational(0)));
    CHECK(val_P(g, unit) == Val(Rational(0)));
    CHECK(val_P(f * g, unit) == Val(Rational(1)));
}

TEST_CASE("single-point polytopes give additive valuations") {
    Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        Rational pt = rng.rational();
        AffinoidContext ctx(interval(pt, pt), {Rational(0)});
        LaurentElement f = rng.laurent(1), g = rng.laurent(1);
        if (f.is_zero() || g.is_zero()) continue;
        CHECK(val_P(f * g, ctx) == val_P(f, ctx) + val_P(g, ctx));
    }
}

TEST_CASE("convergence certificate") {
    std::vector<std::pair<Rational, Rational>> pairs;
    for (int i = 1; i <= 4; ++i) pairs.push_back({Rational(i), Rational(i)});
    auto cert = convergence_certificate(Rational(1), Rational(1, 4), pairs);
    CHECK(cert.convergent);
    CHECK(cert.slope == Rational(1, 2));
    CHECK(cert.bound_constant_A == Rational(0));
    CHECK(!convergence_certificate(Rational(1), Rational(1, 2), pairs).convergent);
    CHECK_THROWS_AS(convergence_certificate(Rational(0), Rational(1, 4), pairs), Error);
    CHECK_THROWS_AS(convergence_certificate(Rational(1), Rational(1, 4),
                                            {{Rational(1), Rational(-1)}}),
                    Error);
}

TEST_CASE("tate split by exponent sign") {
    LaurentElement f = z_pow(1) + z_pow(-1);
    auto [plus, minus] = tate_split(f, 0);
    CHECK(plus == z_pow(1));
    CHECK(minus == z_pow(-1));
    auto [p2, m2] = tate_split(LaurentElement::one(1), 0);
    CHECK(p2.is_zero());
    CHECK(m2 == LaurentElement::one(1));
    auto [p3, m3] = tate_split(LaurentElement::zero(1), 0);
    CHECK(p3.is_zero());
    CHECK(m3.is_zero());
    CHECK(plus + minus == f);
}

TEST_CASE("laurent text form round trips") {
    Rng rng(43);
    for (int i = 0; i < 100; ++i) {
        int n = (i % 2) + 1;
        LaurentElement f = rng.laurent(n, 3);
        CHECK(LaurentElement::parse(f.str(), n) == f);
        CHECK(LaurentElement::parse(f.str(), n).str() == f.str());
    }
    CHECK(LaurentElement::parse("(1)*z[0] + (1*T^(1))*z[-1]", 1).str() ==
          "(1*T^(1))*z[-1] + (1)*z[0]");
    CHECK(LaurentElement::parse("0", 1).is_zero());
}
