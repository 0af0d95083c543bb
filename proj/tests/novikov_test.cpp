#include "nova/novikov.hpp"

#include "doctest.h"
#include "nova/rng.hpp"

using namespace nova;

TEST_CASE("valuation of the smallest exponent") {
    NovikovScalar x = NovikovScalar::parse("1*T^(1/2) + 2*T^(2)");
    CHECK(x.val() == Val(Rational(1, 2)));
    CHECK(NovikovScalar::zero().val().is_infinite());
    CHECK(NovikovScalar::constant(Rational(5)).val() == Val(Rational(0)));
}

TEST_CASE("addition merges and cancels") {
    NovikovScalar t = NovikovScalar::monomial(Rational(1), Rational(1));
    CHECK((t + (-t)).is_zero());
    CHECK((NovikovScalar::one() + t) + t == NovikovScalar::parse("1 + 2*T^(1)"));
    NovikovScalar x = NovikovScalar::parse("3/2*T^(-1) + 1*T^(2)");
    CHECK(x + NovikovScalar::zero() == x);
}

TEST_CASE("multiplication convolves") {
    NovikovScalar a = NovikovScalar::monomial(Rational(1), Rational(1));
    NovikovScalar b = NovikovScalar::monomial(Rational(1, 2), Rational(2));
    CHECK(a * b == NovikovScalar::monomial(Rational(3, 2), Rational(2)));
    NovikovScalar one_plus = NovikovScalar::parse("1 + 1*T^(1)");
    NovikovScalar one_minus = NovikovScalar::parse("1 - 1*T^(1)");
    CHECK(one_plus * one_minus == NovikovScalar::parse("1 - 1*T^(2)"));
    CHECK((one_plus * NovikovScalar::zero()).is_zero());
}

TEST_CASE("truncated inverse satisfies the contract") {
    NovikovScalar x = NovikovScalar::parse("1 + 1*T^(1)");
    NovikovScalar y = x.invert(Precision::exponent(3));
    CHECK(y == NovikovScalar::parse("1 - 1*T^(1) + 1*T^(2)"));
    CHECK((x * y - NovikovScalar::one()).val() == Val(Rational(3)));

    // monomials invert exactly
    NovikovScalar t2 = NovikovScalar::monomial(Rational(2), Rational(1));
    CHECK(t2.invert(Precision::exponent(100)) == NovikovScalar::monomial(Rational(-2), Rational(1)));

    CHECK_THROWS_AS(NovikovScalar::zero().invert(Precision::exponent(3)), Error);

    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        NovikovScalar z = rng.nonzero_novikov();
        NovikovScalar inv = z.invert(Precision::exponent(5));
        CHECK((z * inv - NovikovScalar::one()).val() >= Val(Rational(5)));
    }
}

TEST_CASE("truncation boundary is exclusive") {
    NovikovScalar x = NovikovScalar::parse("1 + 1*T^(5)");
    CHECK(x.truncate(Precision::exponent(3)) == NovikovScalar::one());
    CHECK(NovikovScalar::zero().truncate(Precision::exponent(3)).is_zero());
    NovikovScalar t3 = NovikovScalar::monomial(Rational(3), Rational(1));
    CHECK(t3.truncate(Precision::exponent(3)).is_zero());
}

TEST_CASE("ultrametric inequality with equality off the diagonal") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        NovikovScalar x = rng.novikov(), y = rng.novikov();
        Val bound = Val::min(x.val(), y.val());
        CHECK((x + y).val() >= bound);
        if (x.val() != y.val()) CHECK((x + y).val() == bound);
        if (!x.is_zero() && !y.is_zero()) CHECK((x * y).val() == x.val() + y.val());
    }
}

TEST_CASE("field laws hold exactly on normal forms") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        NovikovScalar x = rng.novikov(), y = rng.novikov(), z = rng.novikov();
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("canonical text form round trips") {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        NovikovScalar x = rng.novikov(4);
        CHECK(NovikovScalar::parse(x.str()) == x);
        CHECK(NovikovScalar::parse(x.str()).str() == x.str());
    }
    CHECK(NovikovScalar::parse("2*T^(2) + 1*T^(1/2)").str() == "1*T^(1/2) + 2*T^(2)");
    CHECK(NovikovScalar::parse("0").is_zero());
    CHECK(NovikovScalar::parse("T^(1)") == NovikovScalar::monomial(Rational(1), Rational(1)));
    CHECK_THROWS_AS(NovikovScalar::parse("1//2"), Error);
    CHECK_THROWS_AS(NovikovScalar::parse(""), Error);
}
