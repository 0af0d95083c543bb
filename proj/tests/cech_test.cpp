#include "nova/cech.hpp"

#include "doctest.h"
#include "nova/rng.hpp"

using namespace nova;

namespace {

Polytope interval(Rational a, Rational b) {
    return Polytope::from_halfspaces(1, {Halfspace::make({1}, a), Halfspace::make({-1}, -b)});
}

Polytope box2(Rational x0, Rational x1, Rational y0, Rational y1) {
    return Polytope::from_halfspaces(2, {Halfspace::make({1, 0}, x0), Halfspace::make({-1, 0}, -x1),
                                         Halfspace::make({0, 1}, y0), Halfspace::make({0, -1}, -y1)});
}

LaurentElement z_pow(std::int64_t k) {
    return LaurentElement::monomial({k}, NovikovScalar::one());
}

CechComplex two_piece_complex() {
    Cover cover = Cover::build(interval(Rational(0), Rational(1)), {"a", "b"},
                               {interval(Rational(0), Rational(2, 3)),
                                interval(Rational(1, 3), Rational(1))});
    return CechComplex::build(cover, {Rational(0)});
}

}  // namespace

TEST_CASE("complex enumerates nonempty faces") {
    CechComplex complex = two_piece_complex();
    REQUIRE(complex.faces().size() == 3);
    CHECK(complex.face_name(complex.faces()[2]) == "{a,b}");
    CHECK(complex.face_polytope({0, 1}) == interval(Rational(1, 3), Rational(2, 3)));

    // a disjoint redundant piece has no pairwise faces with the far side
    Cover with_far = Cover::build(interval(Rational(0), Rational(1)), {"a", "b", "far"},
                                  {interval(Rational(0), Rational(2, 3)),
                                   interval(Rational(1, 3), Rational(1)),
                                   interval(Rational(0), Rational(1, 4))});
    CechComplex complex2 = CechComplex::build(with_far, {Rational(0)});
    CHECK(!complex2.has_face({1, 2}));  // [1/3,1] and [0,1/4] are disjoint
}

TEST_CASE("cech differential signs and cocycles") {
    CechComplex complex = two_piece_complex();
    Precision prec = Precision::exponent(8);

    CechCochain c;
    c.degree = 0;
    c.precision = prec;
    c.values.emplace(Face{0}, LaurentElement::one(1));
    CechCochain d = cech_differential(complex, c);
    REQUIRE(d.values.count(Face{0, 1}) == 1);
    CHECK(d.values.at(Face{0, 1}) == LaurentElement::zero(1) - LaurentElement::one(1));

    // augmentations are cocycles
    LaurentElement f = z_pow(1) + LaurentElement::one(1);
    CechCochain aug = augment(complex, f, prec);
    CHECK(cocycle_defect(complex, aug).is_infinite());

    Rng rng(73);
    for (int i = 0; i < 50; ++i) {
        CechCochain random;
        random.degree = 0;
        random.precision = prec;
        random.values.emplace(Face{0}, rng.laurent(1, 3));
        random.values.emplace(Face{1}, rng.laurent(1, 3));
        CechCochain dd = cech_differential(complex, cech_differential(complex, random));
        for (auto& [face, value] : dd.values)
            CHECK(val_P(value, complex.face_context(face)) >= Val(Rational(8)));
    }
}

TEST_CASE("two-term homotopy identities") {
    AffinoidContext base(interval(Rational(-1), Rational(1)), {Rational(0)});
    TwoTermCover cover = make_two_term(base, SplitDatum{{1}, Rational(0)});
    Precision prec = Precision::exponent(10);

    LaurentElement f = z_pow(1) + z_pow(-1);
    auto [on_plus, on_minus] = tate_homotopy_deg1(cover, f, prec);
    CHECK(on_plus == z_pow(1));
    CHECK(on_minus == LaurentElement::zero(1) - z_pow(-1));

    LaurentElement glued = tate_homotopy_deg0(cover, z_pow(1) + LaurentElement::one(1), z_pow(-1), prec);
    CHECK(glued == LaurentElement::one(1));
    CHECK(tate_homotopy_deg0(cover, LaurentElement::zero(1), LaurentElement::zero(1), prec).is_zero());
}

TEST_CASE("laurent contraction identity on the box cover") {
    Rng rng(79);
    Precision prec = Precision::exponent(8);
    AffinoidContext base(box2(Rational(0), Rational(1), Rational(0), Rational(1)),
                         {Rational(0), Rational(0)});
    std::vector<SplitDatum> splits{SplitDatum{{1, 0}, Rational(1, 2)},
                                   SplitDatum{{0, 1}, Rational(1, 2)}};
    LaurentCechData data = make_laurent_complex(base, splits);
    CHECK(data.complex.faces().size() == 15);  // full face lattice of two splits

    for (int degree = 0; degree <= 3; ++degree) {
        for (int trial = 0; trial < 5; ++trial) {
            CechCochain c;
            c.degree = degree;
            c.precision = prec;
            for (auto& face : data.complex.faces()) {
                if ((int)face.size() - 1 != degree) continue;
                c.values.emplace(face,
                                 truncate_P(rng.laurent(2, 3, 2), data.complex.face_context(face), prec));
            }
            CechCochain h_c = laurent_homotopy(data, c, prec);
            CechCochain h_dc = laurent_homotopy(data, cech_differential(data.complex, c), prec);
            CechCochain d_hc =
                degree > 0 ? cech_differential(data.complex, h_c) : CechCochain{};
            for (auto& face : data.complex.faces()) {
                if ((int)face.size() - 1 != degree) continue;
                LaurentElement lhs = h_dc.value_or_zero(face, 2);
                if (degree > 0) lhs = lhs + d_hc.value_or_zero(face, 2);
                LaurentElement rhs = c.value_or_zero(face, 2);
                if (degree == 0)
                    rhs = rhs - truncate_P(laurent_contract(data, c, prec),
                                           data.complex.face_context(face), prec);
                CHECK(val_P(lhs - rhs, data.complex.face_context(face)) >= Val(Rational(8)));
            }
        }
    }
}

TEST_CASE("contraction works along a non-axis split direction") {
    // split the square along x + y = 1; the grade vector solves <u,w> = 1
    CHECK(split_grade_vector({1, 1}) == IntVec{0, 1});
    CHECK(split_grade_vector({2, 3}) == IntVec{-1, 1});
    CHECK_THROWS_AS(split_grade_vector({2, 4}), Error);  // not primitive
    AffinoidContext base(box2(Rational(0), Rational(1), Rational(0), Rational(1)),
                         {Rational(0), Rational(0)});
    LaurentCechData data = make_laurent_complex(base, {SplitDatum{{1, 1}, Rational(1)}});
    REQUIRE(data.complex.faces().size() == 3);
    Precision prec = Precision::exponent(8);
    Rng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        CechCochain c;
        c.degree = 0;
        c.precision = prec;
        c.values.emplace(Face{0}, truncate_P(rng.laurent(2, 3, 2),
                                             data.complex.face_context(Face{0}), prec));
        c.values.emplace(Face{1}, truncate_P(rng.laurent(2, 3, 2),
                                             data.complex.face_context(Face{1}), prec));
        CechCochain h_dc = laurent_homotopy(data, cech_differential(data.complex, c), prec);
        LaurentElement glob = laurent_contract(data, c, prec);
        for (auto& face : data.complex.faces()) {
            if (face.size() != 1) continue;
            LaurentElement lhs = h_dc.value_or_zero(face, 2);
            LaurentElement rhs = c.value_or_zero(face, 2) -
                                 truncate_P(glob, data.complex.face_context(face), prec);
            CHECK(val_P(lhs - rhs, data.complex.face_context(face)) >= Val(Rational(8)));
        }
    }
}

TEST_CASE("repeated splits along one axis are rejected by the contraction") {
    // two cuts of the same coordinate produce empty combined cells, where the
    // representative formulas do not descend
    AffinoidContext base(interval(Rational(0), Rational(1)), {Rational(0)});
    LaurentCechData data = make_laurent_complex(
        base, {SplitDatum{{1}, Rational(1, 3)}, SplitDatum{{1}, Rational(2, 3)}});
    CechCochain c;
    c.degree = 1;
    c.precision = Precision::exponent(6);
    CHECK_THROWS_AS(laurent_homotopy(data, c, Precision::exponent(6)), Error);
    // reconstruction over the induced cover still works via the split recursion
    Cover cover = Cover::build(interval(Rational(0), Rational(1)), {"a", "b"},
                               {interval(Rational(0), Rational(2, 3)),
                                interval(Rational(1, 3), Rational(1))});
    CechComplex complex = CechComplex::build(cover, {Rational(0)});
    LaurentElement f = z_pow(2) + LaurentElement::one(1);
    CechCochain aug = augment(complex, f, Precision::exponent(6));
    CHECK(h0_reconstruct(complex, aug, Precision::exponent(6)) == f);
}

TEST_CASE("reconstruction round trips on the three-interval cover") {
    Cover cover = Cover::build(interval(Rational(0), Rational(1)), {"a", "b", "c"},
                               {interval(Rational(0), Rational(3, 8)),
                                interval(Rational(1, 4), Rational(3, 4)),
                                interval(Rational(5, 8), Rational(1))});
    CechComplex complex = CechComplex::build(cover, {Rational(0)});
    Precision prec = Precision::exponent(6);
    AffinoidContext base(cover.base(), {Rational(0)});

    Rng rng(83);
    for (int i = 0; i < 10; ++i) {
        LaurentElement f = rng.laurent(1, 4, 2);
        CechCochain c = augment(complex, f, prec);
        LaurentElement back = h0_reconstruct(complex, c, prec);
        CHECK(val_P(back - f, base) >= Val(Rational(6)));
    }
    // constant cochain reconstructs to the constant
    CechCochain ones = augment(complex, LaurentElement::one(1), prec);
    CHECK(h0_reconstruct(complex, ones, prec) == LaurentElement::one(1));

    // mismatched overlap values are rejected
    CechCochain bad;
    bad.degree = 0;
    bad.precision = prec;
    bad.values.emplace(Face{0}, LaurentElement::one(1));
    bad.values.emplace(Face{2}, LaurentElement::one(1));
    CHECK_THROWS_AS(h0_reconstruct(complex, bad, prec), Error);
}

TEST_CASE("degree-1 sampled acyclicity over general covers") {
    Cover cover = Cover::build(interval(Rational(0), Rational(1)), {"a", "b", "c"},
                               {interval(Rational(0), Rational(3, 8)),
                                interval(Rational(1, 4), Rational(3, 4)),
                                interval(Rational(5, 8), Rational(1))});
    CechComplex complex = CechComplex::build(cover, {Rational(0)});
    Precision prec = Precision::exponent(6);
    Rng rng(103);
    for (int i = 0; i < 10; ++i) {
        CechCochain b;
        b.degree = 0;
        b.precision = prec;
        for (size_t p = 0; p < cover.size(); ++p) b.values.emplace(Face{p}, rng.laurent(1, 3, 2));
        CechCochain c = cech_differential(complex, b);
        c.precision = prec;
        CechCochain solved = h1_witness(complex, c, prec);
        CechCochain back = cech_differential(complex, solved);
        for (auto& face : complex.faces()) {
            if (face.size() != 2) continue;
            LaurentElement diff = back.value_or_zero(face, 1) - c.value_or_zero(face, 1);
            CHECK(val_P(diff, complex.face_context(face)) >= Val(Rational(6)));
        }
    }
    // a single-edge cochain on a cover with a triple face is not closed and
    // must be refused
    Cover loop = Cover::build(interval(Rational(0), Rational(1)), {"a", "b", "c"},
                              {interval(Rational(0), Rational(1, 2)),
                               interval(Rational(1, 4), Rational(1)),
                               interval(Rational(0), Rational(1))});
    CechComplex loop_complex = CechComplex::build(loop, {Rational(0)});
    CechCochain nontrivial;
    nontrivial.degree = 1;
    nontrivial.precision = prec;
    nontrivial.values.emplace(Face{0, 1}, LaurentElement::one(1));
    CHECK_THROWS_AS(h1_witness(loop_complex, nontrivial, prec), Error);
}

TEST_CASE("locality constructs an avoiding cover") {
    Precision prec = Precision::exponent(6);
    LocalityReport rep = locality_check(
        interval(Rational(0), Rational(1, 4)), interval(Rational(0), Rational(1)),
        interval(Rational(0), Rational(1, 2)), interval(Rational(0), Rational(3, 8)), {Rational(0)},
        prec, 20);
    CHECK(rep.pass);
    CHECK(rep.text.find("[3/8, 1]") != std::string::npos);  // the midpoint piece

    LocalityReport trivial = locality_check(
        interval(Rational(0), Rational(1, 4)), interval(Rational(0), Rational(1)),
        interval(Rational(0), Rational(1)), interval(Rational(0), Rational(3, 8)), {Rational(0)},
        prec, 20);
    CHECK(trivial.pass);

    CHECK_THROWS_AS(locality_check(interval(Rational(0), Rational(1, 4)),
                                   interval(Rational(0), Rational(1)),
                                   interval(Rational(1, 2), Rational(1)),
                                   interval(Rational(0), Rational(3, 8)), {Rational(0)}, prec, 20),
                    Error);
}

TEST_CASE("cover and cochain files round trip") {
    CechComplex complex = two_piece_complex();
    std::string cover_text = print_cover(complex.cover(), complex.basepoint());
    RatVec q;
    Cover back = parse_cover_file(cover_text, &q);
    CHECK(back.size() == 2);
    CHECK(q == RatVec{Rational(0)});

    CechCochain c;
    c.degree = 0;
    c.precision = Precision::exponent(6);
    c.values.emplace(Face{0}, z_pow(1));
    c.values.emplace(Face{1}, LaurentElement::one(1));
    std::string cochain_text = print_cochain(complex, c);
    CechCochain parsed = parse_cochain_file(cochain_text, complex, Precision::exponent(6));
    CHECK(parsed.degree == 0);
    CHECK(parsed.values.at(Face{0}) == z_pow(1));
    CHECK(print_cochain(complex, parsed) == cochain_text);
}
