#include "nova/polytope.hpp"

#include "doctest.h"
#include "nova/rng.hpp"

using namespace nova;

namespace {

Polytope interval(Rational a, Rational b) {
    return Polytope::from_halfspaces(1, {Halfspace::make({1}, a), Halfspace::make({-1}, -b)});
}

Polytope unit_square() {
    return Polytope::from_halfspaces(2, {Halfspace::make({1, 0}, Rational(0)),
                                         Halfspace::make({-1, 0}, Rational(-1)),
                                         Halfspace::make({0, 1}, Rational(0)),
                                         Halfspace::make({0, -1}, Rational(-1))});
}

}  // namespace

TEST_CASE("vertex enumeration") {
    Polytope p = interval(Rational(-1), Rational(2));
    REQUIRE(p.vertices().size() == 2);
    CHECK(p.vertices()[0][0] == Rational(-1));
    CHECK(p.vertices()[1][0] == Rational(2));

    Polytope sq = unit_square();
    CHECK(sq.vertices().size() == 4);
    CHECK(sq.vertices_str() == "[(0, 0), (0, 1), (1, 0), (1, 1)]");

    CHECK_THROWS_AS(Polytope::from_halfspaces(1, {Halfspace::make({1}, Rational(1)),
                                                  Halfspace::make({-1}, Rational(0))}),
                    Error);  // empty
    CHECK_THROWS_AS(Polytope::from_halfspaces(1, {Halfspace::make({1}, Rational(0))}),
                    Error);  // unbounded
    CHECK_THROWS_AS(Halfspace::make({0, 0}, Rational(0)), Error);  // zero normal
    CHECK_THROWS_AS(Polytope::from_halfspaces(2, {Halfspace::make({1, 0}, Rational(0)),
                                                  Halfspace::make({-1, 0}, Rational(-1))}),
                    Error);  // slab, unbounded in y
}

TEST_CASE("every vertex solves a constraint subsystem and satisfies the rest") {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        Polytope p = rng.box(2);
        for (auto& v : p.vertices()) {
            CHECK(p.contains(v));
            int active = 0;
            for (auto& h : p.constraints())
                if (dot(h.normal, v) == h.offset) ++active;
            CHECK(active >= 2);
        }
    }
}

TEST_CASE("support minimum is attained at a vertex") {
    Polytope p = interval(Rational(-1), Rational(2));
    CHECK(p.support_min({1}) == Rational(-1));
    Polytope sq = unit_square();
    CHECK(sq.support_min({1, -1}) == Rational(-1));
    CHECK(sq.support_min({0, 0}) == Rational(0));

    // oracle: the vertex value bounds random convex combinations from below
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Polytope box = rng.box(2);
        IntVec beta = rng.exponent(2, 3);
        Rational vertex_min = box.support_min(beta);
        const auto& verts = box.vertices();
        for (int s = 0; s < 50; ++s) {
            Rational w1(rng.range(0, 5)), w2(rng.range(0, 5)), w3(rng.range(0, 5));
            Rational total = w1 + w2 + w3;
            if (total.is_zero()) continue;
            RatVec point(2, Rational(0));
            const RatVec& a = verts[(size_t)rng.range(0, (std::int64_t)verts.size() - 1)];
            const RatVec& b = verts[(size_t)rng.range(0, (std::int64_t)verts.size() - 1)];
            const RatVec& c = verts[(size_t)rng.range(0, (std::int64_t)verts.size() - 1)];
            for (size_t k = 0; k < 2; ++k)
                point[k] = (a[k] * w1 + b[k] * w2 + c[k] * w3) / total;
            CHECK(dot(beta, point) >= vertex_min);
        }
        // superadditivity
        IntVec beta2 = rng.exponent(2, 3);
        IntVec sum(2);
        for (size_t k = 0; k < 2; ++k) sum[k] = beta[k] + beta2[k];
        CHECK(box.support_min(sum) >= box.support_min(beta) + box.support_min(beta2));
    }
}

TEST_CASE("intersection is a value, emptiness included") {
    auto meet = intersect(interval(Rational(0), Rational(2)), interval(Rational(1), Rational(3)));
    REQUIRE(meet.has_value());
    CHECK(*meet == interval(Rational(1), Rational(2)));
    CHECK(!intersect(interval(Rational(0), Rational(1)), interval(Rational(2), Rational(3))));
    Polytope p = interval(Rational(0), Rational(1));
    CHECK(*intersect(p, p) == p);

    // commutative, associative, idempotent on vertex sets
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        Polytope a = rng.interval(), b = rng.interval(), c = rng.interval();
        auto ab = intersect(a, b), ba = intersect(b, a);
        CHECK(ab.has_value() == ba.has_value());
        if (ab) CHECK(*ab == *ba);
        auto ab_c = ab ? intersect(*ab, c) : std::nullopt;
        auto bc = intersect(b, c);
        auto a_bc = bc ? intersect(a, *bc) : std::nullopt;
        CHECK(ab_c.has_value() == a_bc.has_value());
        if (ab_c) CHECK(*ab_c == *a_bc);
    }
}

TEST_CASE("subset detection with strictness") {
    auto f1 = is_subset(interval(Rational(0), Rational(1)), interval(Rational(-1), Rational(2)));
    CHECK(f1.subset);
    CHECK(f1.strict);
    auto f2 = is_subset(interval(Rational(0), Rational(1)), interval(Rational(0), Rational(2)));
    CHECK(f2.subset);
    CHECK(!f2.strict);
    auto f3 = is_subset(interval(Rational(0), Rational(2)), interval(Rational(0), Rational(1)));
    CHECK(!f3.subset);
}

TEST_CASE("laurent split produces the three cells") {
    auto r = laurent_split(interval(Rational(-1), Rational(1)), {1}, Rational(0));
    REQUIRE(r.plus.has_value());
    REQUIRE(r.minus.has_value());
    REQUIRE(r.overlap.has_value());
    CHECK(*r.plus == interval(Rational(0), Rational(1)));
    CHECK(*r.minus == interval(Rational(-1), Rational(0)));
    CHECK(*r.overlap == interval(Rational(0), Rational(0)));

    auto miss = laurent_split(interval(Rational(0), Rational(1)), {1}, Rational(-1));
    CHECK(miss.plus.has_value());
    CHECK(!miss.minus.has_value());
    CHECK(!miss.overlap.has_value());

    auto vertical = laurent_split(unit_square(), {1, 0}, Rational(1, 2));
    REQUIRE(vertical.plus.has_value());
    CHECK(vertical.plus->vertices_str() == "[(1/2, 0), (1/2, 1), (1, 0), (1, 1)]");
    CHECK(vertical.minus->vertices_str() == "[(0, 0), (0, 1), (1/2, 0), (1/2, 1)]");

    // split cells meet exactly in the slice, and sampled points land in a side
    Rng rng(29);
    for (int i = 0; i < 10; ++i) {
        Polytope box = rng.box(2);
        IntVec u{1, 0};
        Rational lo = box.support_min(u), hi = box.support_max(u);
        Rational lambda = (lo + hi) / Rational(2);
        auto split = laurent_split(box, u, lambda);
        REQUIRE(split.plus.has_value());
        REQUIRE(split.minus.has_value());
        CHECK(*intersect(*split.plus, *split.minus) == *split.overlap);
        const auto& verts = box.vertices();
        for (size_t a = 0; a < verts.size(); ++a)
            for (size_t b = 0; b < verts.size(); ++b) {
                RatVec mid(2);
                for (size_t k = 0; k < 2; ++k) mid[k] = (verts[a][k] + verts[b][k]) / Rational(2);
                CHECK((split.plus->contains(mid) || split.minus->contains(mid)));
            }
    }
}

TEST_CASE("laurent refinement cuts along piece facets") {
    Cover cover = Cover::build(interval(Rational(0), Rational(1)), {"a", "b"},
                               {interval(Rational(0), Rational(2, 3)),
                                interval(Rational(1, 3), Rational(1))});
    auto splits = laurent_refinement(cover);
    REQUIRE(splits.size() == 2);
    CHECK(splits[0].offset == Rational(1, 3));
    CHECK(splits[1].offset == Rational(2, 3));
    auto cells = enumerate_cells(cover.base(), splits);
    CHECK(cells.size() == 3);

    Cover self = Cover::build(interval(Rational(0), Rational(1)), {"all"},
                              {interval(Rational(0), Rational(1))});
    CHECK(laurent_refinement(self).empty());
}

TEST_CASE("cover construction validates inclusion ordering and covering") {
    CHECK_THROWS_AS(Cover::build(interval(Rational(0), Rational(1)), {"a", "b"},
                                 {interval(Rational(0), Rational(1, 4)),
                                  interval(Rational(3, 4), Rational(1))}),
                    Error);
    Cover cover = Cover::build(interval(Rational(0), Rational(1)), {"a", "b", "ab"},
                               {interval(Rational(0), Rational(2, 3)),
                                interval(Rational(1, 3), Rational(1)),
                                interval(Rational(1, 3), Rational(2, 3))});
    CHECK(cover.leq(cover.index_of("a"), cover.index_of("ab")));
    CHECK(cover.leq(cover.index_of("b"), cover.index_of("ab")));
    CHECK(!cover.leq(cover.index_of("a"), cover.index_of("b")));
    CHECK(cover.leq(cover.index_of("a"), cover.index_of("a")));
}

TEST_CASE("three-dimensional polytopes enumerate and split") {
    std::vector<Halfspace> cube;
    for (int j = 0; j < 3; ++j) {
        IntVec pos(3, 0), neg(3, 0);
        pos[(size_t)j] = 1;
        neg[(size_t)j] = -1;
        cube.push_back(Halfspace::make(pos, Rational(0)));
        cube.push_back(Halfspace::make(neg, Rational(-1)));
    }
    Polytope box = Polytope::from_halfspaces(3, cube);
    CHECK(box.vertices().size() == 8);
    CHECK(box.support_min({1, -2, 3}) == Rational(-2));

    // chop a corner: the simplex constraint x+y+z >= 1/2 cuts one vertex
    std::vector<Halfspace> chopped = cube;
    chopped.push_back(Halfspace::make({1, 1, 1}, Rational(1, 2)));
    Polytope corner = Polytope::from_halfspaces(3, chopped);
    CHECK(corner.vertices().size() == 10);  // 7 cube vertices + 3 new ones

    auto split = laurent_split(box, {1, 1, 1}, Rational(3, 2));
    REQUIRE(split.plus.has_value());
    REQUIRE(split.minus.has_value());
    REQUIRE(split.overlap.has_value());
    CHECK(*intersect(*split.plus, *split.minus) == *split.overlap);

    // a 3-d slab is unbounded and rejected
    CHECK_THROWS_AS(Polytope::from_halfspaces(3, {Halfspace::make({1, 0, 0}, Rational(0)),
                                                  Halfspace::make({-1, 0, 0}, Rational(-1)),
                                                  Halfspace::make({0, 1, 0}, Rational(0)),
                                                  Halfspace::make({0, -1, 0}, Rational(-1))}),
                    Error);
}

TEST_CASE("polytope text form round trips") {
    std::string text = "P{dim=2; q=[0,0]; ineq [1,0] >= -1; ineq [-1,1] >= 0}";
    // that polytope is unbounded, so use a bounded one for the round trip
    Polytope sq = unit_square();
    RatVec q{Rational(1, 2), Rational(0)};
    ParsedPolytope back = parse_polytope(print_polytope(sq, q));
    CHECK(back.poly == sq);
    CHECK(back.basepoint == q);
    CHECK_THROWS_AS(parse_polytope(text), Error);  // unbounded input is rejected
    CHECK_THROWS_AS(parse_polytope("P{q=[0]}"), Error);
}
