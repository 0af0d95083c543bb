#include "nova/category.hpp"

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

DirectedCategory star_category() {
    Cover cover = Cover::build(interval(Rational(0), Rational(1)), {"a", "b", "ab"},
                               {interval(Rational(0), Rational(5, 8)),
                                interval(Rational(3, 8), Rational(1)),
                                interval(Rational(3, 8), Rational(5, 8))});
    return DirectedCategory::build(cover, {Rational(0)});
}

}  // namespace

TEST_CASE("directed category homs follow inclusion") {
    DirectedCategory cat = star_category();
    size_t a = cat.cover().index_of("a"), b = cat.cover().index_of("b"),
           ab = cat.cover().index_of("ab");
    CHECK(cat.hom_nonzero(a, ab));
    CHECK(cat.hom_nonzero(b, ab));
    CHECK(cat.hom_nonzero(a, a));
    CHECK(!cat.hom_nonzero(a, b));
    CHECK(!cat.hom_nonzero(ab, a));
    CHECK_THROWS_AS(cat.hom_context(a, b), Error);
    // five nonzero hom spaces: three identities and two inclusions
    int count = 0;
    for (size_t t = 0; t < cat.size(); ++t)
        for (size_t s = 0; s < cat.size(); ++s)
            if (cat.hom_nonzero(t, s)) ++count;
    CHECK(count == 5);
}

TEST_CASE("composition restricts then multiplies") {
    Cover chain = Cover::build(interval(Rational(0), Rational(1)), {"c1", "c2"},
                               {interval(Rational(0), Rational(1)),
                                interval(Rational(0), Rational(1, 2))});
    DirectedCategory cat = DirectedCategory::build(chain, {Rational(0)});
    LaurentElement f = LaurentElement::one(1) +
                       z_pow(1).scale(NovikovScalar::monomial(Rational(1), Rational(1)));
    LaurentElement g = z_pow(1);
    LaurentElement composed = compose_hom(cat, 0, 1, 1, g, f, Precision::exponent(50));
    CHECK(composed == z_pow(1) + z_pow(2).scale(NovikovScalar::monomial(Rational(1), Rational(1))));
    LaurentElement with_unit = compose_hom(cat, 0, 0, 1, f, LaurentElement::one(1),
                                           Precision::exponent(50));
    CHECK(with_unit == f);
    CHECK_THROWS_AS(compose_hom(star_category(), 0, 1, 2, g, f, Precision::exponent(6)), Error);
}

TEST_CASE("rank-1 modules validate their cocycle") {
    DirectedCategory cat = star_category();
    size_t a = cat.cover().index_of("a"), b = cat.cover().index_of("b"),
           ab = cat.cover().index_of("ab");
    Precision prec = Precision::exponent(6);

    RankOneModule trivial = RankOneModule::build(cat, ModuleSide::left, {}, prec);
    CHECK(trivial.transition(cat, a, ab) == LaurentElement::one(1));

    std::map<std::pair<size_t, size_t>, LaurentElement> monomial;
    monomial[{a, ab}] = z_pow(3);
    monomial[{b, ab}] = z_pow(3);
    RankOneModule line = RankOneModule::build(cat, ModuleSide::left, monomial, prec);
    CHECK(line.transition(cat, a, ab) == z_pow(3));

    std::map<std::pair<size_t, size_t>, LaurentElement> bad;
    bad[{a, ab}] = z_pow(1) + LaurentElement::one(1);
    CHECK_THROWS_AS(RankOneModule::build(cat, ModuleSide::left, bad, prec), Error);
}

TEST_CASE("tensor surjectivity witness hits the target at precision") {
    DirectedCategory cat = star_category();
    size_t ab = cat.cover().index_of("ab");
    Precision prec = Precision::exponent(5);
    RankOneModule trivial = RankOneModule::build(cat, ModuleSide::left, {}, prec);

    Rng rng(89);
    for (int i = 0; i < 20; ++i) {
        LaurentElement target = rng.laurent(1, 3, 2);
        SurjectivityWitness w = tensor_surjectivity_witness(cat, trivial, ab, target, prec);
        CHECK(w.residual >= Val(Rational(5)));
    }
    // unit target with the trivial cocycle gives restricted units
    SurjectivityWitness unit = tensor_surjectivity_witness(cat, trivial, ab,
                                                           LaurentElement::one(1), prec);
    CHECK(unit.residual.is_infinite());

    Cover whole = Cover::build(interval(Rational(0), Rational(1)), {"all"},
                               {interval(Rational(0), Rational(1))});
    DirectedCategory whole_cat = DirectedCategory::build(whole, {Rational(0)});
    CHECK_THROWS_AS(tensor_surjectivity_witness(
                        whole_cat, RankOneModule::build(whole_cat, ModuleSide::left, {}, prec), 0,
                        LaurentElement::one(1), prec),
                    Error);
}

TEST_CASE("hom reconstruction witness inverts restriction") {
    DirectedCategory cat = star_category();
    size_t ab = cat.cover().index_of("ab");
    Precision prec = Precision::exponent(5);
    RankOneModule trivial = RankOneModule::build(cat, ModuleSide::left, {}, prec);

    Rng rng(97);
    for (int i = 0; i < 10; ++i) {
        LaurentElement global = rng.laurent(1, 3, 2);
        std::map<size_t, LaurentElement> tuple;
        for (auto rho : cat.star(ab)) tuple[rho] = global;
        ReconstructionWitness w = hom_reconstruction_witness(cat, trivial, ab, tuple, prec);
        CHECK(w.residual >= Val(Rational(5)));
        AffinoidContext sctx(cat.cover().piece(ab), {Rational(0)});
        CHECK(val_P(w.global - global, sctx) >= Val(Rational(5)));
    }
    // unit tuple reconstructs to 1
    std::map<size_t, LaurentElement> units;
    for (auto rho : cat.star(ab)) units[rho] = LaurentElement::one(1);
    ReconstructionWitness w = hom_reconstruction_witness(cat, trivial, ab, units, prec);
    AffinoidContext sctx(cat.cover().piece(ab), {Rational(0)});
    CHECK(val_P(w.global - LaurentElement::one(1), sctx) >= Val(Rational(5)));

    std::map<size_t, LaurentElement> bad = units;
    bad[cat.cover().index_of("a")] = z_pow(4);
    CHECK_THROWS_AS(hom_reconstruction_witness(cat, trivial, ab, bad, prec), Error);
}

TEST_CASE("bar complex locality over stars") {
    DirectedCategory cat = star_category();
    for (size_t s = 0; s < cat.size(); ++s) CHECK(locality_restrict_check(cat, s).pass);

    Cover two = Cover::build(interval(Rational(0), Rational(1)), {"l", "r", "m"},
                             {interval(Rational(0), Rational(3, 8)),
                              interval(Rational(5, 8), Rational(1)),
                              interval(Rational(1, 4), Rational(3, 4))});
    DirectedCategory honest = DirectedCategory::build(two, {Rational(0)});
    CHECK(locality_restrict_check(honest, two.index_of("l")).pass);
    DirectedCategory corrupted = DirectedCategory::build(two, {Rational(0)});
    corrupted.inject_edge(two.index_of("r"), two.index_of("l"));
    LocalityRestrictReport rep = locality_restrict_check(corrupted, two.index_of("l"));
    CHECK(!rep.pass);
    CHECK(rep.text.find("FAIL chain") != std::string::npos);

    // singleton poset passes vacuously
    Cover single = Cover::build(interval(Rational(0), Rational(1)), {"all"},
                                {interval(Rational(0), Rational(1))});
    CHECK(locality_restrict_check(DirectedCategory::build(single, {Rational(0)}), 0).pass);
}

TEST_CASE("perfectness filtration report") {
    DirectedCategory cat = star_category();
    Precision prec = Precision::exponent(6);
    RankOneModule trivial = RankOneModule::build(cat, ModuleSide::left, {}, prec);
    std::string report = perfectness_filtration(cat, trivial, prec);
    CHECK(report.find("stage 1") != std::string::npos);
    CHECK(report.find("stage 3") != std::string::npos);
    CHECK(report.find("maximal object") != std::string::npos);

    Cover chain = Cover::build(interval(Rational(0), Rational(1)), {"big", "small"},
                               {interval(Rational(0), Rational(1)),
                                interval(Rational(0), Rational(1, 2))});
    DirectedCategory cat2 = DirectedCategory::build(chain, {Rational(0)});
    std::string rep2 =
        perfectness_filtration(cat2, RankOneModule::build(cat2, ModuleSide::left, {}, prec), prec);
    size_t steps = 0;
    for (size_t pos = 0; (pos = rep2.find("extension step", pos)) != std::string::npos; ++pos)
        ++steps;
    CHECK(steps == 1);
}

TEST_CASE("module file parses side and cocycle lines") {
    DirectedCategory cat = star_category();
    Precision prec = Precision::exponent(6);
    std::string text =
        "side: left\n"
        "g[a<=ab] = (1)*z[3]\n"
        "g[b<=ab] = (1)*z[3]\n";
    RankOneModule mod = parse_module_file(text, cat, prec);
    CHECK(mod.side() == ModuleSide::left);
    CHECK(mod.transition(cat, cat.cover().index_of("a"), cat.cover().index_of("ab")) == z_pow(3));
}
