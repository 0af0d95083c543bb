#include "nova/verify.hpp"

#include <sstream>

#include "nova/category.hpp"
#include "nova/cech.hpp"
#include "nova/operator.hpp"
#include "nova/rng.hpp"

namespace nova {

namespace {

Polytope interval(const Rational& a, const Rational& b) {
    return Polytope::from_halfspaces(1, {Halfspace::make({1}, a), Halfspace::make({-1}, -b)});
}

Polytope box2(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
    return Polytope::from_halfspaces(2, {Halfspace::make({1, 0}, x0), Halfspace::make({-1, 0}, -x1),
                                         Halfspace::make({0, 1}, y0), Halfspace::make({0, -1}, -y1)});
}

bool val_at_least(const Val& v, const Rational& cutoff) { return v >= Val(cutoff); }

LaurentElement z_monomial(int dim, int axis, std::int64_t power) {
    IntVec beta((size_t)dim, 0);
    beta[(size_t)axis] = power;
    return LaurentElement::monomial(beta, NovikovScalar::one());
}

// (d H + H d) psi - (psi - Pi psi), evaluated pointwise over a window.
bool retraction_identity_holds(const GradedOperator& psi, int window, HomotopyForm form,
                               std::string* counterexample) {
    const int n = psi.dim();
    LazyGraded lazy = lazy_of(psi);
    LazyGraded h_psi = lazy_inclusion_homotopy(lazy, form);
    LazyGraded d_psi = lazy_differential(lazy);
    LazyGraded d_h = lazy_differential(h_psi);
    LazyGraded h_d = lazy_inclusion_homotopy(d_psi, form);
    LazyGraded proj = lazy_projection(lazy);
    for (ExtSubset s = 0; s < (1u << n); ++s) {
        IntVec alpha((size_t)n, -window);
        while (true) {
            LaurentElement lhs = d_h.eval(s, alpha) + h_d.eval(s, alpha);
            LaurentElement rhs = lazy.eval(s, alpha) - proj.eval(s, alpha);
            if (lhs != rhs) {
                if (counterexample) {
                    *counterexample = "S=" + subset_str(s) + " alpha=" + print_int_vec(alpha) +
                                      " lhs=" + lhs.str() + " rhs=" + rhs.str();
                }
                return false;
            }
            int k = 0;
            while (k < n && alpha[(size_t)k] == window) {
                alpha[(size_t)k] = -window;
                ++k;
            }
            if (k == n) break;
            ++alpha[(size_t)k];
        }
    }
    return true;
}

}  // namespace

CheckResult check_novikov_suite(std::uint64_t seed, int cases, const Rational& prec) {
    CheckResult r;
    Rng rng(seed);
    // ultrametric and multiplicativity
    for (int i = 0; i < cases && r.pass; ++i) {
        NovikovScalar x = rng.novikov(), y = rng.novikov();
        Val vx = x.val(), vy = y.val(), vsum = (x + y).val();
        if (!(vsum >= Val::min(vx, vy)))
            r.fail("ultrametric: val(x+y) < min at x=" + x.str() + " y=" + y.str());
        if (vx != vy && vsum != Val::min(vx, vy))
            r.fail("ultrametric equality case at x=" + x.str() + " y=" + y.str());
        if (!x.is_zero() && !y.is_zero() && (x * y).val() != vx + vy)
            r.fail("multiplicativity at x=" + x.str() + " y=" + y.str());
    }
    r.note("ultrametric + multiplicativity: " + std::to_string(cases) + " cases");
    // ring axioms
    for (int i = 0; i < cases && r.pass; ++i) {
        NovikovScalar x = rng.novikov(), y = rng.novikov(), z = rng.novikov();
        if ((x + y) + z != x + (y + z)) r.fail("add assoc");
        if (x + y != y + x) r.fail("add comm");
        if ((x * y) * z != x * (y * z)) r.fail("mul assoc");
        if (x * y != y * x) r.fail("mul comm");
        if (x * (y + z) != x * y + x * z) r.fail("distributivity");
        if (x + NovikovScalar::zero() != x) r.fail("add identity");
        if (x * NovikovScalar::one() != x) r.fail("mul identity");
    }
    r.note("ring axioms: " + std::to_string(cases) + " cases");
    // truncated inverses
    for (int i = 0; i < cases && r.pass; ++i) {
        NovikovScalar x = rng.nonzero_novikov();
        Precision p(prec);
        NovikovScalar y = x.invert(p);
        if (!val_at_least((x * y - NovikovScalar::one()).val(), prec))
            r.fail("inverse contract at x=" + x.str());
        Rational limit = prec - x.val().finite();
        for (auto& t : y.terms())
            if (t.first >= limit) r.fail("inverse carries an over-precision term at x=" + x.str());
    }
    r.note("truncated inverses: " + std::to_string(cases) + " cases");
    // pinned examples
    {
        NovikovScalar a = NovikovScalar::parse("1*T^(1/2) + 2*T^(2)");
        if (a.val() != Val(Rational(1, 2))) r.fail("val(T^(1/2)+2T^2)");
        if (!NovikovScalar::zero().val().is_infinite()) r.fail("val 0 = +inf");
        if (NovikovScalar::constant(Rational(5)).val() != Val(Rational(0))) r.fail("val 5 = 0");
        NovikovScalar t = NovikovScalar::monomial(Rational(1), Rational(1));
        if (!(t + (-t)).is_zero()) r.fail("cancellation");
        if ((NovikovScalar::one() + t) + t != NovikovScalar::parse("1 + 2*T^(1)"))
            r.fail("(1+T)+(T)");
        NovikovScalar t2 = NovikovScalar::monomial(Rational(2), Rational(1));
        if (t2.invert(Precision(prec)) != NovikovScalar::monomial(Rational(-2), Rational(1)))
            r.fail("monomial inverse");
        NovikovScalar one_plus_t = NovikovScalar::one() + t;
        if (one_plus_t.invert(Precision::exponent(3)) != NovikovScalar::parse("1 - 1*T^(1) + 1*T^(2)"))
            r.fail("invert(1+T) at E=3");
        bool raised = false;
        try {
            NovikovScalar::zero().invert(Precision(prec));
        } catch (const Error& e) {
            raised = e.code() == errc::zero_division;
        }
        if (!raised) r.fail("inversion of zero must signal a domain error");
        if ((NovikovScalar::one() + NovikovScalar::monomial(Rational(5), Rational(1)))
                .truncate(Precision::exponent(3)) != NovikovScalar::one())
            r.fail("truncate drops T^5 at E=3");
        if (t2.truncate(Precision::exponent(3)) != t2) r.fail("truncate keeps T^2 at E=3");
        NovikovScalar t3 = NovikovScalar::monomial(Rational(3), Rational(1));
        if (!t3.truncate(Precision::exponent(3)).is_zero()) r.fail("truncate boundary is exclusive");
        r.note("pinned examples: 10 cases");
    }
    return r;
}

CheckResult check_valuation_suite(std::uint64_t seed, int samples) {
    CheckResult r;
    Rng rng(seed);
    // vertex formula against interior sampling
    for (int n = 1; n <= 2 && r.pass; ++n) {
        Polytope p = n == 1 ? interval(Rational(-1), Rational(2)) : box2(Rational(0), Rational(1), Rational(-1), Rational(1));
        AffinoidContext ctx(p, RatVec((size_t)n, Rational(0)));
        for (int c = 0; c < 10 && r.pass; ++c) {
            LaurentElement f = rng.laurent(n, 4);
            if (f.is_zero()) continue;
            Val vp = val_P(f, ctx);
            Val vertex_min = Val::infinity();
            for (auto& v : p.vertices())
                vertex_min = Val::min(vertex_min, val_at_point(f, v, ctx.basepoint));
            if (vp != vertex_min) r.fail("val_P != min over vertices at f=" + f.str());
            const auto& verts = p.vertices();
            for (int s = 0; s < samples; ++s) {
                // random rational convex combination of vertices
                std::vector<Rational> weights(verts.size());
                Rational total(0);
                for (auto& w : weights) {
                    w = Rational(rng.range(0, 6), 1);
                    total += w;
                }
                if (total.is_zero()) weights[0] = total = Rational(1);
                RatVec point((size_t)n, Rational(0));
                for (size_t i = 0; i < verts.size(); ++i)
                    for (size_t k = 0; k < (size_t)n; ++k)
                        point[k] += verts[i][k] * (weights[i] / total);
                if (!(val_at_point(f, point, ctx.basepoint) >= vp))
                    r.fail("sampled point valuation below val_P at f=" + f.str());
            }
        }
    }
    r.note("vertex formula vs sampling: " + std::to_string(samples) + " points per element");
    // monotonicity under inclusion
    for (int c = 0; c < 100 && r.pass; ++c) {
        Polytope outer = rng.interval();
        Rational lo = outer.support_min({1}), hi = outer.support_max({1});
        Rational quarter = (hi - lo) / Rational(4);
        Polytope inner = interval(lo + quarter, hi - quarter);
        AffinoidContext octx(outer, {Rational(0)}), ictx(inner, {Rational(0)});
        LaurentElement f = rng.laurent(1, 4);
        if (!(val_P(f, ictx) >= val_P(f, octx))) r.fail("monotonicity at f=" + f.str());
    }
    r.note("monotonicity under inclusion: 100 cases");
    // submultiplicativity with the mandatory strict witness
    {
        AffinoidContext ctx(interval(Rational(0), Rational(1)), {Rational(0)});
        LaurentElement f = z_monomial(1, 0, 1);
        LaurentElement g = z_monomial(1, 0, -1).scale(NovikovScalar::monomial(Rational(1), Rational(1)));
        Val vf = val_P(f, ctx), vg = val_P(g, ctx), vfg = val_P(f * g, ctx);
        if (vf != Val(Rational(0)) || vg != Val(Rational(0)) || vfg != Val(Rational(1)))
            r.fail("strict submultiplicativity witness f=z, g=T z^-1 over [0,1]");
        else
            r.note("strict witness: val(fg)=1 > val(f)+val(g)=0");
    }
    for (int c = 0; c < 100 && r.pass; ++c) {
        Polytope p = rng.interval();
        AffinoidContext ctx(p, {Rational(0)});
        LaurentElement f = rng.laurent(1), g = rng.laurent(1);
        if (!(val_P(f * g, ctx) >= val_P(f, ctx) + val_P(g, ctx)))
            r.fail("submultiplicativity at f=" + f.str() + " g=" + g.str());
    }
    r.note("submultiplicativity: 100 cases");
    // rebase preserves val, and is inverted by rebasing back
    for (int c = 0; c < 100 && r.pass; ++c) {
        Polytope p = rng.box(2);
        RatVec q{rng.rational(), rng.rational()};
        RatVec q2{rng.rational(), rng.rational()};
        AffinoidContext ctx(p, q), ctx2(p, q2);
        LaurentElement f = rng.laurent(2);
        LaurentElement moved = rebase(f, ctx, q2);
        if (val_P(moved, ctx2) != val_P(f, ctx)) r.fail("rebase val preservation");
        if (rebase(moved, ctx2, q) != f) r.fail("rebase round trip");
    }
    r.note("rebase val preservation + round trip: 100 cases");
    // a single-point polytope gives a genuine (additive) valuation
    for (int c = 0; c < 100 && r.pass; ++c) {
        Rational pt = rng.rational();
        Polytope p = interval(pt, pt);
        AffinoidContext ctx(p, {Rational(0)});
        LaurentElement f = rng.laurent(1), g = rng.laurent(1);
        if (f.is_zero() || g.is_zero()) continue;
        if (val_P(f * g, ctx) != val_P(f, ctx) + val_P(g, ctx))
            r.fail("point polytope additivity at f=" + f.str() + " g=" + g.str());
    }
    r.note("single-point additivity: 100 cases");
    // pinned examples
    {
        AffinoidContext unit(interval(Rational(0), Rational(1)), {Rational(0)});
        if (val_P(z_monomial(1, 0, 1), unit) != Val(Rational(0))) r.fail("val_P(z) over [0,1]");
        LaurentElement f = z_monomial(1, 0, 1) +
                           z_monomial(1, 0, -1).scale(NovikovScalar::monomial(Rational(1), Rational(1)));
        if (val_P(f, unit) != Val(Rational(0))) r.fail("val_P(z + T z^-1) over [0,1]");
        AffinoidContext half(interval(Rational(0), Rational(1, 2)), {Rational(0)});
        LaurentElement g = z_monomial(1, 0, -1).scale(NovikovScalar::monomial(Rational(1), Rational(1)));
        if (val_P(g, half) != Val(Rational(1, 2))) r.fail("val_P(T z^-1) over [0,1/2]");
        // restriction drops the far term
        LaurentElement h = LaurentElement::one(1) +
                           z_monomial(1, 0, 1).scale(NovikovScalar::monomial(Rational(5), Rational(1)));
        LaurentElement restricted = restrict(h, unit, half, Precision::exponent(3));
        if (restricted != LaurentElement::one(1)) r.fail("restrict drops val>=3 term");
        bool raised = false;
        try {
            restrict(h, unit, AffinoidContext(interval(Rational(-1), Rational(2)), {Rational(0)}),
                     Precision::exponent(3));
        } catch (const Error& e) {
            raised = e.code() == errc::not_a_subset;
        }
        if (!raised) r.fail("restrict to a non-subset must raise NotASubset");
        // rebase formula
        LaurentElement z = z_monomial(1, 0, 1);
        LaurentElement moved = rebase(z, unit, {Rational(1, 2)});
        if (moved != z.scale(NovikovScalar::monomial(Rational(1, 2), Rational(1))))
            r.fail("rebase z picks up T^(1/2)");
        // convergence certificate
        std::vector<std::pair<Rational, Rational>> pairs;
        for (int i = 1; i <= 5; ++i) pairs.push_back({Rational(i), Rational(i)});
        auto cert = convergence_certificate(Rational(1), Rational(1, 4), pairs);
        if (!cert.convergent || cert.slope != Rational(1, 2)) r.fail("certificate delta=1 eps=1/4");
        if (convergence_certificate(Rational(1), Rational(1, 2), pairs).convergent)
            r.fail("certificate boundary eps=1/2 must fail (strict)");
        raised = false;
        try {
            convergence_certificate(Rational(0), Rational(1, 4), pairs);
        } catch (const Error& e) {
            raised = e.code() == errc::nonpositive_delta;
        }
        if (!raised) r.fail("delta=0 must raise NonpositiveDelta");
        r.note("pinned examples: 9 cases");
    }
    return r;
}

CheckResult check_inclusion_retraction(std::uint64_t seed, int ops, int window) {
    CheckResult r;
    Rng rng(seed);
    for (int i = 0; i < ops && r.pass; ++i) {
        int n = (i % 2) + 1;
        GradedOperator psi = rng.graded_operator(n, 2, 2, 2);
        std::string ce;
        if (!retraction_identity_holds(psi, window, HomotopyForm::staircase, &ce))
            r.fail("staircase retraction identity: " + ce);
    }
    r.note("staircase retraction identity on window: " + std::to_string(ops) + " operators");
    // degree-0 form of the retraction: h(d psi) = psi - projection
    for (int i = 0; i < 10 && r.pass; ++i) {
        int n = (i % 2) + 1;
        FiniteOperator phi = rng.finite_operator(n, 2, 2);
        GradedOperator psi = GradedOperator::single(0, phi);
        LazyGraded h_d = lazy_inclusion_homotopy(lazy_differential(lazy_of(psi)), HomotopyForm::staircase);
        for (std::int64_t a = -window; a <= window && r.pass; ++a) {
            IntVec alpha((size_t)n, 0);
            alpha[0] = a;
            LaurentElement lhs = h_d.eval(0, alpha);
            LaurentElement rhs = psi.component(0).apply(alpha) - projection_eval(psi, alpha);
            if (lhs != rhs) r.fail("degree-0 retraction at alpha=" + print_int_vec(alpha));
        }
    }
    r.note("degree-0 retraction h(d psi) = psi - pi(psi): 10 operators");
    // continuity of h over nested boxes
    for (int i = 0; i < 50 && r.pass; ++i) {
        int n = (i % 2) + 1;
        Polytope outer = n == 1 ? rng.interval() : rng.box(2);
        // shrink every axis strictly
        std::vector<Halfspace> cs;
        for (auto& h : outer.constraints()) cs.push_back(Halfspace{h.normal, h.offset + Rational(1, 8)});
        Polytope inner = Polytope::from_halfspaces(n, cs);
        AffinoidContext from(outer, RatVec((size_t)n, Rational(0)));
        AffinoidContext to(inner, RatVec((size_t)n, Rational(0)));
        FiniteOperator phi = rng.finite_operator(n, 2, 2);
        Val v = op_val(phi, from, to);
        for (int j = 1; j <= n && r.pass; ++j) {
            GradedOperator psi = GradedOperator::single(1u << (j - 1), phi);
            for (int t = 0; t < 8 && r.pass; ++t) {
                IntVec alpha = rng.exponent(n, 4);
                LaurentElement h_val =
                    inclusion_homotopy_eval(psi, 0, alpha, HomotopyForm::plain);
                Val lhs = val_P(h_val, to);
                Val rhs = v + Val(monomial_val(alpha, from));
                if (!(lhs >= rhs))
                    r.fail("continuity bound val(h_j psi(z^alpha)) at alpha=" + print_int_vec(alpha));
            }
        }
    }
    r.note("continuity of h over nested boxes: 50 operators");
    // pinned evaluation examples
    {
        GradedOperator psi1 =
            GradedOperator::single(1, FiniteOperator::elementary({0}, {0}, NovikovScalar::one()));
        LaurentElement e1 = inclusion_homotopy_eval(psi1, 0, {-1});
        if (e1 != LaurentElement::zero(1) - z_monomial(1, 0, -1)) r.fail("h(e00) at alpha=-1");
        GradedOperator psi2 =
            GradedOperator::single(1, FiniteOperator::elementary({1}, {1}, NovikovScalar::one()));
        if (inclusion_homotopy_eval(psi2, 0, {3}) != z_monomial(1, 0, 3)) r.fail("h(e11) at alpha=3");
        if (!inclusion_homotopy_eval(psi2, 0, {0}).is_zero()) r.fail("h at alpha_j=0 vanishes");
        GradedOperator proj_ex =
            GradedOperator::single(0, FiniteOperator::elementary({1}, {0}, NovikovScalar::one()));
        if (projection_eval(proj_ex, {2}) != z_monomial(1, 0, 3)) r.fail("projection of e10 at 2");
        r.note("pinned homotopy evaluations: 4 cases");
    }
    return r;
}

CheckResult check_homotopy_form_comparison(std::uint64_t seed, int ops, int window) {
    CheckResult r;
    Rng rng(seed);
    int plain_failures = 0;
    for (int i = 0; i < ops; ++i) {
        GradedOperator psi = rng.graded_operator(2, 2, 2, 2);
        if (!retraction_identity_holds(psi, window, HomotopyForm::plain, nullptr)) ++plain_failures;
        std::string ce;
        if (!retraction_identity_holds(psi, window, HomotopyForm::staircase, &ce))
            r.fail("staircase form must hold: " + ce);
    }
    if (plain_failures > 0)
        r.note("plain sum h = sum h_j (x) iota_j: FAILS the retraction identity on " +
               std::to_string(plain_failures) + "/" + std::to_string(ops) +
               " samples in n=2; staircase form selected");
    else
        r.note("plain sum h = sum h_j (x) iota_j: holds on all samples; plain form acceptable");
    return r;
}

CheckResult check_disjoint_vanishing(std::uint64_t seed, int pairs, int ops_per_pair,
                                     const Rational& cutoff) {
    CheckResult r;
    Rng rng(seed);
    Precision prec(cutoff);
    for (int p = 0; p < pairs && r.pass; ++p) {
        // separated intervals, alternating orientation
        Rational gap = Rational(rng.range(1, 3));
        Rational a0 = Rational(rng.range(0, 2)), len0 = Rational(rng.range(1, 2));
        Rational b0 = a0 + len0;
        Rational a1 = b0 + gap, b1 = a1 + Rational(rng.range(1, 2));
        Polytope left = interval(a0, b0), right = interval(a1, b1);
        bool from_is_right = (p % 2) == 0;
        AffinoidContext from(from_is_right ? right : left, {Rational(0)});
        AffinoidContext to(from_is_right ? left : right, {Rational(0)});
        for (int i = 0; i < ops_per_pair && r.pass; ++i) {
            GradedOperator psi = rng.graded_operator(1, 2, 2, 2);
            GradedOperator lhs = differential(disjoint_homotopy(psi, from, to, prec)) +
                                 disjoint_homotopy(differential(psi), from, to, prec);
            Val residual = graded_op_val(lhs - psi, from, to);
            if (!val_at_least(residual, cutoff))
                r.fail("disjoint null-homotopy residual val " + residual.str() + " < " +
                       cutoff.str() + " on pair " + from.polytope.vertices_str() + " / " +
                       to.polytope.vertices_str());
        }
    }
    r.note("disjoint null-homotopy at E=" + cutoff.str() + ": " + std::to_string(pairs) + " pairs x " +
           std::to_string(ops_per_pair) + " operators");
    // pinned separation and truncation counts
    {
        AffinoidContext from(interval(Rational(1), Rational(2)), {Rational(0)});
        AffinoidContext to(interval(Rational(-2), Rational(-1)), {Rational(0)});
        SeparationData sep = find_axis_separation(from, to);
        if (sep.gap != Rational(2)) r.fail("separation gap of [1,2]/[-2,-1] should be 2");
        GradedOperator psi =
            GradedOperator::single(1, FiniteOperator::elementary({0}, {0}, NovikovScalar::one()));
        GradedOperator h = disjoint_homotopy(psi, from, to, Precision::exponent(7));
        size_t terms = h.component(0).entries().size();
        if (terms != 3)
            r.fail("series truncation should keep i=1,2,3 (kept " + std::to_string(terms) + ")");
        bool raised = false;
        try {
            AffinoidContext same(interval(Rational(0), Rational(1)), {Rational(0)});
            find_axis_separation(same, same);
        } catch (const Error& e) {
            raised = e.code() == errc::not_separated;
        }
        if (!raised) r.fail("equal contexts must raise NotSeparated");
        r.note("pinned separation data: 3 cases");
    }
    return r;
}

CheckResult check_duality(std::uint64_t seed, int functionals, int ops) {
    CheckResult r;
    Rng rng(seed);
    // eps o delta = id
    for (int i = 0; i < functionals && r.pass; ++i) {
        Functional rho(1);
        int k = (int)rng.range(0, 3);
        for (int t = 0; t < k; ++t) rho.add_entry(rng.exponent(1, 4), rng.nonzero_novikov(2));
        if (!(eps(delta(rho)) == rho)) r.fail("eps(delta(rho)) != rho at rho=" + rho.str());
    }
    r.note("eps o delta = id: " + std::to_string(functionals) + " functionals");
    // d_- hbar + hbar d_- = id - delta eps, graded, n = 1, exact
    for (int i = 0; i < ops && r.pass; ++i) {
        GradedOperator psi = rng.graded_operator(1, 2, 2, 3);
        GradedOperator lhs = dual_differential(hbar(psi)) + hbar(dual_differential(psi));
        GradedOperator projection(1);
        auto top = psi.components().find(1u);
        if (top != psi.components().end()) projection.add_component(1u, delta(eps(top->second)));
        GradedOperator rhs = psi - projection;
        if (!(lhs == rhs)) r.fail("duality homotopy identity at psi=" + psi.str());
    }
    r.note("dual-differential homotopy identity: " + std::to_string(ops) + " operators");
    // trace linearity and conjugation invariance
    for (int i = 0; i < 50 && r.pass; ++i) {
        FiniteOperator phi = rng.finite_operator(1, 3, 3);
        NovikovScalar c = rng.novikov(2);
        if (trace(phi.scale(c)) != trace(phi) * c) r.fail("trace linearity");
        if (trace(shift_conjugate(phi, 1)) != trace(phi)) r.fail("trace conjugation invariance");
        // commutator with a multiplication operator, restricted to the
        // sources and images the composition touches
        IntVec beta = rng.exponent(1, 2);
        std::vector<IntVec> window_sources;
        for (std::int64_t a = -8; a <= 8; ++a) window_sources.push_back({a});
        FiniteOperator mult = multiplication_operator(
            LaurentElement::monomial(beta, NovikovScalar::one()), window_sources);
        NovikovScalar commutator_trace = trace(compose(mult, phi) - compose(phi, mult));
        if (!commutator_trace.is_zero()) r.fail("trace of commutator with z^beta");
    }
    r.note("trace linearity + commutator vanishing: 50 cases");
    // pinned examples
    {
        if (trace(FiniteOperator::elementary({2}, {2}, NovikovScalar::one())) != NovikovScalar::one())
            r.fail("trace e22 = 1");
        if (!trace(FiniteOperator::elementary({1}, {2}, NovikovScalar::one())).is_zero())
            r.fail("trace of off-diagonal vanishes");
        FiniteOperator mixed = FiniteOperator::elementary({0}, {0}, NovikovScalar::monomial(Rational(1), Rational(1)));
        mixed.add_entry({3}, {3}, NovikovScalar::one());
        if (trace(mixed) != NovikovScalar::parse("1 + 1*T^(1)")) r.fail("trace T e00 + e33");
        Functional rho3(1);
        rho3.add_entry({3}, NovikovScalar::one());
        if (!(eps(FiniteOperator::elementary({0}, {3}, NovikovScalar::one())) == rho3))
            r.fail("eps(e03) = rho3");
        Functional rho0(1);
        rho0.add_entry({0}, NovikovScalar::one());
        if (!(eps(FiniteOperator::elementary({1}, {1}, NovikovScalar::one())) == rho0))
            r.fail("eps(e11) = rho0");
        if (!(delta(rho3) == FiniteOperator::elementary({0}, {3}, NovikovScalar::one())))
            r.fail("delta(rho3) = e03");
        FiniteOperator hb = hbar_axis(FiniteOperator::elementary({2}, {0}, NovikovScalar::one()), 1);
        FiniteOperator expected = FiniteOperator::elementary({2}, {0}, NovikovScalar::one());
        expected.add_entry({1}, {-1}, NovikovScalar::one());
        if (!(hb == expected)) r.fail("hbar(e20) = e20 + e1,-1");
        if (!hbar_axis(FiniteOperator::elementary({0}, {5}, NovikovScalar::one()), 1).is_zero())
            r.fail("hbar vanishes on image grade 0");
        Functional rho(1);
        rho.add_entry({2}, rng.nonzero_novikov(2));
        if (!hbar_axis(delta(rho), 1).is_zero()) r.fail("hbar(delta(rho)) = 0");
        r.note("pinned trace/eps/delta/hbar examples: 9 cases");
    }
    return r;
}

CheckResult check_tate_two_term(std::uint64_t seed, int inputs, const Rational& cutoff) {
    CheckResult r;
    Rng rng(seed);
    Precision prec(cutoff);
    for (int i = 0; i < inputs && r.pass; ++i) {
        int n = (i % 2) + 1;
        Polytope base = n == 1 ? rng.interval() : rng.box(2);
        int axis = (int)rng.range(0, n - 1);
        IntVec u((size_t)n, 0);
        u[(size_t)axis] = 1;
        Rational lo = base.support_min(u), hi = base.support_max(u);
        Rational lambda = lo + (hi - lo) * Rational(rng.range(1, 3), 4);
        AffinoidContext base_ctx(base, RatVec((size_t)n, Rational(0)));
        TwoTermCover cover = make_two_term(base_ctx, SplitDatum{u, lambda});
        if (!cover.plus || !cover.minus || !cover.overlap) continue;
        AffinoidContext plus_ctx(*cover.plus, base_ctx.basepoint);
        AffinoidContext minus_ctx(*cover.minus, base_ctx.basepoint);
        AffinoidContext overlap_ctx(*cover.overlap, base_ctx.basepoint);

        // degree 1: d(h F) = F at precision
        LaurentElement f = truncate_P(rng.laurent(n, 4), overlap_ctx, prec);
        auto [on_plus, on_minus] = tate_homotopy_deg1(cover, f, prec);
        // d(h F) over the overlap: on_plus - on_minus
        Val back = val_P((on_plus - on_minus) - f, overlap_ctx);
        if (!val_at_least(back, cutoff)) r.fail("two-term: d(hF) != F at precision");

        // non-negative valuation of the degree-1 homotopy, exact
        Val vin = val_P(f, overlap_ctx);
        if (!(val_P(on_plus, plus_ctx) >= vin) || !(val_P(on_minus, minus_ctx) >= vin))
            r.fail("two-term homotopy valuation drops on the degree-1 leg");

        // degree 0: iota(aug) + h(d c) = c at precision
        LaurentElement cp = truncate_P(rng.laurent(n, 4), plus_ctx, prec);
        LaurentElement cm = truncate_P(rng.laurent(n, 4), minus_ctx, prec);
        LaurentElement glued = tate_homotopy_deg0(cover, cp, cm, prec);
        Val vglued = val_P(glued, base_ctx);
        Val vcin = Val::min(val_P(cp, plus_ctx), val_P(cm, minus_ctx));
        if (!(vglued >= vcin)) r.fail("two-term homotopy valuation drops on the degree-0 leg");
        LaurentElement dc = cp - cm;  // differential on the overlap
        auto [hp, hm] = tate_homotopy_deg1(cover, dc, prec);
        Val defect_plus = val_P(glued + hp - cp, plus_ctx);
        Val defect_minus = val_P(glued + hm - cm, minus_ctx);
        if (!val_at_least(defect_plus, cutoff) || !val_at_least(defect_minus, cutoff))
            r.fail("two-term: iota(aug) + h(dc) != c at precision");

        // naturality under shrinking the base
        std::vector<Halfspace> cs;
        for (auto& h : base.constraints()) cs.push_back(Halfspace{h.normal, h.offset + Rational(1, 16)});
        Polytope smaller = Polytope::from_halfspaces(n, cs);
        Rational slo = smaller.support_min(u), shi = smaller.support_max(u);
        if (slo < lambda && lambda < shi) {
            TwoTermCover small_cover = make_two_term(AffinoidContext(smaller, base_ctx.basepoint),
                                                     SplitDatum{u, lambda});
            auto [sp, sm] = tate_homotopy_deg1(small_cover, f, prec);
            AffinoidContext small_plus(*small_cover.plus, base_ctx.basepoint);
            AffinoidContext small_minus(*small_cover.minus, base_ctx.basepoint);
            if (!val_at_least(val_P(sp - on_plus, small_plus), cutoff) ||
                !val_at_least(val_P(sm - on_minus, small_minus), cutoff))
                r.fail("two-term homotopy does not commute with restriction at precision");
        }
    }
    r.note("two-term identity + valuation + naturality at E=" + cutoff.str() + ": " +
           std::to_string(inputs) + " inputs");
    // pinned split examples
    {
        LaurentElement f = z_monomial(1, 0, 1) + z_monomial(1, 0, -1);
        auto [p1, m1] = tate_split(f, 0);
        if (p1 != z_monomial(1, 0, 1) || m1 != z_monomial(1, 0, -1)) r.fail("tate_split(z + z^-1)");
        auto [p2, m2] = tate_split(LaurentElement::one(1), 0);
        if (!p2.is_zero() || m2 != LaurentElement::one(1)) r.fail("constants split to the minus side");
        auto [p3, m3] = tate_split(LaurentElement::zero(1), 0);
        if (!p3.is_zero() || !m3.is_zero()) r.fail("tate_split(0)");
        // [-1,1] split at 0: h(z + z^-1) = (z, -z^-1), glue back
        AffinoidContext ctx(interval(Rational(-1), Rational(1)), {Rational(0)});
        TwoTermCover cover = make_two_term(ctx, SplitDatum{{1}, Rational(0)});
        auto [on_plus, on_minus] = tate_homotopy_deg1(cover, f, Precision::exponent(10));
        if (on_plus != z_monomial(1, 0, 1) || on_minus != LaurentElement::zero(1) - z_monomial(1, 0, -1))
            r.fail("two-term homotopy of z + z^-1 over [-1,1]");
        LaurentElement glued = tate_homotopy_deg0(
            cover, z_monomial(1, 0, 1) + LaurentElement::one(1), z_monomial(1, 0, -1),
            Precision::exponent(10));
        if (glued != LaurentElement::one(1)) r.fail("(z+1, z^-1) glues to 1");
        r.note("pinned split examples: 5 cases");
    }
    return r;
}

CheckResult check_cech_acyclicity(std::uint64_t seed, const Rational& cutoff) {
    CheckResult r;
    Rng rng(seed);
    Precision prec(cutoff);

    // the 3-interval cover of [0,1]
    Cover cover1 = Cover::build(interval(Rational(0), Rational(1)), {"a", "b", "c"},
                                {interval(Rational(0), Rational(3, 8)),
                                 interval(Rational(1, 4), Rational(3, 4)),
                                 interval(Rational(5, 8), Rational(1))});
    CechComplex complex1 = CechComplex::build(cover1, {Rational(0)});
    // the 4-box cover of [0,1]^2
    Cover cover2 = Cover::build(
        box2(Rational(0), Rational(1), Rational(0), Rational(1)), {"sw", "se", "nw", "ne"},
        {box2(Rational(0), Rational(5, 8), Rational(0), Rational(5, 8)),
         box2(Rational(3, 8), Rational(1), Rational(0), Rational(5, 8)),
         box2(Rational(0), Rational(5, 8), Rational(3, 8), Rational(1)),
         box2(Rational(3, 8), Rational(1), Rational(3, 8), Rational(1))});
    CechComplex complex2 = CechComplex::build(cover2, {Rational(0), Rational(0)});

    for (const CechComplex* complex : {&complex1, &complex2}) {
        const int n = complex->cover().base().dim();
        // d o d = 0 on random cochains
        for (int i = 0; i < 20 && r.pass; ++i) {
            CechCochain c;
            c.degree = 0;
            c.precision = Precision(cutoff + Rational(4));
            for (size_t p = 0; p < complex->cover().size(); ++p)
                c.values.emplace(Face{p}, rng.laurent(n, 3, 2));
            CechCochain dd = cech_differential(*complex, cech_differential(*complex, c));
            for (auto& [face, value] : dd.values)
                if (!val_at_least(val_P(value, complex->face_context(face)), cutoff))
                    r.fail("d o d != 0 at precision on face " + complex->face_name(face));
        }
        // reconstruct o augment = id at precision
        for (int i = 0; i < 10 && r.pass; ++i) {
            LaurentElement f = rng.laurent(n, 4, 2);
            CechCochain c = augment(*complex, f, prec);
            LaurentElement back = h0_reconstruct(*complex, c, prec);
            AffinoidContext base_ctx(complex->cover().base(), complex->basepoint());
            if (!val_at_least(val_P(back - f, base_ctx), cutoff))
                r.fail("h0_reconstruct(augment(f)) != f at precision, f=" + f.str());
        }
        // augment o reconstruct = id at precision on noisy cocycles
        for (int i = 0; i < 10 && r.pass; ++i) {
            LaurentElement f = rng.laurent(n, 3, 2);
            CechCochain c = augment(*complex, f, prec);
            for (auto& [face, value] : c.values) {
                LaurentElement raw = rng.laurent(n, 1, 1);
                if (raw.is_zero()) continue;
                // push the perturbation strictly beyond the cutoff on its face
                Rational lift = cutoff + Rational(2);
                Val raw_val = val_P(raw, complex->face_context(face));
                if (raw_val.finite().sign() < 0) lift = lift - raw_val.finite();
                value = value + raw.scale(NovikovScalar::monomial(lift, Rational(1)));
            }
            LaurentElement global = h0_reconstruct(*complex, c, prec);
            CechCochain back = augment(*complex, global, prec);
            for (auto& face : complex->faces()) {
                if (face.size() != 1) continue;
                LaurentElement diff = back.value_or_zero(face, n) - c.value_or_zero(face, n);
                if (!val_at_least(val_P(diff, complex->face_context(face)), cutoff))
                    r.fail("augment(h0_reconstruct(c)) != c at precision on face " +
                           complex->face_name(face));
            }
        }
    }
    r.note("dd=0, reconstruct round trips on the interval and box covers");

    // augmented cochains are cocycles
    {
        LaurentElement f = rng.laurent(1, 3, 2);
        CechCochain c = augment(complex1, f, prec);
        if (!val_at_least(cocycle_defect(complex1, c), cutoff)) r.fail("d(augment f) != 0");
    }

    // sampled degree-1 acyclicity over both covers (comparison map surjective
    // on sampled classes): coboundaries get explicit degree-0 preimages
    for (const CechComplex* complex : {&complex1, &complex2}) {
        const int n = complex->cover().base().dim();
        for (int i = 0; i < 10 && r.pass; ++i) {
            CechCochain b;
            b.degree = 0;
            b.precision = prec;
            for (size_t p = 0; p < complex->cover().size(); ++p)
                b.values.emplace(Face{p}, rng.laurent(n, 3, 2));
            CechCochain c = cech_differential(*complex, b);
            CechCochain solved = h1_witness(*complex, c, prec);
            CechCochain back = cech_differential(*complex, solved);
            for (auto& face : complex->faces()) {
                if (face.size() != 2) continue;
                LaurentElement diff = back.value_or_zero(face, n) - c.value_or_zero(face, n);
                if (!val_at_least(val_P(diff, complex->face_context(face)), cutoff))
                    r.fail("degree-1 witness misses on face " + complex->face_name(face));
            }
        }
    }
    r.note("sampled degree-1 acyclicity witnesses: 10 classes per cover");

    // Laurent contraction identity for one and two splits
    for (int trial = 0; trial < 10 && r.pass; ++trial) {
        AffinoidContext base_ctx(box2(Rational(0), Rational(1), Rational(0), Rational(1)),
                                 {Rational(0), Rational(0)});
        std::vector<SplitDatum> splits{SplitDatum{{1, 0}, Rational(rng.range(1, 3), 4)},
                                       SplitDatum{{0, 1}, Rational(rng.range(1, 3), 4)}};
        if (trial % 2 == 0) splits.pop_back();  // single split half the time
        LaurentCechData data = make_laurent_complex(base_ctx, splits);
        for (int degree = 0; degree <= (int)(2 * data.splits.size()) - 1 && r.pass; ++degree) {
            CechCochain c;
            c.degree = degree;
            c.precision = prec;
            for (auto& face : data.complex.faces()) {
                if ((int)face.size() - 1 != degree) continue;
                c.values.emplace(face, truncate_P(rng.laurent(2, 3, 2),
                                                  data.complex.face_context(face), prec));
            }
            CechCochain h_c = laurent_homotopy(data, c, prec);
            CechCochain d_c = cech_differential(data.complex, c);
            CechCochain h_dc = laurent_homotopy(data, d_c, prec);
            CechCochain d_hc = degree > 0 ? cech_differential(data.complex, h_c) : CechCochain{};
            for (auto& face : data.complex.faces()) {
                if ((int)face.size() - 1 != degree) continue;
                LaurentElement lhs = h_dc.value_or_zero(face, 2);
                if (degree > 0) lhs = lhs + d_hc.value_or_zero(face, 2);
                LaurentElement rhs = c.value_or_zero(face, 2);
                if (degree == 0) {
                    LaurentElement glob = laurent_contract(data, c, prec);
                    rhs = rhs - truncate_P(glob, data.complex.face_context(face), prec);
                }
                if (!val_at_least(val_P(lhs - rhs, data.complex.face_context(face)), cutoff))
                    r.fail("Laurent contraction identity fails on face " +
                           data.complex.face_name(face) + " degree " + std::to_string(degree));
            }
        }
    }
    r.note("Laurent contraction identity (1 and 2 splits) at E=" + cutoff.str());

    // refinement of the 2-interval cover: splits at 1/4, 3/8, 5/8, 3/4 region
    {
        auto splits = laurent_refinement(cover1);
        if (splits.size() != 4) r.fail("refinement of the 3-interval cover should cut 4 facets");
        Cover whole = Cover::build(interval(Rational(0), Rational(1)), {"all"},
                                   {interval(Rational(0), Rational(1))});
        if (!laurent_refinement(whole).empty()) r.fail("self-cover needs no splits");
    }

    // error paths
    {
        bool raised = false;
        try {
            Cover::build(interval(Rational(0), Rational(1)), {"a", "b"},
                         {interval(Rational(0), Rational(1, 4)),
                          interval(Rational(3, 4), Rational(1))});
        } catch (const Error& e) {
            raised = e.code() == errc::not_a_cover;
        }
        if (!raised) r.fail("non-covering pieces must raise NotACover");
        raised = false;
        try {
            CechCochain c;
            c.degree = 0;
            c.precision = prec;
            c.values.emplace(Face{0}, LaurentElement::one(1));
            c.values.emplace(Face{1}, LaurentElement::zero(1));
            c.values.emplace(Face{2}, LaurentElement::one(1));
            h0_reconstruct(complex1, c, prec);
        } catch (const Error& e) {
            raised = e.code() == errc::not_a_cocycle;
        }
        if (!raised) r.fail("mismatched overlap values must raise NotACocycle");
        r.note("error paths NotACover / NotACocycle: 2 cases");
    }

    return r;
}

namespace {

void run_locality_configurations(CheckResult& r, const Precision& prec) {
    LocalityReport rep1 = locality_check(
        interval(Rational(0), Rational(1, 4)), interval(Rational(0), Rational(1)),
        interval(Rational(0), Rational(1, 2)), interval(Rational(0), Rational(3, 8)), {Rational(0)},
        prec, 20);
    if (!rep1.pass) r.fail("locality example [0,1/4] in [0,1] vs [0,1/2]");
    LocalityReport rep2 = locality_check(
        interval(Rational(0), Rational(1, 4)), interval(Rational(0), Rational(1)),
        interval(Rational(0), Rational(1)), interval(Rational(0), Rational(3, 8)), {Rational(0)},
        prec, 20);
    if (!rep2.pass) r.fail("locality with P''=P' must pass trivially");
    LocalityReport rep3 = locality_check(
        box2(Rational(0), Rational(1, 4), Rational(0), Rational(1, 4)),
        box2(Rational(0), Rational(1), Rational(0), Rational(1)),
        box2(Rational(0), Rational(1, 2), Rational(0), Rational(1, 2)),
        box2(Rational(0), Rational(3, 8), Rational(0), Rational(3, 8)),
        {Rational(0), Rational(0)}, prec, 20);
    if (!rep3.pass) r.fail("2-d locality configuration");
    bool raised = false;
    try {
        locality_check(interval(Rational(0), Rational(1, 4)), interval(Rational(0), Rational(1)),
                       interval(Rational(1, 2), Rational(1)), interval(Rational(0), Rational(3, 8)),
                       {Rational(0)}, prec, 20);
    } catch (const Error& e) {
        raised = e.code() == errc::precondition_violated;
    }
    if (!raised) r.fail("P'' missing P' cap nu must raise PreconditionViolated");
    r.note("locality constructions: 3 configurations + 1 negative");
}

}  // namespace

CheckResult check_hf_classification(std::uint64_t seed, const Rational& cutoff) {
    CheckResult r;
    Rng rng(seed);
    Precision prec(cutoff);
    struct Case {
        Polytope p0, p1;
        HfTag expected;
    };
    std::vector<Case> corpus{
        {interval(Rational(-1), Rational(1)), interval(Rational(0), Rational(1)), HfTag::InclusionIso},
        {interval(Rational(0), Rational(1)), interval(Rational(-1), Rational(2)), HfTag::NestedDual},
        {interval(Rational(0), Rational(1)), interval(Rational(2), Rational(3)), HfTag::DisjointZero},
        {interval(Rational(0), Rational(2)), interval(Rational(1), Rational(3)), HfTag::Unclassified},
        {interval(Rational(0), Rational(1)), interval(Rational(0), Rational(1)), HfTag::InclusionIso},
        {interval(Rational(0), Rational(1)), interval(Rational(1), Rational(2)), HfTag::Unclassified},
        {interval(Rational(-3), Rational(-1)), interval(Rational(1), Rational(2)), HfTag::DisjointZero},
        {interval(Rational(0), Rational(4)), interval(Rational(1), Rational(2)), HfTag::InclusionIso},
        {box2(Rational(-1), Rational(1), Rational(-1), Rational(1)),
         box2(Rational(0), Rational(1), Rational(0), Rational(1)), HfTag::InclusionIso},
        {box2(Rational(0), Rational(1), Rational(0), Rational(1)),
         box2(Rational(-1), Rational(2), Rational(-1), Rational(2)), HfTag::NestedDual},
        {box2(Rational(0), Rational(1), Rational(0), Rational(1)),
         box2(Rational(2), Rational(3), Rational(0), Rational(1)), HfTag::DisjointZero},
        {box2(Rational(0), Rational(2), Rational(0), Rational(1)),
         box2(Rational(1), Rational(3), Rational(0), Rational(1)), HfTag::Unclassified},
    };
    int index = 0;
    for (auto& c : corpus) {
        ++index;
        RatVec q((size_t)c.p0.dim(), Rational(0));
        HfClass cls = classify_hf(c.p0, c.p1, q);
        if (cls.tag != c.expected) {
            r.fail("classification case " + std::to_string(index) + ": got " + cls.description);
            continue;
        }
        // witness verification per tag
        const int n = c.p0.dim();
        AffinoidContext from(c.p0, q), to(c.p1, q);
        if (cls.tag == HfTag::InclusionIso) {
            for (int j = 0; j < n; ++j) {
                IntVec e((size_t)n, 0), ne((size_t)n, 0);
                e[(size_t)j] = 1;
                ne[(size_t)j] = -1;
                if (!(monomial_val(e, to) >= monomial_val(e, from)) ||
                    !(monomial_val(ne, to) >= monomial_val(ne, from)))
                    r.fail("inclusion witness: continuity valuations fail on case " +
                           std::to_string(index));
            }
            GradedOperator psi = rng.graded_operator(n, 2, 2, 2);
            std::string ce;
            if (!retraction_identity_holds(psi, 3, HomotopyForm::staircase, &ce))
                r.fail("inclusion witness identity on case " + std::to_string(index) + ": " + ce);
        } else if (cls.tag == HfTag::NestedDual) {
            for (int j = 0; j < n; ++j) {
                IntVec e((size_t)n, 0), ne((size_t)n, 0);
                e[(size_t)j] = 1;
                ne[(size_t)j] = -1;
                if (!(monomial_val(e, from) > monomial_val(e, to)) ||
                    !(monomial_val(ne, from) > monomial_val(ne, to)))
                    r.fail("nested-dual witness: strict valuation gap fails on case " +
                           std::to_string(index));
            }
            if (n == 1) {
                GradedOperator psi = rng.graded_operator(1, 2, 2, 3);
                GradedOperator lhs = dual_differential(hbar(psi)) + hbar(dual_differential(psi));
                GradedOperator projection(1);
                auto top = psi.components().find(1u);
                if (top != psi.components().end())
                    projection.add_component(1u, delta(eps(top->second)));
                if (!(lhs == psi - projection))
                    r.fail("nested-dual witness identity on case " + std::to_string(index));
            }
        } else if (cls.tag == HfTag::DisjointZero) {
            GradedOperator psi = rng.graded_operator(n, 2, 2, 2);
            GradedOperator lhs = differential(disjoint_homotopy(psi, from, to, prec)) +
                                 disjoint_homotopy(differential(psi), from, to, prec);
            if (!val_at_least(graded_op_val(lhs - psi, from, to), cutoff))
                r.fail("disjoint witness identity on case " + std::to_string(index));
        }
    }
    r.note("HF classification corpus: " + std::to_string(corpus.size()) + " cases with witnesses");
    run_locality_configurations(r, prec);
    return r;
}

CheckResult check_category_suite(std::uint64_t seed, int targets, const Rational& cutoff) {
    CheckResult r;
    Rng rng(seed);
    Precision prec(cutoff);

    // standard 1-d star: a = [0,5/8], b = [3/8,1], ab = [3/8,5/8]
    Cover star_cover = Cover::build(interval(Rational(0), Rational(1)), {"a", "b", "ab"},
                                    {interval(Rational(0), Rational(5, 8)),
                                     interval(Rational(3, 8), Rational(1)),
                                     interval(Rational(3, 8), Rational(5, 8))});
    DirectedCategory cat = DirectedCategory::build(star_cover, {Rational(0)});
    size_t sigma = star_cover.index_of("ab");
    if (!cat.hom_nonzero(star_cover.index_of("a"), sigma) ||
        !cat.hom_nonzero(star_cover.index_of("b"), sigma))
        r.fail("star poset relations a <= ab, b <= ab missing");
    if (cat.hom_nonzero(star_cover.index_of("a"), star_cover.index_of("b")))
        r.fail("incomparable pieces must have zero hom");

    // nested chain for composition laws
    Cover chain_cover = Cover::build(interval(Rational(0), Rational(1)), {"c1", "c2", "c3"},
                                     {interval(Rational(0), Rational(1)),
                                      interval(Rational(0), Rational(1, 2)),
                                      interval(Rational(0), Rational(1, 4))});
    DirectedCategory chain = DirectedCategory::build(chain_cover, {Rational(0)});
    // truncated compositions associate at precision E for elements of
    // non-negative valuation; normalize samples against the largest polytope
    AffinoidContext widest(chain_cover.piece(0), {Rational(0)});
    auto integral = [&](LaurentElement f) {
        Val v = val_P(f, widest);
        if (!v.is_infinite() && v.finite().sign() < 0)
            return f.scale(NovikovScalar::monomial(-v.finite(), Rational(1)));
        return f;
    };
    for (int i = 0; i < 50 && r.pass; ++i) {
        LaurentElement f = integral(rng.laurent(1, 2, 2));
        LaurentElement g = integral(rng.laurent(1, 2, 2));
        LaurentElement h = integral(rng.laurent(1, 2, 2));
        // h o (g o f) = (h o g) o f in hom(c1,c3), at precision
        LaurentElement gf = compose_hom(chain, 0, 1, 2, g, f, prec);
        LaurentElement left = compose_hom(chain, 0, 2, 2, h, gf, prec);
        LaurentElement hg = compose_hom(chain, 1, 2, 2, h, g, prec);
        LaurentElement right = compose_hom(chain, 0, 1, 2, hg, f, prec);
        AffinoidContext c3 = chain.hom_context(0, 2);
        if (!val_at_least(val_P(left - right, c3), cutoff)) r.fail("composition associativity");
        LaurentElement with_unit = compose_hom(chain, 0, 0, 1, f, LaurentElement::one(1), prec);
        LaurentElement expect = restrict(f, chain.hom_context(0, 1), chain.hom_context(0, 1), prec);
        if (!val_at_least(val_P(with_unit - expect, chain.hom_context(0, 1)), cutoff))
            r.fail("composition unitality");
    }
    r.note("composition associativity + unitality: 50 cases");

    // rank-1 freeness: the unit action is injective on samples at precision
    for (int i = 0; i < 20 && r.pass; ++i) {
        LaurentElement f = rng.laurent(1, 2, 2), g = rng.laurent(1, 2, 2);
        AffinoidContext ctx = chain.hom_context(0, 1);
        LaurentElement uf = compose_hom(chain, 0, 0, 1, f, LaurentElement::one(1), prec);
        LaurentElement ug = compose_hom(chain, 0, 0, 1, g, LaurentElement::one(1), prec);
        Val separation = val_P(truncate_P(f - g, ctx, prec), ctx);
        if (separation.is_infinite()) continue;  // equal at precision
        if (val_P(uf - ug, ctx).is_infinite())
            r.fail("unit action collapses distinct elements");
    }
    r.note("rank-1 freeness sampling: 20 cases");

    // compose example: g = z over [0,1/2], f = 1 + T z over [0,1]
    {
        LaurentElement f = LaurentElement::one(1) +
                           z_monomial(1, 0, 1).scale(NovikovScalar::monomial(Rational(1), Rational(1)));
        LaurentElement g = z_monomial(1, 0, 1);
        LaurentElement composed = compose_hom(chain, 0, 1, 1, g, f, Precision::exponent(50));
        LaurentElement expected =
            z_monomial(1, 0, 1) +
            z_monomial(1, 0, 2).scale(NovikovScalar::monomial(Rational(1), Rational(1)));
        if (composed != expected) r.fail("compose example z * (1 + T z)");
        bool raised = false;
        try {
            compose_hom(cat, star_cover.index_of("a"), star_cover.index_of("b"), sigma,
                        LaurentElement::one(1), LaurentElement::one(1), prec);
        } catch (const Error& e) {
            raised = e.code() == errc::not_comparable;
        }
        if (!raised) r.fail("compose through incomparable objects must raise NotComparable");
        r.note("pinned compose examples: 2 cases");
    }

    // modules: trivial and monomial cocycles
    std::map<std::pair<size_t, size_t>, LaurentElement> trivial;
    RankOneModule mod_trivial = RankOneModule::build(cat, ModuleSide::left, trivial, prec);
    std::map<std::pair<size_t, size_t>, LaurentElement> monomial;
    monomial[{star_cover.index_of("a"), sigma}] = z_monomial(1, 0, 2);
    monomial[{star_cover.index_of("b"), sigma}] = z_monomial(1, 0, 2);
    RankOneModule mod_monomial = RankOneModule::build(cat, ModuleSide::left, monomial, prec);
    {
        bool raised = false;
        try {
            std::map<std::pair<size_t, size_t>, LaurentElement> bad;
            bad[{star_cover.index_of("a"), sigma}] =
                z_monomial(1, 0, 1) + LaurentElement::one(1);  // not a unit monomial
            RankOneModule::build(cat, ModuleSide::left, bad, prec);
        } catch (const Error& e) {
            raised = e.code() == errc::cocycle_violation;
        }
        if (!raised) r.fail("non-unit cocycle entry must raise CocycleViolation");
    }

    // right-exactness witnesses
    for (int i = 0; i < targets && r.pass; ++i) {
        const RankOneModule& mod = (i % 2 == 0) ? mod_trivial : mod_monomial;
        LaurentElement target = rng.laurent(1, 3, 2);
        SurjectivityWitness w = tensor_surjectivity_witness(cat, mod, sigma, target, prec);
        if (!val_at_least(w.residual, cutoff))
            r.fail("surjectivity witness residual " + w.residual.str() + " at target " + target.str());
    }
    r.note("tensor surjectivity witnesses: " + std::to_string(targets) + " targets");
    {
        // star that cannot see a neighbourhood: sigma is the whole base
        Cover whole = Cover::build(interval(Rational(0), Rational(1)), {"all"},
                                   {interval(Rational(0), Rational(1))});
        DirectedCategory whole_cat = DirectedCategory::build(whole, {Rational(0)});
        bool raised = false;
        try {
            tensor_surjectivity_witness(whole_cat, RankOneModule::build(whole_cat, ModuleSide::left,
                                                                        {}, prec),
                                        0, LaurentElement::one(1), prec);
        } catch (const Error& e) {
            raised = e.code() == errc::cover_assumption_violated;
        }
        if (!raised) r.fail("star missing a neighbourhood must raise CoverAssumptionViolated");
    }

    // left-exactness witnesses: tuples from a known global element
    for (int i = 0; i < targets && r.pass; ++i) {
        const RankOneModule& mod = (i % 2 == 0) ? mod_trivial : mod_monomial;
        LaurentElement global = rng.laurent(1, 3, 2);
        StarEnvelope env = star_envelope(cat, sigma);
        // compatible family induced by a global element: t_rho = global at the
        // minimal objects, twisted by the transition unit at sigma
        std::map<size_t, LaurentElement> tuple;
        Rational margin = cutoff + Rational(6);
        for (auto rho : env.star) tuple[rho] = global;
        tuple[sigma] = global * unit_invert(mod.transition(cat, star_cover.index_of("a"), sigma),
                                            Precision(margin));
        ReconstructionWitness w = hom_reconstruction_witness(cat, mod, sigma, tuple, prec);
        if (!val_at_least(w.residual, cutoff))
            r.fail("reconstruction witness residual " + w.residual.str());
        AffinoidContext sctx(star_cover.piece(sigma), {Rational(0)});
        LaurentElement expect = tuple[sigma];
        if (!val_at_least(val_P(w.global - expect, sctx), cutoff))
            r.fail("reconstruction does not restrict to the tuple at sigma");
    }
    r.note("hom reconstruction witnesses: " + std::to_string(targets) + " tuples");
    {
        bool raised = false;
        std::map<size_t, LaurentElement> bad;
        for (auto rho : cat.star(sigma)) bad[rho] = LaurentElement::one(1);
        bad[star_cover.index_of("a")] = z_monomial(1, 0, 5);
        try {
            hom_reconstruction_witness(cat, mod_trivial, sigma, bad, prec);
        } catch (const Error& e) {
            raised = e.code() == errc::not_compatible;
        }
        if (!raised) r.fail("incompatible tuple must raise NotCompatible");
        std::map<size_t, LaurentElement> units;
        for (auto rho : cat.star(sigma)) units[rho] = LaurentElement::one(1);
        ReconstructionWitness w = hom_reconstruction_witness(cat, mod_trivial, sigma, units, prec);
        AffinoidContext sctx(star_cover.piece(sigma), {Rational(0)});
        if (!val_at_least(val_P(w.global - LaurentElement::one(1), sctx), cutoff))
            r.fail("unit tuple must reconstruct to 1");
        r.note("reconstruction edge cases: 2 cases");
    }

    // locality of the bar complex
    for (size_t s = 0; s < cat.size() && r.pass; ++s) {
        LocalityRestrictReport rep = locality_restrict_check(cat, s);
        if (!rep.pass) r.fail("locality_restrict_check on star of " + star_cover.names()[s]);
    }
    {
        // the star of ab is everything in the 3-piece star, so corrupt a cover
        // with a genuinely disjoint pair instead
        Cover two = Cover::build(interval(Rational(0), Rational(1)), {"l", "r", "m"},
                                 {interval(Rational(0), Rational(3, 8)),
                                  interval(Rational(5, 8), Rational(1)),
                                  interval(Rational(1, 4), Rational(3, 4))});
        DirectedCategory cat2 = DirectedCategory::build(two, {Rational(0)});
        if (!locality_restrict_check(cat2, two.index_of("l")).pass)
            r.fail("honest category must pass the locality check");
        // star of l misses r; an injected hom r <= l drags r into the bar complex
        DirectedCategory corrupted = DirectedCategory::build(two, {Rational(0)});
        corrupted.inject_edge(two.index_of("r"), two.index_of("l"));
        if (locality_restrict_check(corrupted, two.index_of("l")).pass)
            r.fail("corrupted category must fail the locality check");
    }
    r.note("bar-complex locality checks: all stars + corrupted negative");

    // perfectness filtration report
    {
        std::string report = perfectness_filtration(cat, mod_trivial, prec);
        if (report.find("stage 3") == std::string::npos)
            r.fail("perfectness filtration must emit 3 stages on the 3-piece cover");
        if (report.find("maximal object") == std::string::npos)
            r.fail("perfectness filtration must certify the maximal base case");
        Cover chain2 = Cover::build(interval(Rational(0), Rational(1)), {"big", "small"},
                                    {interval(Rational(0), Rational(1)),
                                     interval(Rational(0), Rational(1, 2))});
        DirectedCategory cat_chain2 = DirectedCategory::build(chain2, {Rational(0)});
        std::string rep2 = perfectness_filtration(
            cat_chain2, RankOneModule::build(cat_chain2, ModuleSide::left, {}, prec), prec);
        size_t steps = 0;
        for (size_t pos = 0; (pos = rep2.find("extension step", pos)) != std::string::npos; ++pos)
            ++steps;
        if (steps != 1) r.fail("2-chain poset must report exactly one extension step");
        r.note("perfectness filtration reports: 2 covers");
    }
    return r;
}

CheckResult check_text_roundtrip(std::uint64_t seed, int cases) {
    CheckResult r;
    Rng rng(seed);
    for (int i = 0; i < cases && r.pass; ++i) {
        NovikovScalar x = rng.novikov(4);
        if (NovikovScalar::parse(x.str()) != x) r.fail("novikov round trip: " + x.str());
        if (NovikovScalar::parse(x.str()).str() != x.str())
            r.fail("novikov canonical fixed point: " + x.str());
        int n = (i % 2) + 1;
        LaurentElement f = rng.laurent(n, 3);
        if (LaurentElement::parse(f.str(), n) != f) r.fail("laurent round trip: " + f.str());
        if (LaurentElement::parse(f.str(), n).str() != f.str())
            r.fail("laurent canonical fixed point: " + f.str());
        GradedOperator psi = rng.graded_operator(n, 2, 2);
        if (!(GradedOperator::parse(psi.str(), n) == psi))
            r.fail("operator round trip: " + psi.str());
        Polytope p = n == 1 ? rng.interval() : rng.box(2);
        RatVec q((size_t)n, rng.rational());
        ParsedPolytope back = parse_polytope(print_polytope(p, q));
        if (back.poly != p || back.basepoint != q) r.fail("polytope round trip");
    }
    r.note("canonical round trips: " + std::to_string(cases) + " cases per format");
    // permuted and non-canonical input normalizes, second pass is a fixed point
    {
        NovikovScalar x = NovikovScalar::parse("2*T^(2) + 1*T^(1/2)");
        if (x.str() != "1*T^(1/2) + 2*T^(2)") r.fail("permuted novikov input normalizes");
        bool raised = false;
        try {
            NovikovScalar::parse("1//2");
        } catch (const Error& e) {
            raised = e.code() == errc::parse_error;
        }
        if (!raised) r.fail("malformed rational must raise a parse error");
        r.note("normalization + malformed input: 2 cases");
    }
    return r;
}

VerifyResult verify_module(const std::string& name, const VerifyOptions& opt) {
    std::ostringstream out;
    out << "nova verify " << name << "\n";
    out << "version: 1.0.0\n";
    out << "seed: " << opt.seed << "\n";
    out << "prec: " << opt.prec.str() << "\n";
    out << "samples: " << opt.samples << "\n";
    out << "window: " << opt.window << "\n";
    out << "dual-differential: phi - z^-1 phi z\n";
    out << "---\n";
    bool pass = true;
    auto run = [&](const std::string& label, auto&& make_check) {
        CheckResult c;
        try {
            c = make_check();
        } catch (const std::exception& e) {
            c.fail(std::string("unhandled exception: ") + e.what());
        }
        out << c.detail;
        out << "case " << label << ": " << (c.pass ? "PASS" : "FAIL") << "\n";
        pass = pass && c.pass;
    };
    if (name == "novikov" || name == "all") {
        run("novikov.suite", [&] { return check_novikov_suite(opt.seed, opt.samples, opt.prec); });
        run("novikov.roundtrip", [&] { return check_text_roundtrip(opt.seed + 1, opt.samples); });
    }
    if (name == "affinoid" || name == "all")
        run("affinoid.valuations", [&] { return check_valuation_suite(opt.seed + 2, opt.samples); });
    if (name == "operator" || name == "all") {
        run("operator.retraction",
            [&] { return check_inclusion_retraction(opt.seed + 3, 20, opt.window); });
        run("operator.form-comparison",
            [&] { return check_homotopy_form_comparison(opt.seed + 4, 10, 3); });
        run("operator.disjoint", [&] { return check_disjoint_vanishing(opt.seed + 5, 5, 5, opt.prec); });
        run("operator.duality", [&] { return check_duality(opt.seed + 6, opt.samples, 50); });
        run("operator.classification",
            [&] { return check_hf_classification(opt.seed + 7, opt.prec); });
    }
    if (name == "cech" || name == "all") {
        run("cech.two-term", [&] { return check_tate_two_term(opt.seed + 8, opt.samples, opt.prec); });
        run("cech.acyclicity", [&] { return check_cech_acyclicity(opt.seed + 9, opt.prec); });
    }
    if (name == "category" || name == "all")
        run("category.suite", [&] { return check_category_suite(opt.seed + 10, 20, opt.prec); });
    out << "---\n";
    out << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    return VerifyResult{pass, out.str()};
}

}  // namespace nova
