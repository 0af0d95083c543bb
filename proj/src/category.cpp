#include "nova/category.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace nova {

DirectedCategory DirectedCategory::build(Cover cover, RatVec basepoint) {
    if ((int)basepoint.size() != cover.base().dim())
        raise(errc::dimension_mismatch, "basepoint length != base dim");
    DirectedCategory cat;
    cat.cover_ = std::move(cover);
    cat.basepoint_ = std::move(basepoint);
    return cat;
}

bool DirectedCategory::hom_nonzero(size_t tau, size_t sigma) const {
    return cover_.leq(tau, sigma) || extra_edges_.count({tau, sigma}) > 0;
}

AffinoidContext DirectedCategory::hom_context(size_t tau, size_t sigma) const {
    if (!hom_nonzero(tau, sigma))
        raise(errc::not_comparable, "hom(" + cover_.names()[tau] + ", " + cover_.names()[sigma] +
                                        ") is the zero space");
    return AffinoidContext(cover_.piece(sigma), basepoint_);
}

std::vector<size_t> DirectedCategory::star(size_t sigma) const {
    std::vector<size_t> out;
    for (size_t tau = 0; tau < cover_.size(); ++tau)
        if (intersect(cover_.piece(tau), cover_.piece(sigma)).has_value()) out.push_back(tau);
    return out;
}

LaurentElement compose_hom(const DirectedCategory& cat, size_t tau, size_t sigma, size_t rho,
                           const LaurentElement& g, const LaurentElement& f, const Precision& prec) {
    if (!cat.hom_nonzero(tau, sigma) || !cat.hom_nonzero(sigma, rho))
        raise(errc::not_comparable, "compose requires tau <= sigma <= rho");
    AffinoidContext target = cat.hom_context(tau, rho);
    LaurentElement f_restricted = restrict(f, cat.hom_context(tau, sigma), target, prec);
    return mul_P(g, f_restricted, target, prec);
}

LaurentElement unit_invert(const LaurentElement& u, const Precision& prec) {
    if (u.terms().size() != 1)
        raise(errc::invalid_argument, "unit inverse needs a single-monomial element");
    const auto& [beta, c] = *u.terms().begin();
    IntVec neg(beta.size());
    for (size_t i = 0; i < beta.size(); ++i) neg[i] = -beta[i];
    return LaurentElement::monomial(neg, c.invert(prec));
}

RankOneModule RankOneModule::build(const DirectedCategory& cat, ModuleSide side,
                                   std::map<std::pair<size_t, size_t>, LaurentElement> cocycle,
                                   const Precision& prec) {
    const int dim = cat.cover().base().dim();
    for (auto& [pair, g] : cocycle) {
        if (!cat.hom_nonzero(pair.first, pair.second))
            raise(errc::invalid_argument, "cocycle entry on a non-comparable pair");
        if (g.terms().size() != 1)
            raise(errc::cocycle_violation, "transition element is not a unit monomial");
    }
    RankOneModule mod;
    mod.side_ = side;
    mod.cocycle_ = std::move(cocycle);
    // cocycle condition g_{sigma rho} * g_{tau sigma}| = g_{tau rho} at precision
    for (size_t tau = 0; tau < cat.size(); ++tau) {
        for (size_t sigma = 0; sigma < cat.size(); ++sigma) {
            if (!cat.cover().leq(tau, sigma)) continue;
            for (size_t rho = 0; rho < cat.size(); ++rho) {
                if (!cat.cover().leq(sigma, rho)) continue;
                AffinoidContext ctx(cat.cover().piece(rho), cat.basepoint());
                LaurentElement lhs = mod.transition(cat, sigma, rho) * mod.transition(cat, tau, sigma);
                LaurentElement rhs = mod.transition(cat, tau, rho);
                Val defect = val_P(lhs - rhs, ctx);
                if (defect < Val(prec.cutoff))
                    raise(errc::cocycle_violation,
                          "cocycle fails on chain " + cat.cover().names()[tau] + " <= " +
                              cat.cover().names()[sigma] + " <= " + cat.cover().names()[rho] +
                              " (defect val " + defect.str() + ")");
            }
        }
    }
    (void)dim;
    return mod;
}

LaurentElement RankOneModule::transition(const DirectedCategory& cat, size_t tau,
                                         size_t sigma) const {
    if (tau == sigma) return LaurentElement::one(cat.cover().base().dim());
    auto it = cocycle_.find({tau, sigma});
    if (it != cocycle_.end()) return it->second;
    return LaurentElement::one(cat.cover().base().dim());
}

StarEnvelope star_envelope(const DirectedCategory& cat, size_t sigma) {
    const Polytope& p_sigma = cat.cover().piece(sigma);
    std::vector<size_t> star = cat.star(sigma);
    for (int shrink = 1; shrink <= 8; ++shrink) {
        Rational eps(1, 1 << shrink);
        std::vector<Halfspace> cs;
        for (auto& h : p_sigma.constraints()) cs.push_back(Halfspace{h.normal, h.offset - eps});
        Polytope envelope = Polytope::from_halfspaces(p_sigma.dim(), cs);
        std::vector<Polytope> pieces;
        std::vector<size_t> used;
        for (auto tau : star) {
            auto cut = intersect(envelope, cat.cover().piece(tau));
            if (cut) {
                pieces.push_back(*cut);
                used.push_back(tau);
            }
        }
        if (pieces.empty()) continue;
        if (!uncovered_cell(envelope, pieces).has_value())
            return StarEnvelope{std::move(envelope), std::move(used), std::move(pieces)};
    }
    raise(errc::cover_assumption_violated,
          "star pieces do not cover any neighbourhood of P_" + cat.cover().names()[sigma]);
}

namespace {

std::int64_t grade_along(const IntVec& beta, const IntVec& w) {
    std::int64_t g = 0;
    for (size_t i = 0; i < beta.size(); ++i) g += beta[i] * w[i];
    return g;
}

std::pair<LaurentElement, LaurentElement> grade_split_w(const LaurentElement& f, const IntVec& w) {
    LaurentElement plus(f.dim()), minus(f.dim());
    for (auto& [beta, c] : f.terms()) {
        if (grade_along(beta, w) >= 1)
            plus.add_term(beta, c);
        else
            minus.add_term(beta, c);
    }
    return {plus, minus};
}

using Labeled = std::map<size_t, LaurentElement>;

Labeled labeled_add(Labeled a, const Labeled& b) {
    for (auto& [k, v] : b) {
        auto it = a.find(k);
        if (it == a.end())
            a.emplace(k, v);
        else
            it->second = it->second + v;
    }
    return a;
}

Labeled labeled_grade_part(const Labeled& a, const IntVec& w, bool plus_part) {
    Labeled out;
    for (auto& [k, v] : a) {
        auto split = grade_split_w(v, w);
        LaurentElement part = plus_part ? split.first : split.second;
        if (!part.is_zero()) out.emplace(k, part);
    }
    return out;
}

// Distributes a global representative over the pieces of a cover by the
// iterated two-term contraction, keeping track of which piece each summand
// was read from. The label-summed result equals the input exactly.
Labeled distribute_over_cover(const Polytope& base, const std::vector<Polytope>& pieces,
                              const std::vector<size_t>& labels, const LaurentElement& value) {
    std::vector<SplitDatum> splits;
    {
        std::set<SplitDatum> seen;
        for (auto& piece : pieces)
            for (auto& h : piece.constraints()) {
                IntVec n = h.normal;
                Rational offset = h.offset;
                for (auto x : n) {
                    if (x > 0) break;
                    if (x < 0) {
                        for (auto& y : n) y = -y;
                        offset = -offset;
                        break;
                    }
                }
                seen.insert(SplitDatum{n, offset});
            }
        for (auto& s : seen) {
            Rational lo = base.support_min(s.normal);
            Rational hi = base.support_max(s.normal);
            if (lo < s.offset && s.offset < hi) splits.push_back(s);
        }
    }
    std::function<Labeled(const Polytope&, size_t)> rec = [&](const Polytope& cell,
                                                              size_t idx) -> Labeled {
        if (idx == splits.size()) {
            for (size_t i = 0; i < pieces.size(); ++i) {
                if (is_subset(cell, pieces[i]).subset) {
                    Labeled out;
                    out.emplace(labels[i], value);
                    return out;
                }
            }
            raise(errc::cover_assumption_violated,
                  "cell not contained in any star piece; vertices " + cell.vertices_str());
        }
        const auto& s = splits[idx];
        Rational lo = cell.support_min(s.normal);
        Rational hi = cell.support_max(s.normal);
        if (!(lo < s.offset && s.offset < hi)) return rec(cell, idx + 1);
        auto split_cells = laurent_split(cell, s.normal, s.offset);
        Labeled on_plus = rec(*split_cells.plus, idx + 1);
        Labeled on_minus = rec(*split_cells.minus, idx + 1);
        IntVec w = split_grade_vector(s.normal);
        return labeled_add(labeled_grade_part(on_plus, w, false),
                           labeled_grade_part(on_minus, w, true));
    };
    return rec(base, 0);
}

}  // namespace

SurjectivityWitness tensor_surjectivity_witness(const DirectedCategory& cat,
                                                const RankOneModule& mod, size_t sigma,
                                                const LaurentElement& target,
                                                const Precision& prec) {
    StarEnvelope env = star_envelope(cat, sigma);
    AffinoidContext sigma_ctx(cat.cover().piece(sigma), cat.basepoint());

    Labeled parts = distribute_over_cover(env.envelope, env.star_pieces, env.star, target);

    // invert the transition units deep enough that the residual stays >= prec
    Rational margin = prec.cutoff;
    for (auto& [tau, part] : parts) {
        Val v = val_P(part, sigma_ctx);
        if (!v.is_infinite() && v.finite().sign() < 0) margin = margin - v.finite();
    }
    Precision unit_prec(margin + Rational(1));

    SurjectivityWitness out;
    LaurentElement image(target.dim());
    std::ostringstream report;
    for (auto& [tau, part] : parts) {
        LaurentElement g = mod.transition(cat, tau, sigma);
        LaurentElement entry = part * unit_invert(g, unit_prec);
        out.tuple.emplace(tau, entry);
        image = image + g * entry;
        report << "  tuple[" << cat.cover().names()[tau] << "] = " << entry.str() << "\n";
    }
    out.residual = val_P(target - image, sigma_ctx);
    report << "  residual val = " << out.residual.str() << "\n";
    out.report = report.str();
    return out;
}

ReconstructionWitness hom_reconstruction_witness(const DirectedCategory& cat,
                                                 const RankOneModule& mod, size_t sigma,
                                                 const std::map<size_t, LaurentElement>& tuple,
                                                 const Precision& prec) {
    StarEnvelope env = star_envelope(cat, sigma);
    const int dim = cat.cover().base().dim();

    // straightening units: s_rho' = g_{rho rho'} s_rho along the poset
    std::map<size_t, LaurentElement> straighten;
    {
        // topological order of the star: predecessors first
        std::vector<size_t> order;
        std::set<size_t> remaining(env.star.begin(), env.star.end());
        while (!remaining.empty()) {
            for (auto rho : remaining) {
                bool ready = true;
                for (auto prev : remaining)
                    if (prev != rho && cat.cover().leq(prev, rho)) ready = false;
                if (ready) {
                    order.push_back(rho);
                    remaining.erase(rho);
                    break;
                }
            }
        }
        for (auto rho : order) {
            bool set = false;
            for (auto prev : order) {
                if (prev == rho || !cat.cover().leq(prev, rho)) continue;
                auto it = straighten.find(prev);
                if (it == straighten.end()) continue;
                straighten[rho] = mod.transition(cat, prev, rho) * it->second;
                set = true;
                break;
            }
            if (!set) straighten[rho] = LaurentElement::one(dim);
        }
    }

    // build the straightened degree-0 cochain over the envelope cover; its
    // cocycle defect is exactly the kernel compatibility of the tuple
    std::vector<std::string> names;
    std::vector<Polytope> pieces;
    for (size_t i = 0; i < env.star.size(); ++i) {
        names.push_back(cat.cover().names()[env.star[i]]);
        pieces.push_back(env.star_pieces[i]);
    }
    Cover env_cover = Cover::build(env.envelope, names, pieces, {}, true);
    CechComplex complex = CechComplex::build(env_cover, cat.basepoint());
    CechCochain cochain;
    cochain.degree = 0;
    cochain.precision = prec;
    for (size_t i = 0; i < env.star.size(); ++i) {
        size_t rho = env.star[i];
        auto it = tuple.find(rho);
        if (it == tuple.end())
            raise(errc::not_compatible, "tuple is missing object " + cat.cover().names()[rho]);
        LaurentElement u = it->second * straighten.at(rho);
        if (!u.is_zero()) cochain.values.emplace(Face{i}, u);
    }
    Val defect = cocycle_defect(complex, cochain);
    if (defect < Val(prec.cutoff))
        raise(errc::not_compatible, "tuple fails the kernel compatibility at precision (defect val " +
                                        defect.str() + ")");
    LaurentElement global = h0_reconstruct(complex, cochain, prec);

    // answer lives at sigma: undo the straightening there
    Rational margin = prec.cutoff;
    Val gv = val_P(global, AffinoidContext(cat.cover().piece(sigma), cat.basepoint()));
    if (!gv.is_infinite() && gv.finite().sign() < 0) margin = margin - gv.finite();
    LaurentElement result = global * unit_invert(straighten.at(sigma), Precision(margin + Rational(1)));

    ReconstructionWitness out;
    out.global = truncate_P(result, AffinoidContext(cat.cover().piece(sigma), cat.basepoint()), prec);
    out.residual = Val::infinity();
    std::ostringstream report;
    for (size_t i = 0; i < env.star.size(); ++i) {
        size_t rho = env.star[i];
        AffinoidContext ctx(env.star_pieces[i], cat.basepoint());
        LaurentElement induced = global * unit_invert(straighten.at(rho), Precision(margin + Rational(1)));
        Val diff = val_P(tuple.at(rho) - induced, ctx);
        out.residual = Val::min(out.residual, diff);
        report << "  restriction defect at " << cat.cover().names()[rho] << ": val " << diff.str()
               << "\n";
    }
    out.report = report.str();
    return out;
}

LocalityRestrictReport locality_restrict_check(const DirectedCategory& cat, size_t sigma,
                                               int max_chain_length) {
    std::vector<size_t> star = cat.star(sigma);
    auto in_star = [&](size_t tau) {
        return std::find(star.begin(), star.end(), tau) != star.end();
    };
    std::ostringstream report;
    // chains tau_k <= ... <= tau_0 with tau_0 in the star: every object of
    // the chain must already lie in the star
    std::function<bool(std::vector<size_t>&)> extend = [&](std::vector<size_t>& chain) -> bool {
        if ((int)chain.size() >= max_chain_length) return true;
        for (size_t prev = 0; prev < cat.size(); ++prev) {
            if (prev == chain.back()) continue;
            if (!cat.hom_nonzero(prev, chain.back())) continue;
            if (!in_star(prev)) {
                report << "FAIL chain:";
                for (auto it = chain.rbegin(); it != chain.rend(); ++it)
                    report << " " << cat.cover().names()[*it] << " >=";
                report << " " << cat.cover().names()[prev]
                       << " (object outside the star carries a nonzero bar summand)\n";
                return false;
            }
            chain.push_back(prev);
            if (!extend(chain)) return false;
            chain.pop_back();
        }
        return true;
    };
    for (auto tau0 : star) {
        std::vector<size_t> chain{tau0};
        if (!extend(chain)) return LocalityRestrictReport{false, report.str()};
    }
    report << "PASS: all bar summands over the category already lie over the star of "
           << cat.cover().names()[sigma] << "\n";
    return LocalityRestrictReport{true, report.str()};
}

std::string perfectness_filtration(const DirectedCategory& cat, const RankOneModule& mod,
                                   const Precision& prec) {
    (void)mod;
    std::ostringstream report;
    // decreasing poset order: maximal objects first
    std::vector<size_t> order(cat.size());
    for (size_t i = 0; i < cat.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        bool a_le_b = cat.cover().leq(a, b) && a != b;
        bool b_le_a = cat.cover().leq(b, a) && a != b;
        if (a_le_b != b_le_a) return b_le_a;  // larger first
        return a < b;
    });
    int stage = 0;
    for (auto sigma : order) {
        ++stage;
        std::vector<size_t> support;
        for (size_t tau = 0; tau < cat.size(); ++tau)
            if (cat.cover().leq(sigma, tau)) support.push_back(tau);
        report << "stage " << stage << ": Yoneda module at " << cat.cover().names()[sigma]
               << ", support {";
        for (size_t i = 0; i < support.size(); ++i) {
            if (i) report << ",";
            report << cat.cover().names()[support[i]];
        }
        report << "}\n";
        if (support.size() == 1) {
            report << "  maximal object: module supported at " << cat.cover().names()[sigma]
                   << " only\n";
            continue;
        }
        for (auto tau : support) {
            if (tau == sigma) continue;
            // hom(sigma,tau) is free rank 1 over Gamma^{P_tau}: the unit class
            // composes to the restriction map
            AffinoidContext ctx = cat.hom_context(sigma, tau);
            LaurentElement sample = LaurentElement::monomial(IntVec((size_t)ctx.dim(), 0),
                                                             NovikovScalar::one());
            LaurentElement composed = compose_hom(cat, sigma, sigma, tau, sample,
                                                  LaurentElement::one(ctx.dim()), prec);
            Val defect = val_P(composed - sample, ctx);
            report << "  extension step: subquotient L_" << cat.cover().names()[tau]
                   << ", hom(" << cat.cover().names()[sigma] << "," << cat.cover().names()[tau]
                   << ") = Gamma^" << cat.cover().piece(tau).vertices_str()
                   << " (unit action defect val " << defect.str() << ")\n";
        }
    }
    return report.str();
}

RankOneModule parse_module_file(const std::string& text, const DirectedCategory& cat,
                                const Precision& prec) {
    std::istringstream in(text);
    std::string line;
    ModuleSide side = ModuleSide::left;
    std::map<std::pair<size_t, size_t>, LaurentElement> cocycle;
    const int dim = cat.cover().base().dim();
    auto trim = [](std::string s) {
        size_t b = 0, e = s.size();
        while (b < e && std::isspace((unsigned char)s[b])) ++b;
        while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
        return s.substr(b, e - b);
    };
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("side:", 0) == 0) {
            std::string s = trim(line.substr(5));
            if (s == "left")
                side = ModuleSide::left;
            else if (s == "right")
                side = ModuleSide::right;
            else
                raise(errc::parse_error, "module side must be left or right");
        } else if (line.rfind("g[", 0) == 0) {
            size_t close = line.find(']');
            size_t arrow = line.find("<=");
            if (close == std::string::npos || arrow == std::string::npos || arrow > close)
                raise(errc::parse_error, "bad cocycle line: " + line);
            std::string tau_name = trim(line.substr(2, arrow - 2));
            std::string sigma_name = trim(line.substr(arrow + 2, close - arrow - 2));
            size_t eq = line.find('=', close);
            if (eq == std::string::npos) raise(errc::parse_error, "cocycle line missing '='");
            LaurentElement g = LaurentElement::parse(trim(line.substr(eq + 1)), dim);
            cocycle.emplace(std::make_pair(cat.cover().index_of(tau_name),
                                           cat.cover().index_of(sigma_name)),
                            std::move(g));
        } else {
            raise(errc::parse_error, "unknown module line: " + line);
        }
    }
    return RankOneModule::build(cat, side, std::move(cocycle), prec);
}

}  // namespace nova
