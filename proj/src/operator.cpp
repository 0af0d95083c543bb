#include "nova/operator.hpp"

#include <algorithm>
#include <cctype>

namespace nova {

int subset_size(ExtSubset s) {
    int c = 0;
    while (s) {
        c += (int)(s & 1u);
        s >>= 1;
    }
    return c;
}

int position_in(ExtSubset s, int j) {
    int c = 0;
    for (int i = 1; i < j; ++i)
        if (s & (1u << (i - 1))) ++c;
    return c;
}

std::string subset_str(ExtSubset s) {
    std::string out = "b{";
    bool first = true;
    for (int j = 1; j <= 32; ++j) {
        if (s & (1u << (j - 1))) {
            if (!first) out += ",";
            first = false;
            out += std::to_string(j);
        }
    }
    return out + "}";
}

FiniteOperator FiniteOperator::elementary(IntVec gamma, IntVec alpha, NovikovScalar c) {
    if (gamma.size() != alpha.size()) raise(errc::dimension_mismatch, "elementary exponent lengths");
    FiniteOperator phi((int)gamma.size());
    phi.add_entry(gamma, alpha, c);
    return phi;
}

void FiniteOperator::add_entry(const IntVec& gamma, const IntVec& alpha, const NovikovScalar& c) {
    if ((int)gamma.size() != dim_ || (int)alpha.size() != dim_)
        raise(errc::dimension_mismatch, "entry exponent length != dim");
    if (c.is_zero()) return;
    Key key{gamma, alpha};
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(std::move(key), c);
        return;
    }
    NovikovScalar s = it->second + c;
    if (s.is_zero())
        entries_.erase(it);
    else
        it->second = std::move(s);
}

FiniteOperator operator+(const FiniteOperator& a, const FiniteOperator& b) {
    if (a.dim_ != b.dim_) raise(errc::dimension_mismatch, "operator sum dims differ");
    FiniteOperator r = a;
    for (auto& [key, c] : b.entries_) r.add_entry(key.first, key.second, c);
    return r;
}

FiniteOperator operator-(const FiniteOperator& a, const FiniteOperator& b) { return a + (-b); }

FiniteOperator FiniteOperator::operator-() const {
    FiniteOperator r(dim_);
    for (auto& [key, c] : entries_) r.entries_.emplace(key, -c);
    return r;
}

FiniteOperator FiniteOperator::scale(const NovikovScalar& c) const {
    FiniteOperator r(dim_);
    if (c.is_zero()) return r;
    for (auto& [key, coeff] : entries_) {
        NovikovScalar s = coeff * c;
        if (!s.is_zero()) r.entries_.emplace(key, std::move(s));
    }
    return r;
}

LaurentElement FiniteOperator::apply(const IntVec& alpha) const {
    if ((int)alpha.size() != dim_) raise(errc::dimension_mismatch, "apply exponent length != dim");
    LaurentElement out(dim_);
    for (auto& [key, c] : entries_)
        if (key.second == alpha) out.add_term(key.first, c);
    return out;
}

FiniteOperator compose(const FiniteOperator& phi, const FiniteOperator& psi) {
    if (phi.dim() != psi.dim()) raise(errc::dimension_mismatch, "compose dims differ");
    FiniteOperator r(phi.dim());
    for (auto& [kp, cp] : psi.entries())
        for (auto& [kq, cq] : phi.entries())
            if (kq.second == kp.first) r.add_entry(kq.first, kp.second, cq * cp);
    return r;
}

FiniteOperator shift_conjugate(const FiniteOperator& phi, int axis_j) {
    if (axis_j < 1 || axis_j > phi.dim()) raise(errc::invalid_argument, "axis out of range");
    IntVec w((size_t)phi.dim(), 0);
    w[(size_t)(axis_j - 1)] = 1;
    return shift_conjugate_vec(phi, w);
}

FiniteOperator shift_conjugate_vec(const FiniteOperator& phi, const IntVec& w) {
    if ((int)w.size() != phi.dim()) raise(errc::dimension_mismatch, "conjugation vector length");
    FiniteOperator r(phi.dim());
    for (auto& [key, c] : phi.entries()) {
        IntVec gamma = key.first, alpha = key.second;
        for (size_t i = 0; i < w.size(); ++i) {
            gamma[i] += w[i];
            alpha[i] += w[i];
        }
        r.add_entry(gamma, alpha, c);
    }
    return r;
}

FiniteOperator multiplication_operator(const LaurentElement& g, const std::vector<IntVec>& sources) {
    FiniteOperator r(g.dim());
    for (auto& alpha : sources) {
        for (auto& [beta, c] : g.terms()) {
            IntVec gamma(beta.size());
            for (size_t i = 0; i < beta.size(); ++i) gamma[i] = beta[i] + alpha[i];
            r.add_entry(gamma, alpha, c);
        }
    }
    return r;
}

Val op_val(const FiniteOperator& phi, const AffinoidContext& from, const AffinoidContext& to) {
    if (phi.dim() != from.dim() || phi.dim() != to.dim())
        raise(errc::dimension_mismatch, "op_val dims differ");
    Val best = Val::infinity();
    for (auto& [key, c] : phi.entries()) {
        Val v = c.val() + Val(monomial_val(key.first, to) - monomial_val(key.second, from));
        best = Val::min(best, v);
    }
    return best;
}

GradedOperator GradedOperator::single(ExtSubset s, FiniteOperator phi) {
    GradedOperator psi(phi.dim());
    psi.add_component(s, phi);
    return psi;
}

FiniteOperator GradedOperator::component(ExtSubset s) const {
    auto it = components_.find(s);
    return it == components_.end() ? FiniteOperator(dim_) : it->second;
}

void GradedOperator::add_component(ExtSubset s, const FiniteOperator& phi) {
    if (phi.dim() != dim_) raise(errc::dimension_mismatch, "component dim != operator dim");
    if (phi.is_zero()) return;
    auto it = components_.find(s);
    if (it == components_.end()) {
        components_.emplace(s, phi);
        return;
    }
    FiniteOperator sum = it->second + phi;
    if (sum.is_zero())
        components_.erase(it);
    else
        it->second = std::move(sum);
}

GradedOperator operator+(const GradedOperator& a, const GradedOperator& b) {
    if (a.dim_ != b.dim_) raise(errc::dimension_mismatch, "graded sum dims differ");
    GradedOperator r = a;
    for (auto& [s, phi] : b.components_) r.add_component(s, phi);
    return r;
}

GradedOperator operator-(const GradedOperator& a, const GradedOperator& b) {
    GradedOperator neg(b.dim_);
    for (auto& [s, phi] : b.components_) neg.add_component(s, -phi);
    return a + neg;
}

static GradedOperator differential_impl(const GradedOperator& psi, bool dual) {
    GradedOperator out(psi.dim());
    for (auto& [s, phi] : psi.components()) {
        for (int j = 1; j <= psi.dim(); ++j) {
            ExtSubset bit = 1u << (j - 1);
            if (s & bit) continue;
            FiniteOperator shifted =
                dual ? shift_conjugate_vec(phi, [&] {
                      IntVec w((size_t)psi.dim(), 0);
                      w[(size_t)(j - 1)] = -1;
                      return w;
                  }())
                     : shift_conjugate(phi, j);
            FiniteOperator diff = phi - shifted;
            if ((position_in(s, j) & 1) != 0) diff = -diff;
            out.add_component(s | bit, diff);
        }
    }
    return out;
}

GradedOperator differential(const GradedOperator& psi) { return differential_impl(psi, false); }
GradedOperator dual_differential(const GradedOperator& psi) { return differential_impl(psi, true); }

Val graded_op_val(const GradedOperator& psi, const AffinoidContext& from,
                  const AffinoidContext& to) {
    Val best = Val::infinity();
    for (auto& [s, phi] : psi.components()) best = Val::min(best, op_val(phi, from, to));
    return best;
}

LazyGraded lazy_of(const GradedOperator& psi) {
    return LazyGraded{psi.dim(), [psi](ExtSubset s, const IntVec& alpha) {
                          return psi.component(s).apply(alpha);
                      }};
}

LazyGraded lazy_sub(const LazyGraded& a, const LazyGraded& b) {
    if (a.dim != b.dim) raise(errc::dimension_mismatch, "lazy_sub dims differ");
    auto ea = a.eval, eb = b.eval;
    return LazyGraded{a.dim, [ea, eb](ExtSubset s, const IntVec& alpha) {
                          return ea(s, alpha) - eb(s, alpha);
                      }};
}

LazyGraded lazy_differential(const LazyGraded& psi, bool dual) {
    auto eval = psi.eval;
    int n = psi.dim;
    return LazyGraded{n, [eval, n, dual](ExtSubset s, const IntVec& alpha) {
                          LaurentElement out((int)alpha.size());
                          for (int j = 1; j <= n; ++j) {
                              ExtSubset bit = 1u << (j - 1);
                              if (!(s & bit)) continue;
                              ExtSubset src = s & ~bit;
                              LaurentElement direct = eval(src, alpha);
                              IntVec shifted_source = alpha;
                              shifted_source[(size_t)(j - 1)] += dual ? 1 : -1;
                              LaurentElement through = eval(src, shifted_source);
                              IntVec mono((size_t)n, 0);
                              mono[(size_t)(j - 1)] = dual ? -1 : 1;
                              LaurentElement term =
                                  direct - through * LaurentElement::monomial(mono, NovikovScalar::one());
                              if ((position_in(src, j) & 1) != 0) term = LaurentElement::zero(n) - term;
                              out = out + term;
                          }
                          return out;
                      }};
}

LaurentElement projection_eval(const GradedOperator& psi, const IntVec& alpha) {
    LaurentElement value_at_one = psi.component(0).apply(IntVec(alpha.size(), 0));
    return value_at_one * LaurentElement::monomial(alpha, NovikovScalar::one());
}

LazyGraded lazy_projection(const LazyGraded& psi) {
    auto eval = psi.eval;
    int n = psi.dim;
    return LazyGraded{n, [eval, n](ExtSubset s, const IntVec& alpha) {
                          if (s != 0) return LaurentElement::zero(n);
                          LaurentElement at_one = eval(0, IntVec((size_t)n, 0));
                          return at_one * LaurentElement::monomial(alpha, NovikovScalar::one());
                      }};
}

namespace {

// h_j of a single operator-evaluation oracle: the closed form of the
// one-variable recursion h psi(z^i) = psi(z^i) + z h psi(z^{i-1}).
LaurentElement axis_homotopy_eval(const std::function<LaurentElement(const IntVec&)>& eval, int n,
                                  int j, const IntVec& alpha) {
    std::int64_t aj = alpha[(size_t)(j - 1)];
    LaurentElement out(n);
    if (aj == 0) return out;
    auto add_term = [&](std::int64_t i) {
        IntVec source = alpha;
        source[(size_t)(j - 1)] -= i;
        LaurentElement value = eval(source);
        if (value.is_zero()) return;
        IntVec mono((size_t)n, 0);
        mono[(size_t)(j - 1)] = i;
        out = out + value * LaurentElement::monomial(mono, NovikovScalar::one());
    };
    if (aj > 0) {
        for (std::int64_t i = 0; i < aj; ++i) add_term(i);
    } else {
        for (std::int64_t i = aj; i <= -1; ++i) add_term(i);
        out = LaurentElement::zero(n) - out;
    }
    return out;
}

// Multiplication projection of the axes in `mask` applied after an
// evaluation: (pi_K phi)(z^alpha) = z^{alpha_K} phi(z^{alpha - alpha_K}).
LaurentElement project_axes_eval(const std::function<LaurentElement(const IntVec&)>& eval, int n,
                                 ExtSubset mask, const IntVec& alpha) {
    IntVec inner = alpha;
    IntVec outer((size_t)n, 0);
    for (int k = 1; k <= n; ++k) {
        if (mask & (1u << (k - 1))) {
            outer[(size_t)(k - 1)] = alpha[(size_t)(k - 1)];
            inner[(size_t)(k - 1)] = 0;
        }
    }
    LaurentElement value = eval(inner);
    if (value.is_zero()) return value;
    return value * LaurentElement::monomial(outer, NovikovScalar::one());
}

}  // namespace

LazyGraded lazy_inclusion_homotopy(const LazyGraded& psi, HomotopyForm form) {
    auto eval = psi.eval;
    int n = psi.dim;
    return LazyGraded{
        n, [eval, n, form](ExtSubset out_s, const IntVec& alpha) {
            LaurentElement out((int)alpha.size());
            for (int j = 1; j <= n; ++j) {
                ExtSubset bit = 1u << (j - 1);
                if (out_s & bit) continue;
                ExtSubset src = out_s | bit;
                if (form == HomotopyForm::staircase) {
                    // Only the smallest axis of the source label survives the
                    // projections of the earlier axes.
                    ExtSubset earlier = bit - 1;  // axes < j
                    if (out_s & earlier) continue;
                    auto phi_eval = [&](const IntVec& a) { return eval(src, a); };
                    auto h_eval = [&](const IntVec& a) {
                        return axis_homotopy_eval(phi_eval, n, j, a);
                    };
                    LaurentElement term = project_axes_eval(h_eval, n, earlier, alpha);
                    // position of j in out_s is 0 here, so no sign
                    out = out + term;
                } else {
                    auto phi_eval = [&](const IntVec& a) { return eval(src, a); };
                    LaurentElement term = axis_homotopy_eval(phi_eval, n, j, alpha);
                    if ((position_in(out_s, j) & 1) != 0) term = LaurentElement::zero(n) - term;
                    out = out + term;
                }
            }
            return out;
        }};
}

LaurentElement inclusion_homotopy_eval(const GradedOperator& psi, ExtSubset out, const IntVec& alpha,
                                       HomotopyForm form) {
    return lazy_inclusion_homotopy(lazy_of(psi), form).eval(out, alpha);
}

SeparationData find_axis_separation(const AffinoidContext& from, const AffinoidContext& to) {
    if (from.dim() != to.dim()) raise(errc::dimension_mismatch, "separation dims differ");
    for (int j = 1; j <= from.dim(); ++j) {
        IntVec e((size_t)from.dim(), 0);
        e[(size_t)(j - 1)] = 1;
        IntVec ne = e;
        ne[(size_t)(j - 1)] = -1;
        // from on the positive side: val_from(z_j) + val_to(z_j^{-1}) > 0
        Rational gap_pos = monomial_val(e, from) + monomial_val(ne, to);
        if (gap_pos.sign() > 0) return SeparationData{j, true, gap_pos};
        Rational gap_neg = monomial_val(ne, from) + monomial_val(e, to);
        if (gap_neg.sign() > 0) return SeparationData{j, false, gap_neg};
    }
    raise(errc::not_separated, "no coordinate axis separates the contexts");
}

GradedOperator disjoint_homotopy(const GradedOperator& psi, const AffinoidContext& from,
                                 const AffinoidContext& to, const Precision& prec) {
    SeparationData sep = find_axis_separation(from, to);
    const int j = sep.axis;
    const ExtSubset bit = 1u << (j - 1);
    // The homotopy identity pits this truncation against differentials along
    // the other axes; a single z_k-conjugation can drop op_val by -c_k, so
    // the series runs that much deeper than the requested cutoff.
    Rational spread(0);
    for (int k = 1; k <= psi.dim(); ++k) {
        if (k == j) continue;
        IntVec e((size_t)psi.dim(), 0), ne((size_t)psi.dim(), 0);
        e[(size_t)(k - 1)] = 1;
        ne[(size_t)(k - 1)] = -1;
        Rational ck = monomial_val(e, to) + monomial_val(ne, from);
        spread = Rational::max(spread, -ck);
    }
    const Rational cutoff = prec.cutoff + spread;
    GradedOperator out(psi.dim());
    for (auto& [s, phi] : psi.components()) {
        if (!(s & bit)) continue;
        ExtSubset dst = s & ~bit;
        int sign = (position_in(dst, j) & 1) ? -1 : 1;
        if (op_val(phi, from, to) >= Val(cutoff)) continue;
        // Conjugation direction with positive valuation gain per step; the
        // series telescopes against (1 - S_j):
        //   from positive side: h = -sum_{i>=1} S_j^{-i},
        //   from negative side: h = +sum_{i>=0} S_j^{+i}.
        // After keeping terms through index i the telescoped remainder is
        // the single conjugate S_j^{-i} phi (positive side) or S_j^{i+1} phi
        // (negative side); stop once its exact op_val clears the cutoff.
        std::int64_t dir = sep.from_positive ? -1 : 1;
        for (std::int64_t i = sep.from_positive ? 1 : 0;; ++i) {
            IntVec shift((size_t)psi.dim(), 0);
            shift[(size_t)(j - 1)] = dir * i;
            FiniteOperator term = shift_conjugate_vec(phi, shift);
            if (sep.from_positive) term = -term;
            if (sign < 0) term = -term;
            out.add_component(dst, term);
            IntVec rem_shift((size_t)psi.dim(), 0);
            rem_shift[(size_t)(j - 1)] = sep.from_positive ? -i : i + 1;
            if (op_val(shift_conjugate_vec(phi, rem_shift), from, to) >= Val(cutoff)) break;
        }
    }
    return out;
}

void Functional::add_entry(const IntVec& alpha, const NovikovScalar& c) {
    if ((int)alpha.size() != dim_) raise(errc::dimension_mismatch, "functional entry length");
    if (c.is_zero()) return;
    auto it = entries_.find(alpha);
    if (it == entries_.end()) {
        entries_.emplace(alpha, c);
        return;
    }
    NovikovScalar s = it->second + c;
    if (s.is_zero())
        entries_.erase(it);
    else
        it->second = std::move(s);
}

std::string Functional::str() const {
    if (entries_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [alpha, c] : entries_) {
        if (!first) out += " + ";
        first = false;
        out += "(" + c.str() + ")*rho[";
        for (size_t i = 0; i < alpha.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(alpha[i]);
        }
        out += "]";
    }
    return out;
}

std::string print_functional(const Functional& rho) { return rho.str(); }

NovikovScalar trace(const FiniteOperator& phi) {
    NovikovScalar t;
    for (auto& [key, c] : phi.entries())
        if (key.first == key.second) t = t + c;
    return t;
}

Functional eps(const FiniteOperator& phi) {
    Functional rho(phi.dim());
    for (auto& [key, c] : phi.entries()) {
        IntVec alpha(key.first.size());
        for (size_t i = 0; i < alpha.size(); ++i) alpha[i] = key.second[i] - key.first[i];
        rho.add_entry(alpha, c);
    }
    return rho;
}

FiniteOperator delta(const Functional& rho) {
    FiniteOperator phi(rho.dim());
    IntVec zero((size_t)rho.dim(), 0);
    for (auto& [alpha, c] : rho.entries()) phi.add_entry(zero, alpha, c);
    return phi;
}

FiniteOperator hbar_axis(const FiniteOperator& phi, int axis_j) {
    if (axis_j < 1 || axis_j > phi.dim()) raise(errc::invalid_argument, "axis out of range");
    FiniteOperator out(phi.dim());
    const size_t k = (size_t)(axis_j - 1);
    for (auto& [key, c] : phi.entries()) {
        std::int64_t image_grade = key.first[k];
        if (image_grade == 0) continue;  // image inside the range of delta
        if (image_grade >= 1) {
            for (std::int64_t t = 0; t < image_grade; ++t) {
                IntVec gamma = key.first, alpha = key.second;
                gamma[k] -= t;
                alpha[k] -= t;
                out.add_entry(gamma, alpha, c);
            }
        } else {
            for (std::int64_t t = image_grade; t <= -1; ++t) {
                IntVec gamma = key.first, alpha = key.second;
                gamma[k] -= t;
                alpha[k] -= t;
                out.add_entry(gamma, alpha, -c);
            }
        }
    }
    return out;
}

GradedOperator hbar(const GradedOperator& psi) {
    GradedOperator out(psi.dim());
    for (auto& [s, phi] : psi.components()) {
        for (int j = 1; j <= psi.dim(); ++j) {
            ExtSubset bit = 1u << (j - 1);
            if (!(s & bit)) continue;
            FiniteOperator term = hbar_axis(phi, j);
            if ((position_in(s & ~bit, j) & 1) != 0) term = -term;
            out.add_component(s & ~bit, term);
        }
    }
    return out;
}

HfClass classify_hf(const Polytope& p0, const Polytope& p1, const RatVec& basepoint) {
    if (p0.dim() != p1.dim()) raise(errc::dimension_mismatch, "classify_hf dims differ");
    HfClass out;
    SubsetFlags p1_in_p0 = is_subset(p1, p0);
    if (p1_in_p0.subset) {
        out.tag = HfTag::InclusionIso;
        out.description = "InclusionIso deg=0 ring=Gamma^" + p1.vertices_str();
        return out;
    }
    SubsetFlags p0_in_p1 = is_subset(p0, p1);
    if (p0_in_p1.subset && p0_in_p1.strict) {
        out.tag = HfTag::NestedDual;
        out.description = "NestedDual deg=" + std::to_string(p0.dim()) + " dual=Hom^c(Gamma^" +
                          p0.vertices_str() + ", Lambda)";
        return out;
    }
    if (!intersect(p0, p1).has_value()) {
        out.tag = HfTag::DisjointZero;
        std::string sep_text;
        try {
            SeparationData sep = find_axis_separation(AffinoidContext(p0, basepoint),
                                                      AffinoidContext(p1, basepoint));
            sep_text = "axis=" + std::to_string(sep.axis) + " gap=" + sep.gap.str();
        } catch (const Error&) {
            sep_text = "axis=none";
        }
        out.description = "DisjointZero " + sep_text;
        return out;
    }
    out.tag = HfTag::Unclassified;
    out.description = "Unclassified overlap=" +
                      (intersect(p0, p1).has_value() ? intersect(p0, p1)->vertices_str() : "[]");
    return out;
}

// ---- graded operator text form -------------------------------------------

namespace {

bool subset_order(ExtSubset a, ExtSubset b) {
    int sa = subset_size(a), sb = subset_size(b);
    if (sa != sb) return sa < sb;
    // same cardinality: lexicographic on the sorted element lists
    for (int j = 1; j <= 32; ++j) {
        bool ina = a & (1u << (j - 1)), inb = b & (1u << (j - 1));
        if (ina != inb) return ina;
    }
    return false;
}

}  // namespace

std::string GradedOperator::str() const {
    if (components_.empty()) return "0";
    std::vector<ExtSubset> keys;
    for (auto& [s, phi] : components_) keys.push_back(s);
    std::sort(keys.begin(), keys.end(), subset_order);
    std::string out;
    bool first = true;
    for (auto s : keys) {
        const FiniteOperator& phi = components_.at(s);
        for (auto& [key, c] : phi.entries()) {
            if (!first) out += " + ";
            first = false;
            out += "(" + c.str() + ")*e[";
            for (size_t i = 0; i < key.first.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(key.first[i]);
            }
            out += "][";
            for (size_t i = 0; i < key.second.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(key.second[i]);
            }
            out += "] ^ " + subset_str(s);
        }
    }
    return out;
}

GradedOperator GradedOperator::parse(const std::string& text, int dim) {
    GradedOperator out(dim);
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
    };
    skip();
    if (i < text.size() && text[i] == '0' && i + 1 >= text.size()) return out;
    bool first = true;
    while (true) {
        skip();
        if (i >= text.size()) break;
        int sign = 1;
        if (!first) {
            if (text[i] == '+') {
                ++i;
            } else if (text[i] == '-') {
                sign = -1;
                ++i;
            } else {
                raise(errc::parse_error, "expected '+' between operator terms at column " +
                                             std::to_string(i + 1));
            }
            skip();
        }
        first = false;
        if (i >= text.size() || text[i] != '(')
            raise(errc::parse_error, "expected '(' at column " + std::to_string(i + 1));
        size_t depth = 1, start = ++i;
        while (i < text.size() && depth > 0) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')') --depth;
            ++i;
        }
        if (depth != 0) raise(errc::parse_error, "unbalanced parentheses in operator term");
        NovikovScalar c = NovikovScalar::parse(text.substr(start, i - 1 - start));
        if (sign < 0) c = -c;
        skip();
        if (text.compare(i, 2, "*e") != 0)
            raise(errc::parse_error, "expected '*e' at column " + std::to_string(i + 1));
        i += 2;
        auto read_vec = [&]() {
            skip();
            if (i >= text.size() || text[i] != '[')
                raise(errc::parse_error, "expected '[' at column " + std::to_string(i + 1));
            size_t close = text.find(']', i);
            if (close == std::string::npos) raise(errc::parse_error, "unterminated exponent vector");
            IntVec v = parse_int_vec(text.substr(i, close - i + 1));
            i = close + 1;
            if ((int)v.size() != dim) raise(errc::parse_error, "exponent vector length != dim");
            return v;
        };
        IntVec gamma = read_vec();
        IntVec alpha = read_vec();
        skip();
        if (i >= text.size() || text[i] != '^')
            raise(errc::parse_error, "expected '^' at column " + std::to_string(i + 1));
        ++i;
        skip();
        if (text.compare(i, 2, "b{") != 0)
            raise(errc::parse_error, "expected 'b{' at column " + std::to_string(i + 1));
        i += 2;
        size_t close = text.find('}', i);
        if (close == std::string::npos) raise(errc::parse_error, "unterminated exterior label");
        std::string body = text.substr(i, close - i);
        i = close + 1;
        ExtSubset s = 0;
        size_t k = 0;
        while (k < body.size()) {
            while (k < body.size() && (std::isspace((unsigned char)body[k]) || body[k] == ','))
                ++k;
            if (k >= body.size()) break;
            size_t e = k;
            while (e < body.size() && std::isdigit((unsigned char)body[e])) ++e;
            if (e == k) raise(errc::parse_error, "bad exterior label");
            int axis = std::stoi(body.substr(k, e - k));
            if (axis < 1 || axis > dim) raise(errc::parse_error, "exterior axis out of range");
            s |= 1u << (axis - 1);
            k = e;
        }
        out.add_component(s, FiniteOperator::elementary(gamma, alpha, c));
        skip();
    }
    return out;
}

}  // namespace nova
