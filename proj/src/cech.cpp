#include "nova/cech.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nova/operator.hpp"

namespace nova {

CechComplex CechComplex::build(Cover cover, RatVec basepoint) {
    if ((int)basepoint.size() != cover.base().dim())
        raise(errc::dimension_mismatch, "basepoint length != base dim");
    CechComplex complex;
    complex.cover_ = std::move(cover);
    complex.basepoint_ = std::move(basepoint);
    const size_t m = complex.cover_.size();
    if (m > 20) raise(errc::invalid_argument, "cover too large for face enumeration");
    // subsets ordered by (size, lexicographic)
    std::vector<Face> by_size[21];
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        Face f;
        for (size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) f.push_back(i);
        std::optional<Polytope> poly = complex.cover_.piece(f[0]);
        for (size_t i = 1; i < f.size() && poly; ++i) poly = intersect(*poly, complex.cover_.piece(f[i]));
        if (!poly) continue;
        by_size[f.size()].push_back(f);
        complex.polytopes_.emplace(f, *poly);
    }
    for (size_t k = 1; k <= m; ++k) {
        std::sort(by_size[k].begin(), by_size[k].end());
        for (auto& f : by_size[k]) complex.faces_.push_back(f);
    }
    return complex;
}

const Polytope& CechComplex::face_polytope(const Face& f) const {
    auto it = polytopes_.find(f);
    if (it == polytopes_.end()) raise(errc::invalid_argument, "unknown face");
    return it->second;
}

AffinoidContext CechComplex::face_context(const Face& f) const {
    return AffinoidContext(face_polytope(f), basepoint_);
}

std::string CechComplex::face_name(const Face& f) const {
    std::string out = "{";
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) out += ",";
        out += cover_.names()[f[i]];
    }
    return out + "}";
}

LaurentElement CechCochain::value_or_zero(const Face& f, int dim) const {
    auto it = values.find(f);
    return it == values.end() ? LaurentElement::zero(dim) : it->second;
}

namespace {

// Exact signed sum of restrictions; truncation is the caller's business.
std::map<Face, LaurentElement> cech_differential_exact(const CechComplex& complex,
                                                       const CechCochain& c) {
    const int dim = complex.cover().base().dim();
    std::map<Face, LaurentElement> out;
    for (auto& [face, value] : c.values) {
        if (value.is_zero()) continue;
        for (size_t a = 0; a < complex.cover().size(); ++a) {
            if (std::binary_search(face.begin(), face.end(), a)) continue;
            Face target = face;
            auto pos = std::upper_bound(target.begin(), target.end(), a) - target.begin();
            target.insert(target.begin() + pos, a);
            if (!complex.has_face(target)) continue;
            LaurentElement signed_value = (pos % 2 == 0) ? value : -value;
            auto it = out.find(target);
            if (it == out.end())
                out.emplace(target, signed_value);
            else
                it->second = it->second + signed_value;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    (void)dim;
    return out;
}

}  // namespace

CechCochain cech_differential(const CechComplex& complex, const CechCochain& c) {
    CechCochain out;
    out.degree = c.degree + 1;
    out.precision = c.precision;
    for (auto& [face, value] : cech_differential_exact(complex, c)) {
        LaurentElement kept = truncate_P(value, complex.face_context(face), c.precision);
        if (!kept.is_zero()) out.values.emplace(face, kept);
    }
    return out;
}

CechCochain augment(const CechComplex& complex, const LaurentElement& f, const Precision& prec) {
    CechCochain out;
    out.degree = 0;
    out.precision = prec;
    for (size_t i = 0; i < complex.cover().size(); ++i) {
        Face face{i};
        if (!complex.has_face(face)) continue;
        LaurentElement kept = truncate_P(f, complex.face_context(face), prec);
        if (!kept.is_zero()) out.values.emplace(face, kept);
    }
    return out;
}

Val cocycle_defect(const CechComplex& complex, const CechCochain& c) {
    Val worst = Val::infinity();
    for (auto& [face, value] : cech_differential_exact(complex, c))
        worst = Val::min(worst, val_P(value, complex.face_context(face)));
    return worst;
}

// ---- two-term homotopy -----------------------------------------------------

IntVec split_grade_vector(const IntVec& u) {
    // sequential extended gcd: w with <u,w> = gcd(u) = 1
    IntVec w(u.size(), 0);
    std::int64_t g = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        if (g == 0) {
            g = u[i] < 0 ? -u[i] : u[i];
            w[i] = u[i] < 0 ? -1 : 1;
            continue;
        }
        // extended gcd of (g, u[i])
        std::int64_t a = g, b = u[i] < 0 ? -u[i] : u[i];
        std::int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
            t = y0 - q * y1;
            y0 = y1;
            y1 = t;
        }
        // a = x0 * g + y0 * |u[i]|
        for (auto& entry : w) entry *= x0;
        w[i] = u[i] < 0 ? -y0 : y0;
        g = a;
    }
    if (g != 1) raise(errc::invalid_argument, "split normal is not primitive");
    return w;
}

namespace {

std::int64_t grade_of(const IntVec& beta, const IntVec& w) {
    std::int64_t g = 0;
    for (size_t i = 0; i < beta.size(); ++i) g += beta[i] * w[i];
    return g;
}

// Split by the grade along w: first = grade >= 1, second = grade <= 0.
std::pair<LaurentElement, LaurentElement> grade_split(const LaurentElement& f, const IntVec& w) {
    LaurentElement plus(f.dim()), minus(f.dim());
    for (auto& [beta, c] : f.terms()) {
        if (grade_of(beta, w) >= 1)
            plus.add_term(beta, c);
        else
            minus.add_term(beta, c);
    }
    return {plus, minus};
}

}  // namespace

TwoTermCover make_two_term(const AffinoidContext& base, const SplitDatum& split) {
    TwoTermCover out{base, split, {}, {}, {}};
    auto result = laurent_split(base.polytope, split.normal, split.offset);
    out.plus = result.plus;
    out.minus = result.minus;
    out.overlap = result.overlap;
    return out;
}

std::pair<LaurentElement, LaurentElement> tate_homotopy_deg1(const TwoTermCover& cover,
                                                             const LaurentElement& f,
                                                             const Precision& prec) {
    IntVec w = split_grade_vector(cover.split.normal);
    auto [plus_part, minus_part] = grade_split(f, w);
    LaurentElement on_plus = plus_part;
    LaurentElement on_minus = -minus_part;
    if (cover.plus) on_plus = truncate_P(on_plus, AffinoidContext(*cover.plus, cover.base.basepoint), prec);
    if (cover.minus)
        on_minus = truncate_P(on_minus, AffinoidContext(*cover.minus, cover.base.basepoint), prec);
    return {on_plus, on_minus};
}

LaurentElement tate_homotopy_deg0(const TwoTermCover& cover, const LaurentElement& on_plus,
                                  const LaurentElement& on_minus, const Precision& prec) {
    IntVec w = split_grade_vector(cover.split.normal);
    LaurentElement from_plus = grade_split(on_plus, w).second;   // F_-
    LaurentElement from_minus = grade_split(on_minus, w).first;  // G_+
    return truncate_P(from_plus + from_minus, cover.base, prec);
}

// ---- Laurent covers ---------------------------------------------------------

LaurentCechData make_laurent_complex(const AffinoidContext& base,
                                     const std::vector<SplitDatum>& splits) {
    std::vector<std::string> names;
    std::vector<Polytope> pieces;
    std::vector<SplitDatum> kept;
    for (auto& s : splits) {
        Rational lo = base.polytope.support_min(s.normal);
        Rational hi = base.polytope.support_max(s.normal);
        if (!(lo < s.offset && s.offset < hi)) continue;  // does not cut the base
        auto result = laurent_split(base.polytope, s.normal, s.offset);
        size_t m = kept.size();
        names.push_back("m" + std::to_string(m) + "-");
        pieces.push_back(*result.minus);
        names.push_back("m" + std::to_string(m) + "+");
        pieces.push_back(*result.plus);
        kept.push_back(s);
    }
    if (kept.empty()) {
        names.push_back("all");
        pieces.push_back(base.polytope);
    }
    Cover cover = Cover::build(base.polytope, std::move(names), std::move(pieces), {}, true);
    LaurentCechData data{CechComplex::build(std::move(cover), base.basepoint), std::move(kept)};
    return data;
}

namespace {

// The contraction needs the whole face lattice of the split family; a
// missing (empty) combined face would collapse a summand to the zero ring
// and the representative formulas would not descend.
void require_full_lattice(const LaurentCechData& data) {
    size_t m = data.splits.size();
    size_t expected = 1;
    for (size_t i = 0; i < m; ++i) expected *= 4;
    if (data.complex.faces().size() + 1 != expected)
        raise(errc::not_laurent_cover,
              "split family has empty combined cells; contraction formulas do not apply");
}

// slot state of a face: 0 absent, 1 minus, 2 plus, 3 both
int slot_state(const Face& face, size_t slot) {
    bool has_minus = std::binary_search(face.begin(), face.end(), 2 * slot);
    bool has_plus = std::binary_search(face.begin(), face.end(), 2 * slot + 1);
    return (has_minus ? 1 : 0) | (has_plus ? 2 : 0);
}

Face with_slot_state(const Face& face, size_t slot, int state) {
    Face out;
    for (auto i : face)
        if (i != 2 * slot && i != 2 * slot + 1) out.push_back(i);
    if (state & 1) out.push_back(2 * slot);
    if (state & 2) out.push_back(2 * slot + 1);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CechCochain laurent_homotopy(const LaurentCechData& data, const CechCochain& c,
                             const Precision& prec) {
    require_full_lattice(data);
    CechCochain out;
    out.degree = c.degree - 1;
    out.precision = prec;
    if (data.splits.empty() || c.degree < 1) return out;
    IntVec w = split_grade_vector(data.splits[0].normal);
    std::map<Face, LaurentElement> acc;
    auto add = [&](const Face& face, const LaurentElement& v) {
        if (v.is_zero()) return;
        auto it = acc.find(face);
        if (it == acc.end())
            acc.emplace(face, v);
        else
            it->second = it->second + v;
    };
    for (auto& [face, value] : c.values) {
        int state = slot_state(face, 0);
        if (state == 3) {
            auto [ge1, le0] = grade_split(value, w);
            add(with_slot_state(face, 0, 2), ge1);   // F_+ on the plus side
            add(with_slot_state(face, 0, 1), -le0);  // -F_- on the minus side
        } else if (state == 2) {
            add(with_slot_state(face, 0, 0), grade_split(value, w).second);  // F_-
        } else if (state == 1) {
            add(with_slot_state(face, 0, 0), grade_split(value, w).first);  // G_+
        }
    }
    for (auto& [face, value] : acc) {
        if (face.empty()) continue;  // the corner belongs to laurent_contract
        LaurentElement kept = truncate_P(value, data.complex.face_context(face), prec);
        if (!kept.is_zero()) out.values.emplace(face, kept);
    }
    return out;
}

LaurentElement laurent_contract(const LaurentCechData& data, const CechCochain& c,
                                const Precision& prec) {
    const int dim = data.complex.cover().base().dim();
    AffinoidContext base_ctx(data.complex.cover().base(), data.complex.basepoint());
    if (c.degree != 0) raise(errc::invalid_argument, "laurent_contract expects a degree-0 cochain");
    if (data.splits.empty()) {
        // trivial cover by the base itself
        Face face{0};
        return truncate_P(c.value_or_zero(face, dim), base_ctx, prec);
    }
    IntVec w = split_grade_vector(data.splits[0].normal);
    LaurentElement on_minus = c.value_or_zero(Face{0}, dim);
    LaurentElement on_plus = c.value_or_zero(Face{1}, dim);
    LaurentElement glued = grade_split(on_plus, w).second + grade_split(on_minus, w).first;
    return truncate_P(glued, base_ctx, prec);
}

LaurentElement h0_reconstruct(const CechComplex& complex, const CechCochain& c,
                              const Precision& prec) {
    if (c.degree != 0) raise(errc::invalid_argument, "h0_reconstruct expects a degree-0 cochain");
    Val defect = cocycle_defect(complex, c);
    if (defect < Val(prec.cutoff))
        raise(errc::not_a_cocycle,
              "input is not a cocycle at the requested precision (defect val " + defect.str() + ")");
    const int dim = complex.cover().base().dim();
    std::vector<SplitDatum> splits = laurent_refinement(complex.cover());

    // Iterated two-term contraction: descend the split tree, read the cell
    // values off the pieces covering them, and glue with F_- + G_+ on the
    // way back up.
    std::function<LaurentElement(const Polytope&, size_t)> rec =
        [&](const Polytope& cell, size_t idx) -> LaurentElement {
        if (idx == splits.size()) {
            for (size_t i = 0; i < complex.cover().size(); ++i) {
                if (is_subset(cell, complex.cover().piece(i)).subset) {
                    return c.value_or_zero(Face{i}, dim);
                }
            }
            raise(errc::refinement_failure,
                  "cell not contained in any piece; vertices " + cell.vertices_str());
        }
        const auto& s = splits[idx];
        Rational lo = cell.support_min(s.normal);
        Rational hi = cell.support_max(s.normal);
        if (!(lo < s.offset && s.offset < hi)) return rec(cell, idx + 1);
        auto split = laurent_split(cell, s.normal, s.offset);
        LaurentElement on_plus = rec(*split.plus, idx + 1);
        LaurentElement on_minus = rec(*split.minus, idx + 1);
        IntVec w = split_grade_vector(s.normal);
        return grade_split(on_plus, w).second + grade_split(on_minus, w).first;
    };
    LaurentElement glued = rec(complex.cover().base(), 0);
    AffinoidContext base_ctx(complex.cover().base(), complex.basepoint());
    return truncate_P(glued, base_ctx, prec);
}

CechCochain h1_witness(const CechComplex& complex, const CechCochain& c, const Precision& prec) {
    if (c.degree != 1) raise(errc::invalid_argument, "h1_witness expects a degree-1 cochain");
    Val defect = cocycle_defect(complex, c);
    if (defect < Val(prec.cutoff))
        raise(errc::not_a_cocycle,
              "input is not a cocycle at the requested precision (defect val " + defect.str() + ")");
    const int dim = complex.cover().base().dim();
    const size_t m = complex.cover().size();

    // spanning tree of the nerve: b_j - b_i = c_{ij} along tree edges
    std::vector<bool> assigned(m, false);
    std::vector<LaurentElement> b(m, LaurentElement(dim));
    std::vector<size_t> queue;
    assigned[0] = true;
    queue.push_back(0);
    while (!queue.empty()) {
        size_t i = queue.back();
        queue.pop_back();
        for (size_t j = 0; j < m; ++j) {
            if (assigned[j]) continue;
            Face edge{std::min(i, j), std::max(i, j)};
            if (!complex.has_face(edge)) continue;
            LaurentElement value = c.value_or_zero(edge, dim);
            // differential convention: (dc)_{ij} = b_j - b_i for i < j
            b[j] = (i < j) ? b[i] + value : b[i] - value;
            assigned[j] = true;
            queue.push_back(j);
        }
    }
    for (size_t i = 0; i < m; ++i)
        if (!assigned[i])
            raise(errc::not_a_cover, "nerve of the cover is disconnected at piece " +
                                         complex.cover().names()[i]);

    // every overlap, tree edge or not, must agree at precision
    CechCochain out;
    out.degree = 0;
    out.precision = prec;
    for (size_t i = 0; i < m; ++i) {
        Face face{i};
        LaurentElement kept = truncate_P(b[i], complex.face_context(face), prec);
        if (!kept.is_zero()) out.values.emplace(face, kept);
    }
    CechCochain back = cech_differential(complex, out);
    for (auto& face : complex.faces()) {
        if (face.size() != 2) continue;
        LaurentElement diff = back.value_or_zero(face, dim) - c.value_or_zero(face, dim);
        Val residual = val_P(diff, complex.face_context(face));
        if (residual < Val(prec.cutoff))
            raise(errc::not_a_cocycle, "sampled class is nontrivial: overlap " +
                                           complex.face_name(face) + " disagrees at val " +
                                           residual.str());
    }
    return out;
}

// ---- locality ----------------------------------------------------------------

LocalityReport locality_check(const Polytope& p, const Polytope& pprime, const Polytope& ppp,
                              const Polytope& nu, const RatVec& basepoint, const Precision& prec,
                              int samples) {
    (void)prec;
    if (p.dim() != pprime.dim() || p.dim() != ppp.dim() || p.dim() != nu.dim())
        raise(errc::dimension_mismatch, "locality_check dims differ");
    if (!is_subset(ppp, pprime).subset)
        raise(errc::precondition_violated, "P'' is not contained in P'");
    if (!is_subset(p, nu).subset)
        raise(errc::precondition_violated, "nu is not a neighbourhood of P");
    auto pprime_nu = intersect(pprime, nu);
    auto ppp_nu = intersect(ppp, nu);
    bool agree = (!pprime_nu && !ppp_nu) ||
                 (pprime_nu && ppp_nu && *pprime_nu == *ppp_nu);
    if (!agree)
        raise(errc::precondition_violated, "P' and P'' do not agree on the neighbourhood nu");

    std::ostringstream report;
    report << "locality pieces:\n";
    std::vector<Polytope> pieces{ppp};
    report << "  piece 0 (P''): " << ppp.vertices_str() << "\n";
    for (auto& facet : ppp.constraints()) {
        // region of P' beyond this facet of P''
        if (!(pprime.support_min(facet.normal) < facet.offset)) continue;
        Rational min_over_p = p.support_min(facet.normal);
        if (!(facet.offset < min_over_p)) {
            return LocalityReport{false,
                                  "FAIL facet ineq " + print_int_vec(facet.normal) + " >= " +
                                      facet.offset.str() +
                                      ": no piece can cover beyond it while avoiding P"};
        }
        Rational mu = (facet.offset + min_over_p) / Rational(2);
        IntVec neg(facet.normal.size());
        for (size_t i = 0; i < facet.normal.size(); ++i) neg[i] = -facet.normal[i];
        std::vector<Halfspace> cs = pprime.constraints();
        cs.push_back(Halfspace::make(neg, -mu));
        Polytope piece = Polytope::from_halfspaces(p.dim(), std::move(cs));
        report << "  piece " << pieces.size() << ": " << piece.vertices_str() << "\n";
        pieces.push_back(piece);
    }
    if (auto witness = uncovered_cell(pprime, pieces); witness.has_value()) {
        return LocalityReport{false, "FAIL cover: uncovered cell " + witness->vertices_str()};
    }
    report << "cover of P' verified (exact cell decomposition)\n";

    // sampled double check on rational convex combinations of P' vertices
    int checked = 0;
    const auto& verts = pprime.vertices();
    for (int s = 0; s < samples && !verts.empty(); ++s) {
        size_t i = (size_t)(s % (int)verts.size());
        size_t j = (size_t)((s * 7 + 3) % (int)verts.size());
        Rational t((s % 5) + 1, 7);
        RatVec point(verts[i].size());
        for (size_t k = 0; k < point.size(); ++k)
            point[k] = verts[i][k] * (Rational(1) - t) + verts[j][k] * t;
        bool inside = false;
        for (auto& piece : pieces)
            if (piece.contains(point)) inside = true;
        if (!inside)
            return LocalityReport{false, "FAIL sample point " + print_rat_vec(point) +
                                             " not covered"};
        ++checked;
    }
    report << "sampled points covered: " << checked << "\n";

    for (size_t i = 1; i < pieces.size(); ++i) {
        HfClass cls = classify_hf(p, pieces[i], basepoint);
        if (cls.tag != HfTag::DisjointZero) {
            return LocalityReport{false, "FAIL piece " + std::to_string(i) +
                                             " does not avoid P: " + cls.description};
        }
        report << "  HF(P, piece " << i << "): " << cls.description << "\n";
    }
    report << "identification: HF*(P,P'') -> HF*(P,P') via the extended cover\n";
    return LocalityReport{true, report.str()};
}

// ---- text forms ---------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) ++b;
    while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
    return s.substr(b, e - b);
}

}  // namespace

Cover parse_cover_file(const std::string& text, RatVec* basepoint_out) {
    std::istringstream in(text);
    std::string line;
    std::optional<ParsedPolytope> base;
    std::vector<std::string> names;
    std::vector<Polytope> pieces;
    std::vector<std::pair<std::string, std::string>> rels;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        try {
            if (line.rfind("base:", 0) == 0) {
                base = parse_polytope(trim(line.substr(5)));
            } else if (line.rfind("piece", 0) == 0) {
                size_t colon = line.find(':');
                if (colon == std::string::npos) raise(errc::parse_error, "piece line missing ':'");
                std::string name = trim(line.substr(5, colon - 5));
                if (name.empty()) raise(errc::parse_error, "piece line missing name");
                names.push_back(name);
                pieces.push_back(parse_polytope(trim(line.substr(colon + 1))).poly);
            } else if (line.rfind("rel", 0) == 0) {
                size_t arrow = line.find("<=");
                if (arrow == std::string::npos) raise(errc::parse_error, "rel line missing '<='");
                rels.push_back({trim(line.substr(3, arrow - 3)), trim(line.substr(arrow + 2))});
            } else {
                raise(errc::parse_error, "unknown cover line");
            }
        } catch (const Error& e) {
            if (e.code() != errc::parse_error) throw;
            raise(errc::parse_error, "cover file line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!base) raise(errc::parse_error, "cover file missing base");
    if (basepoint_out) *basepoint_out = base->basepoint;
    return Cover::build(base->poly, std::move(names), std::move(pieces), rels, true);
}

std::string print_cover(const Cover& cover, const RatVec& basepoint) {
    std::string out = "base: " + print_polytope(cover.base(), basepoint) + "\n";
    for (size_t i = 0; i < cover.size(); ++i)
        out += "piece " + cover.names()[i] + ": " + print_polytope(cover.piece(i), basepoint) + "\n";
    for (auto& [tau, sigma] : cover.relations())
        if (tau != sigma)
            out += "rel " + cover.names()[tau] + " <= " + cover.names()[sigma] + "\n";
    return out;
}

CechCochain parse_cochain_file(const std::string& text, const CechComplex& complex,
                               const Precision& prec) {
    std::istringstream in(text);
    std::string line;
    CechCochain c;
    c.precision = prec;
    int degree = -2;
    int line_no = 0;
    const int dim = complex.cover().base().dim();
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        try {
            if (line.rfind("face", 0) != 0) raise(errc::parse_error, "expected 'face' line");
            size_t open = line.find('{'), close = line.find('}');
            if (open == std::string::npos || close == std::string::npos || close < open)
                raise(errc::parse_error, "face line missing {...}");
            std::string body = line.substr(open + 1, close - open - 1);
            Face face;
            std::istringstream names(body);
            std::string name;
            while (std::getline(names, name, ',')) {
                name = trim(name);
                if (!name.empty()) face.push_back(complex.cover().index_of(name));
            }
            std::sort(face.begin(), face.end());
            if (!complex.has_face(face))
                raise(errc::parse_error,
                      "face " + complex.face_name(face) + " is not in the complex");
            size_t colon = line.find(':', close);
            if (colon == std::string::npos) raise(errc::parse_error, "face line missing ':'");
            LaurentElement value = LaurentElement::parse(trim(line.substr(colon + 1)), dim);
            if (degree == -2)
                degree = (int)face.size() - 1;
            else if (degree != (int)face.size() - 1)
                raise(errc::parse_error, "cochain mixes face degrees");
            if (!value.is_zero()) c.values.emplace(std::move(face), std::move(value));
        } catch (const Error& e) {
            if (e.code() != errc::parse_error && e.code() != errc::invalid_argument) throw;
            raise(errc::parse_error,
                  "cochain file line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    c.degree = degree == -2 ? 0 : degree;
    return c;
}

std::string print_cochain(const CechComplex& complex, const CechCochain& c) {
    std::string out;
    for (auto& face : complex.faces()) {
        if ((int)face.size() - 1 != c.degree) continue;
        auto it = c.values.find(face);
        std::string value = (it == c.values.end()) ? "0" : it->second.str();
        out += "face " + complex.face_name(face) + ": " + value + "\n";
    }
    return out;
}

}  // namespace nova
