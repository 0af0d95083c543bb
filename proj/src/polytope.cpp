#include "nova/polytope.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace nova {

Rational dot(const IntVec& a, const RatVec& p) {
    if (a.size() != p.size()) raise(errc::dimension_mismatch, "vector lengths differ");
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += p[i] * Rational(a[i]);
    return s;
}

static std::int64_t vec_gcd(const IntVec& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

Halfspace Halfspace::make(IntVec normal, Rational offset) {
    std::int64_t g = vec_gcd(normal);
    if (g == 0) raise(errc::zero_normal, "halfspace normal is the zero vector");
    if (g > 1) {
        for (auto& x : normal) x /= g;
        offset = offset / Rational(g);
    }
    return Halfspace{std::move(normal), std::move(offset)};
}

namespace {

// Exact solve of a square rational system; nullopt when singular.
std::optional<RatVec> solve_square(std::vector<RatVec> m, RatVec rhs) {
    const size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        Rational inv = m[col][col].inverse();
        for (size_t j = col; j < n; ++j) m[col][j] *= inv;
        rhs[col] *= inv;
        for (size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            Rational f = m[row][col];
            for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
            rhs[row] -= f * rhs[col];
        }
    }
    return rhs;
}

// Basis of the kernel of the row space (exact).
std::vector<RatVec> kernel_basis(std::vector<RatVec> m, size_t n) {
    size_t rows = m.size();
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t col = 0; col < n && r < rows; ++col) {
        size_t pivot = r;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[r]);
        Rational inv = m[r][col].inverse();
        for (size_t j = 0; j < n; ++j) m[r][j] *= inv;
        for (size_t row = 0; row < rows; ++row) {
            if (row == r || m[row][col].is_zero()) continue;
            Rational f = m[row][col];
            for (size_t j = 0; j < n; ++j) m[row][j] -= f * m[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVec v(n, Rational(0));
        v[free_col] = Rational(1);
        for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool next_subset(std::vector<size_t>& idx, size_t m) {
    size_t k = idx.size();
    for (size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < m) {
            ++idx[i];
            for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Nonzero recession direction of the constraint cone, if one exists.
std::optional<RatVec> recession_direction(int dim, const std::vector<Halfspace>& cs) {
    const size_t n = (size_t)dim;
    auto admissible = [&](const RatVec& d) -> bool {
        bool nonzero = false;
        for (auto& x : d)
            if (!x.is_zero()) nonzero = true;
        if (!nonzero) return false;
        for (auto& h : cs)
            if (dot(h.normal, d).sign() < 0) return false;
        return true;
    };
    auto as_rows = [&](const std::vector<size_t>& idx) {
        std::vector<RatVec> rows;
        for (auto i : idx) {
            RatVec row(n);
            for (size_t j = 0; j < n; ++j) row[j] = Rational(cs[i].normal[j]);
            rows.push_back(std::move(row));
        }
        return rows;
    };
    // Extreme rays of a pointed cone lie on n-1 independent active
    // constraints; lines lie in the kernel of the full normal matrix.
    std::vector<std::vector<size_t>> subsets;
    if (n >= 1) {
        if (n == 1) {
            subsets.push_back({});
        } else {
            std::vector<size_t> idx(n - 1);
            std::iota(idx.begin(), idx.end(), 0);
            if (idx.back() < cs.size()) {
                do {
                    subsets.push_back(idx);
                } while (next_subset(idx, cs.size()));
            }
        }
    }
    for (auto& sub : subsets) {
        for (auto& d : kernel_basis(as_rows(sub), n)) {
            if (admissible(d)) return d;
            RatVec neg(n);
            for (size_t j = 0; j < n; ++j) neg[j] = -d[j];
            if (admissible(neg)) return neg;
        }
    }
    std::vector<size_t> all(cs.size());
    std::iota(all.begin(), all.end(), 0);
    for (auto& d : kernel_basis(as_rows(all), n))
        if (admissible(d)) return d;
    return std::nullopt;
}

}  // namespace

Polytope Polytope::from_halfspaces(int dim, std::vector<Halfspace> constraints) {
    if (dim < 1) raise(errc::invalid_argument, "polytope dimension must be positive");
    if (constraints.empty()) raise(errc::invalid_argument, "constraint list is empty");
    for (auto& h : constraints) {
        if ((int)h.normal.size() != dim) raise(errc::dimension_mismatch, "normal length != dim");
        h = Halfspace::make(h.normal, h.offset);
    }
    std::sort(constraints.begin(), constraints.end());
    constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());

    if (auto d = recession_direction(dim, constraints); d.has_value())
        raise(errc::unbounded_polytope, "constraints admit an unbounded direction");

    const size_t n = (size_t)dim, m = constraints.size();
    std::vector<RatVec> verts;
    if (m >= n) {
        std::vector<size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            std::vector<RatVec> rows;
            RatVec rhs;
            for (auto i : idx) {
                RatVec row(n);
                for (size_t j = 0; j < n; ++j) row[j] = Rational(constraints[i].normal[j]);
                rows.push_back(std::move(row));
                rhs.push_back(constraints[i].offset);
            }
            auto x = solve_square(rows, rhs);
            if (!x) continue;
            bool feasible = true;
            for (auto& h : constraints) {
                if (dot(h.normal, *x) < h.offset) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) verts.push_back(*x);
        } while (next_subset(idx, m));
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.empty()) raise(errc::empty_polytope, "constraints have no feasible point");

    Polytope p;
    p.dim_ = dim;
    p.constraints_ = std::move(constraints);
    p.vertices_ = std::move(verts);
    return p;
}

bool Polytope::contains(const RatVec& p) const {
    for (auto& h : constraints_)
        if (dot(h.normal, p) < h.offset) return false;
    return true;
}

bool Polytope::contains_strictly(const RatVec& p) const {
    for (auto& h : constraints_)
        if (dot(h.normal, p) <= h.offset) return false;
    return true;
}

Rational Polytope::support_min(const IntVec& beta) const {
    if ((int)beta.size() != dim_) raise(errc::dimension_mismatch, "functional length != dim");
    Rational best = dot(beta, vertices_[0]);
    for (size_t i = 1; i < vertices_.size(); ++i) best = Rational::min(best, dot(beta, vertices_[i]));
    return best;
}

Rational Polytope::support_max(const IntVec& beta) const {
    IntVec neg(beta.size());
    for (size_t i = 0; i < beta.size(); ++i) neg[i] = -beta[i];
    return -support_min(neg);
}

std::string Polytope::vertices_str() const {
    std::string out = "[";
    for (size_t i = 0; i < vertices_.size(); ++i) {
        if (i) out += ", ";
        if (dim_ == 1) {
            out += vertices_[i][0].str();
        } else {
            out += "(";
            for (int j = 0; j < dim_; ++j) {
                if (j) out += ", ";
                out += vertices_[i][j].str();
            }
            out += ")";
        }
    }
    return out + "]";
}

SubsetFlags is_subset(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) raise(errc::dimension_mismatch, "is_subset dims differ");
    SubsetFlags f;
    f.subset = true;
    f.strict = true;
    for (auto& v : p.vertices()) {
        for (auto& h : q.constraints()) {
            Rational value = dot(h.normal, v);
            if (value < h.offset) {
                f.subset = false;
                f.strict = false;
                return f;
            }
            if (value == h.offset) f.strict = false;
        }
    }
    return f;
}

std::optional<Polytope> intersect(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) raise(errc::dimension_mismatch, "intersect dims differ");
    std::vector<Halfspace> cs = p.constraints();
    cs.insert(cs.end(), q.constraints().begin(), q.constraints().end());
    try {
        return Polytope::from_halfspaces(p.dim(), std::move(cs));
    } catch (const Error& e) {
        if (e.code() == errc::empty_polytope) return std::nullopt;
        throw;
    }
}

LaurentSplitResult laurent_split(const Polytope& p, const IntVec& u, const Rational& lambda) {
    if ((int)u.size() != p.dim()) raise(errc::dimension_mismatch, "split normal length != dim");
    if (vec_gcd(u) == 0) raise(errc::zero_normal, "split normal is zero");
    IntVec neg(u.size());
    for (size_t i = 0; i < u.size(); ++i) neg[i] = -u[i];
    auto with = [&](const Halfspace& h) -> std::optional<Polytope> {
        std::vector<Halfspace> cs = p.constraints();
        cs.push_back(h);
        try {
            return Polytope::from_halfspaces(p.dim(), std::move(cs));
        } catch (const Error& e) {
            if (e.code() == errc::empty_polytope) return std::nullopt;
            throw;
        }
    };
    LaurentSplitResult r;
    r.plus = with(Halfspace::make(u, lambda));
    r.minus = with(Halfspace::make(neg, -lambda));
    if (r.plus && r.minus) r.overlap = intersect(*r.plus, *r.minus);
    return r;
}

static SplitDatum canonical_split(IntVec normal, Rational offset) {
    std::int64_t g = vec_gcd(normal);
    if (g > 1) {
        for (auto& x : normal) x /= g;
        offset = offset / Rational(g);
    }
    for (auto x : normal) {
        if (x > 0) break;
        if (x < 0) {
            for (auto& y : normal) y = -y;
            offset = -offset;
            break;
        }
    }
    return SplitDatum{std::move(normal), std::move(offset)};
}

static void cells_rec(const Polytope& cell, const std::vector<SplitDatum>& splits, size_t i,
                      std::vector<Polytope>& out) {
    if (i == splits.size()) {
        out.push_back(cell);
        return;
    }
    const auto& s = splits[i];
    Rational lo = cell.support_min(s.normal);
    Rational hi = cell.support_max(s.normal);
    if (lo < s.offset && s.offset < hi) {
        auto split = laurent_split(cell, s.normal, s.offset);
        cells_rec(*split.plus, splits, i + 1, out);
        cells_rec(*split.minus, splits, i + 1, out);
    } else {
        cells_rec(cell, splits, i + 1, out);
    }
}

std::vector<Polytope> enumerate_cells(const Polytope& base, const std::vector<SplitDatum>& splits) {
    std::vector<Polytope> out;
    cells_rec(base, splits, 0, out);
    return out;
}

std::optional<Polytope> uncovered_cell(const Polytope& base, const std::vector<Polytope>& pieces) {
    std::set<SplitDatum> split_set;
    for (auto& piece : pieces)
        for (auto& h : piece.constraints()) split_set.insert(canonical_split(h.normal, h.offset));
    std::vector<SplitDatum> splits;
    for (auto& s : split_set) {
        Rational lo = base.support_min(s.normal);
        Rational hi = base.support_max(s.normal);
        if (lo < s.offset && s.offset < hi) splits.push_back(s);
    }
    for (auto& cell : enumerate_cells(base, splits)) {
        bool inside = false;
        for (auto& piece : pieces) {
            if (is_subset(cell, piece).subset) {
                inside = true;
                break;
            }
        }
        if (!inside) return cell;
    }
    return std::nullopt;
}

Cover Cover::build(Polytope base, std::vector<std::string> names, std::vector<Polytope> pieces,
                   const std::vector<std::pair<std::string, std::string>>& relations,
                   bool infer_relations) {
    if (names.size() != pieces.size()) raise(errc::invalid_argument, "names/pieces size mismatch");
    if (pieces.empty()) raise(errc::invalid_argument, "cover has no pieces");
    for (auto& piece : pieces) {
        if (piece.dim() != base.dim()) raise(errc::dimension_mismatch, "piece dim != base dim");
        if (!is_subset(piece, base).subset)
            raise(errc::not_a_cover, "piece is not contained in the base polytope");
    }
    if (auto witness = uncovered_cell(base, pieces); witness.has_value())
        raise(errc::not_a_cover, "pieces do not cover the base; uncovered cell with vertices " +
                                     witness->vertices_str());

    Cover c;
    c.base_ = std::move(base);
    c.names_ = std::move(names);
    c.pieces_ = std::move(pieces);
    for (size_t i = 0; i < c.pieces_.size(); ++i) c.relations_.insert({i, i});
    if (infer_relations) {
        for (size_t tau = 0; tau < c.pieces_.size(); ++tau)
            for (size_t sigma = 0; sigma < c.pieces_.size(); ++sigma)
                if (tau != sigma && is_subset(c.pieces_[sigma], c.pieces_[tau]).subset &&
                    c.pieces_[sigma] != c.pieces_[tau])
                    c.relations_.insert({tau, sigma});
    }
    for (auto& [tname, sname] : relations) {
        size_t tau = c.index_of(tname), sigma = c.index_of(sname);
        if (!is_subset(c.pieces_[sigma], c.pieces_[tau]).subset)
            raise(errc::not_a_cover,
                  "declared relation " + tname + " <= " + sname + " violates inclusion");
        c.relations_.insert({tau, sigma});
    }
    // transitive closure
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& r1 : c.relations_)
            for (auto& r2 : c.relations_)
                if (r1.second == r2.first && !c.relations_.count({r1.first, r2.second})) {
                    c.relations_.insert({r1.first, r2.second});
                    changed = true;
                }
    }
    return c;
}

size_t Cover::index_of(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    raise(errc::invalid_argument, "unknown cover piece '" + name + "'");
}

bool Cover::leq(size_t tau, size_t sigma) const { return relations_.count({tau, sigma}) > 0; }

std::vector<SplitDatum> laurent_refinement(const Cover& cover) {
    std::set<SplitDatum> split_set;
    for (size_t i = 0; i < cover.size(); ++i)
        for (auto& h : cover.piece(i).constraints())
            split_set.insert(canonical_split(h.normal, h.offset));
    std::vector<SplitDatum> splits;
    for (auto& s : split_set) {
        Rational lo = cover.base().support_min(s.normal);
        Rational hi = cover.base().support_max(s.normal);
        if (lo < s.offset && s.offset < hi) splits.push_back(s);
    }
    for (auto& cell : enumerate_cells(cover.base(), splits)) {
        bool inside = false;
        for (size_t i = 0; i < cover.size(); ++i) {
            if (is_subset(cell, cover.piece(i)).subset) {
                inside = true;
                break;
            }
        }
        if (!inside)
            raise(errc::refinement_failure,
                  "Laurent cell not contained in any piece; cell vertices " + cell.vertices_str());
    }
    return splits;
}

// ---- text forms ----------------------------------------------------------

namespace {

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
}

Rational parse_rat_token(const std::string& s, size_t& i) {
    skip_ws(s, i);
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (i < s.size() && s[i] == '/') {
        ++i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    }
    std::string tok = s.substr(start, i - start);
    if (tok.empty() || tok == "-" || tok == "+")
        raise(errc::parse_error, "expected rational at column " + std::to_string(start + 1));
    auto slash = tok.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(tok));
    return Rational(std::stoll(tok.substr(0, slash)), std::stoll(tok.substr(slash + 1)));
}

std::vector<Rational> parse_bracket_rats(const std::string& s, size_t& i) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != '[')
        raise(errc::parse_error, "expected '[' at column " + std::to_string(i + 1));
    ++i;
    std::vector<Rational> out;
    skip_ws(s, i);
    if (i < s.size() && s[i] == ']') {
        ++i;
        return out;
    }
    while (true) {
        out.push_back(parse_rat_token(s, i));
        skip_ws(s, i);
        if (i < s.size() && s[i] == ',') {
            ++i;
            continue;
        }
        if (i < s.size() && s[i] == ']') {
            ++i;
            return out;
        }
        raise(errc::parse_error, "expected ',' or ']' at column " + std::to_string(i + 1));
    }
}

}  // namespace

RatVec parse_rat_vec(const std::string& text) {
    size_t i = 0;
    auto v = parse_bracket_rats(text, i);
    skip_ws(text, i);
    if (i != text.size()) raise(errc::parse_error, "trailing input after vector");
    return v;
}

std::string print_rat_vec(const RatVec& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].str();
    }
    return out + "]";
}

IntVec parse_int_vec(const std::string& text) {
    auto rats = parse_rat_vec(text);
    IntVec out;
    for (auto& r : rats) {
        if (!r.is_integer()) raise(errc::parse_error, "expected integer vector entry");
        out.push_back(r.num());
    }
    return out;
}

std::string print_int_vec(const IntVec& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

ParsedPolytope parse_polytope(const std::string& text) {
    size_t i = 0;
    skip_ws(text, i);
    if (text.compare(i, 2, "P{") != 0)
        raise(errc::parse_error, "polytope must start with 'P{'");
    i += 2;
    int dim = -1;
    RatVec basepoint;
    std::vector<Halfspace> constraints;
    while (true) {
        skip_ws(text, i);
        if (i < text.size() && text[i] == '}') {
            ++i;
            break;
        }
        if (text.compare(i, 4, "dim=") == 0) {
            i += 4;
            Rational d = parse_rat_token(text, i);
            if (!d.is_integer() || d.num() < 1) raise(errc::parse_error, "bad dim field");
            dim = (int)d.num();
        } else if (text.compare(i, 2, "q=") == 0) {
            i += 2;
            basepoint = parse_bracket_rats(text, i);
        } else if (text.compare(i, 4, "ineq") == 0) {
            i += 4;
            auto normal_rats = parse_bracket_rats(text, i);
            IntVec normal;
            for (auto& r : normal_rats) {
                if (!r.is_integer()) raise(errc::parse_error, "normals must be integral");
                normal.push_back(r.num());
            }
            skip_ws(text, i);
            if (text.compare(i, 2, ">=") != 0) raise(errc::parse_error, "expected '>=' in ineq");
            i += 2;
            Rational offset = parse_rat_token(text, i);
            constraints.push_back(Halfspace::make(std::move(normal), offset));
        } else {
            raise(errc::parse_error, "unknown polytope field at column " + std::to_string(i + 1));
        }
        skip_ws(text, i);
        if (i < text.size() && text[i] == ';') ++i;
    }
    if (dim < 1) raise(errc::parse_error, "polytope is missing dim");
    if (basepoint.empty()) basepoint.assign((size_t)dim, Rational(0));
    if ((int)basepoint.size() != dim) raise(errc::parse_error, "basepoint length != dim");
    ParsedPolytope out{Polytope::from_halfspaces(dim, std::move(constraints)), std::move(basepoint)};
    return out;
}

std::string print_polytope(const Polytope& poly, const RatVec& basepoint) {
    std::string out = "P{dim=" + std::to_string(poly.dim()) + "; q=";
    std::string q = "[";
    for (size_t i = 0; i < basepoint.size(); ++i) {
        if (i) q += ",";
        q += basepoint[i].str();
    }
    out += q + "]";
    for (auto& h : poly.constraints()) {
        out += "; ineq [";
        for (size_t i = 0; i < h.normal.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(h.normal[i]);
        }
        out += "] >= " + h.offset.str();
    }
    return out + "}";
}

}  // namespace nova
