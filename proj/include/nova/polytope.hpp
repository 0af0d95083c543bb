#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nova/rational.hpp"

namespace nova {

using IntVec = std::vector<std::int64_t>;
using RatVec = std::vector<Rational>;

Rational dot(const IntVec& a, const RatVec& p);

// Constraint <., normal> >= offset with integral normal.
struct Halfspace {
    IntVec normal;
    Rational offset;

    // Primitive normal, canonical sign is kept as given (the direction is
    // meaningful); only the gcd is divided out.
    static Halfspace make(IntVec normal, Rational offset);

    friend bool operator==(const Halfspace& a, const Halfspace& b) {
        return a.normal == b.normal && a.offset == b.offset;
    }
    friend bool operator<(const Halfspace& a, const Halfspace& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.offset < b.offset;
    }
};

// Bounded nonempty intersection of halfspaces with integral normals and
// rational offsets. Vertices are enumerated exactly on construction by
// solving all n-subsets of constraints at equality; construction rejects
// empty and unbounded input.
class Polytope {
  public:
    static Polytope from_halfspaces(int dim, std::vector<Halfspace> constraints);

    int dim() const { return dim_; }
    const std::vector<Halfspace>& constraints() const { return constraints_; }
    const std::vector<RatVec>& vertices() const { return vertices_; }

    bool contains(const RatVec& p) const;
    bool contains_strictly(const RatVec& p) const;

    // min over P of <beta, .>; attained at a vertex.
    Rational support_min(const IntVec& beta) const;
    Rational support_max(const IntVec& beta) const;

    // Vertex list as text, lexicographically sorted: 1-d "[a, b]",
    // higher dimensions "[(a, b), ...]".
    std::string vertices_str() const;

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
    }
    friend bool operator!=(const Polytope& a, const Polytope& b) { return !(a == b); }

  private:
    Polytope() = default;

    int dim_ = 0;
    std::vector<Halfspace> constraints_;
    std::vector<RatVec> vertices_;  // sorted lexicographically
};

struct SubsetFlags {
    bool subset = false;
    bool strict = false;  // contained in the interior
};

// P subset of Q, with interior-containment flag; vertex test against Q's
// constraint list.
SubsetFlags is_subset(const Polytope& p, const Polytope& q);

// Constraint-union intersection; empty result is a value, not an error.
std::optional<Polytope> intersect(const Polytope& p, const Polytope& q);

struct LaurentSplitResult {
    std::optional<Polytope> plus;    // <u,.> >= lambda
    std::optional<Polytope> minus;   // <u,.> <= lambda
    std::optional<Polytope> overlap; // the slice
};

LaurentSplitResult laurent_split(const Polytope& p, const IntVec& u, const Rational& lambda);

// Canonicalized split datum (primitive normal, sign-normalized).
struct SplitDatum {
    IntVec normal;
    Rational offset;

    friend bool operator==(const SplitDatum& a, const SplitDatum& b) {
        return a.normal == b.normal && a.offset == b.offset;
    }
    friend bool operator<(const SplitDatum& a, const SplitDatum& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.offset < b.offset;
    }
};

// Full-dimensional cells of the iterated split of base; splits that do not
// cut a cell leave it whole.
std::vector<Polytope> enumerate_cells(const Polytope& base, const std::vector<SplitDatum>& splits);

// Exact covering test via the cell decomposition induced by all piece
// facets: returns a witness cell not contained in any piece, or nullopt
// when the pieces cover base.
std::optional<Polytope> uncovered_cell(const Polytope& base, const std::vector<Polytope>& pieces);

// Indexed cover of a base polytope. The poset convention follows the
// inclusion direction P_sigma subset of P_tau whenever tau <= sigma;
// relations are stored reflexively and transitively closed.
class Cover {
  public:
    // Relations may be supplied explicitly (validated against inclusion) or
    // inferred from inclusions of distinct pieces.
    static Cover build(Polytope base, std::vector<std::string> names, std::vector<Polytope> pieces,
                       const std::vector<std::pair<std::string, std::string>>& relations = {},
                       bool infer_relations = true);

    const Polytope& base() const { return base_; }
    size_t size() const { return pieces_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const Polytope& piece(size_t i) const { return pieces_[i]; }
    size_t index_of(const std::string& name) const;

    // tau <= sigma (indices); reflexive.
    bool leq(size_t tau, size_t sigma) const;
    const std::set<std::pair<size_t, size_t>>& relations() const { return relations_; }

  private:
    Polytope base_ = Polytope::from_halfspaces(1, {Halfspace::make({1}, Rational(0)),
                                                   Halfspace::make({-1}, Rational(-1))});
    std::vector<std::string> names_;
    std::vector<Polytope> pieces_;
    std::set<std::pair<size_t, size_t>> relations_;
};

// Split data of all boundary facets of all pieces that cut the interior of
// the base; the induced Laurent cover refines the input cover (verified
// cell by cell, RefinementFailure otherwise).
std::vector<SplitDatum> laurent_refinement(const Cover& cover);

// Polytope text form "P{dim=2; q=[0,0]; ineq [1,0] >= -1; ...}".
struct ParsedPolytope {
    Polytope poly;
    RatVec basepoint;
};

ParsedPolytope parse_polytope(const std::string& text);
std::string print_polytope(const Polytope& poly, const RatVec& basepoint);

std::string print_rat_vec(const RatVec& v);
RatVec parse_rat_vec(const std::string& text);
std::string print_int_vec(const IntVec& v);
IntVec parse_int_vec(const std::string& text);

}  // namespace nova
