#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nova/affinoid.hpp"

namespace nova {

using Face = std::vector<size_t>;  // sorted piece indices

// Cech complex of a cover: all totally ordered subsets of the index set with
// nonempty intersection, each carrying the context (P_sigma, q) with the
// shared basepoint of the base polytope.
class CechComplex {
  public:
    static CechComplex build(Cover cover, RatVec basepoint);

    const Cover& cover() const { return cover_; }
    const RatVec& basepoint() const { return basepoint_; }
    const std::vector<Face>& faces() const { return faces_; }
    bool has_face(const Face& f) const { return polytopes_.count(f) > 0; }
    const Polytope& face_polytope(const Face& f) const;
    AffinoidContext face_context(const Face& f) const;
    std::string face_name(const Face& f) const;

  private:
    Cover cover_ = Cover::build(
        Polytope::from_halfspaces(1, {Halfspace::make({1}, Rational(0)),
                                      Halfspace::make({-1}, Rational(-1))}),
        {"a"},
        {Polytope::from_halfspaces(1, {Halfspace::make({1}, Rational(0)),
                                       Halfspace::make({-1}, Rational(-1))})});
    RatVec basepoint_;
    std::vector<Face> faces_;
    std::map<Face, Polytope> polytopes_;
};

struct CechCochain {
    int degree = 0;  // faces carry degree = |face| - 1
    std::map<Face, LaurentElement> values;
    Precision precision = Precision::exponent(0);

    LaurentElement value_or_zero(const Face& f, int dim) const;
};

// Signed sum of restrictions, insertion sign (-1)^i with i the 0-based
// position of the added index; output truncated per face at the cochain
// precision.
CechCochain cech_differential(const CechComplex& complex, const CechCochain& c);

// Degree-0 cochain of restrictions of a global element.
CechCochain augment(const CechComplex& complex, const LaurentElement& f, const Precision& prec);

// val over the face polytope of the exact Cech differential, minimized over
// all degree+1 faces; +inf means c is a cocycle on the nose.
Val cocycle_defect(const CechComplex& complex, const CechCochain& c);

// ---- two-term Laurent (Tate) homotopy -------------------------------------

// Splitting grade: integral w with <u,w> = 1 (u primitive), so that the
// grade of z^beta along the split is <w,beta>. For axis splits this is the
// plain exponent.
IntVec split_grade_vector(const IntVec& u);

struct TwoTermCover {
    AffinoidContext base;
    SplitDatum split;
    std::optional<Polytope> plus, minus, overlap;
};

TwoTermCover make_two_term(const AffinoidContext& base, const SplitDatum& split);

// Degree 1 to degree 0: F on the overlap maps to (F_+, -F_-).
std::pair<LaurentElement, LaurentElement> tate_homotopy_deg1(const TwoTermCover& cover,
                                                             const LaurentElement& f,
                                                             const Precision& prec);
// Degree 0 to the base: (F on plus, G on minus) maps to F_- + G_+.
LaurentElement tate_homotopy_deg0(const TwoTermCover& cover, const LaurentElement& on_plus,
                                  const LaurentElement& on_minus, const Precision& prec);

// ---- Laurent covers and their contraction ---------------------------------

// Cover indexed by M x {-,+} with the minus piece first per split; pieces
// are the half-space cuts of the base.
struct LaurentCechData {
    CechComplex complex;
    std::vector<SplitDatum> splits;
};

LaurentCechData make_laurent_complex(const AffinoidContext& base,
                                     const std::vector<SplitDatum>& splits);

// Contraction operator H with  d H + H d = id - iota aug  on the Cech
// complex of the Laurent cover (exact on representatives; output truncated
// per face).
CechCochain laurent_homotopy(const LaurentCechData& data, const CechCochain& c,
                             const Precision& prec);

// The aug of the contraction: a global element of Gamma^P extracted from a
// degree-0 cochain.
LaurentElement laurent_contract(const LaurentCechData& data, const CechCochain& c,
                                const Precision& prec);

// Degree-0 cocycle over an arbitrary cover to a global element, via the
// Laurent refinement and the iterated two-term contraction.
LaurentElement h0_reconstruct(const CechComplex& complex, const CechCochain& c,
                              const Precision& prec);

// Sampled acyclicity in degree 1 over an arbitrary cover: exhibits a
// degree-0 preimage of a degree-1 cocycle by chain-solving along a spanning
// tree of the nerve and checking the remaining overlaps at precision.
// NotACocycle when the input fails the cocycle test or a non-tree overlap
// disagrees (a nontrivial sampled class).
CechCochain h1_witness(const CechComplex& complex, const CechCochain& c, const Precision& prec);

// ---- locality --------------------------------------------------------------

struct LocalityReport {
    bool pass = false;
    std::string text;
};

// Constructs the cover of pprime extending ppp (= P'') by facet pieces of
// P'' that avoid p, verifies that every added piece has vanishing HF against
// p, and reports the induced identification.
LocalityReport locality_check(const Polytope& p, const Polytope& pprime, const Polytope& ppp,
                              const Polytope& nu, const RatVec& basepoint, const Precision& prec,
                              int samples);

// ---- text forms -------------------------------------------------------------

// Cover file: "base: P{...}" line, "piece <name>: P{...}" lines, optional
// "rel <a> <= <b>" lines.
Cover parse_cover_file(const std::string& text, RatVec* basepoint_out = nullptr);
std::string print_cover(const Cover& cover, const RatVec& basepoint);

// Cochain file: "face {a,b}: <laurent>" lines.
CechCochain parse_cochain_file(const std::string& text, const CechComplex& complex,
                               const Precision& prec);
std::string print_cochain(const CechComplex& complex, const CechCochain& c);

}  // namespace nova
