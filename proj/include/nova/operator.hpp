#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nova/affinoid.hpp"

namespace nova {

// Subsets of {1..n} as bitmasks; bit j-1 set means b_j is present.
using ExtSubset = std::uint32_t;

int subset_size(ExtSubset s);
// #{i in S : i < j} for the Koszul sign of axis j (1-based).
int position_in(ExtSubset s, int j);
std::string subset_str(ExtSubset s);

// Finite sum of elementary homomorphisms e_{gamma,alpha}: z^alpha maps to
// coeff * z^gamma, all other monomials to 0. Entries keyed (gamma, alpha).
class FiniteOperator {
  public:
    using Key = std::pair<IntVec, IntVec>;

    explicit FiniteOperator(int dim) : dim_(dim) {}

    static FiniteOperator elementary(IntVec gamma, IntVec alpha, NovikovScalar c);

    int dim() const { return dim_; }
    const std::map<Key, NovikovScalar>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    void add_entry(const IntVec& gamma, const IntVec& alpha, const NovikovScalar& c);

    friend FiniteOperator operator+(const FiniteOperator& a, const FiniteOperator& b);
    friend FiniteOperator operator-(const FiniteOperator& a, const FiniteOperator& b);
    FiniteOperator operator-() const;
    FiniteOperator scale(const NovikovScalar& c) const;
    friend bool operator==(const FiniteOperator& a, const FiniteOperator& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

    // phi applied to the monomial z^alpha.
    LaurentElement apply(const IntVec& alpha) const;
    // Composition phi o psi (finite).
    friend FiniteOperator compose(const FiniteOperator& phi, const FiniteOperator& psi);

  private:
    int dim_;
    std::map<Key, NovikovScalar> entries_;
};

// z_j . phi . z_j^{-1}: every e_{gamma,alpha} shifts to e_{gamma+e_j,alpha+e_j}.
FiniteOperator shift_conjugate(const FiniteOperator& phi, int axis_j);  // 1-based axis
// Conjugation by the monomial z^w.
FiniteOperator shift_conjugate_vec(const FiniteOperator& phi, const IntVec& w);

// Multiplication operator by a Laurent element, restricted to sources in a
// finite window; used by test oracles.
FiniteOperator multiplication_operator(const LaurentElement& g, const std::vector<IntVec>& sources);

// val phi = inf over f of val(phi f) - val(f); attained on monomials for
// finite-support operators.
Val op_val(const FiniteOperator& phi, const AffinoidContext& from, const AffinoidContext& to);

// Exterior-degree-graded operator: a cochain of Hom^c tensor H*(T^n).
class GradedOperator {
  public:
    explicit GradedOperator(int dim) : dim_(dim) {}

    static GradedOperator single(ExtSubset s, FiniteOperator phi);

    int dim() const { return dim_; }
    const std::map<ExtSubset, FiniteOperator>& components() const { return components_; }
    bool is_zero() const { return components_.empty(); }
    FiniteOperator component(ExtSubset s) const;

    void add_component(ExtSubset s, const FiniteOperator& phi);

    friend GradedOperator operator+(const GradedOperator& a, const GradedOperator& b);
    friend GradedOperator operator-(const GradedOperator& a, const GradedOperator& b);
    friend bool operator==(const GradedOperator& a, const GradedOperator& b) {
        return a.dim_ == b.dim_ && a.components_ == b.components_;
    }

    std::string str() const;
    static GradedOperator parse(const std::string& text, int dim);

  private:
    int dim_;
    std::map<ExtSubset, FiniteOperator> components_;
};

// Morse differential: (phi - z_j phi z_j^{-1}) tensor b_j wedge, summed over
// axes absent from the exterior label, with Koszul signs.
GradedOperator differential(const GradedOperator& psi);
// The opposite Koszul convention phi - z_j^{-1} phi z_j, used by the duality
// complex of the trace pairing (the d_- of the sign remark).
GradedOperator dual_differential(const GradedOperator& psi);

Val graded_op_val(const GradedOperator& psi, const AffinoidContext& from,
                  const AffinoidContext& to);

// Evaluation oracle for operators of infinite support: component S applied
// to the monomial z^alpha at exact precision.
struct LazyGraded {
    int dim;
    std::function<LaurentElement(ExtSubset, const IntVec&)> eval;
};

LazyGraded lazy_of(const GradedOperator& psi);
LazyGraded lazy_sub(const LazyGraded& a, const LazyGraded& b);
LazyGraded lazy_differential(const LazyGraded& psi, bool dual = false);

// The multiplication projection: psi tensor 1 maps to z^alpha psi(1); zero in
// positive exterior degrees.
LazyGraded lazy_projection(const LazyGraded& psi);
LaurentElement projection_eval(const GradedOperator& psi, const IntVec& alpha);

// Contraction of the Hom tensor H* complex onto the multiplication
// subcomplex. The staircase form applies the axis-j contraction after
// projecting all earlier axes; the plain form is the bare sum h_j tensor
// iota_j, kept for the comparison test.
enum class HomotopyForm { staircase, plain };
LazyGraded lazy_inclusion_homotopy(const LazyGraded& psi, HomotopyForm form);

// h(psi) evaluated at z^alpha per output component (exact, finite).
LaurentElement inclusion_homotopy_eval(const GradedOperator& psi, ExtSubset out, const IntVec& alpha,
                                       HomotopyForm form = HomotopyForm::staircase);

// Null-homotopy for operators between separated contexts: the conjugation
// geometric series along a separating axis, truncated once the per-term
// valuation bound passes the cutoff. Requires an axis j with
// val_from(z_j) + val_to(z_j^{-1}) > 0 or the reflected orientation.
GradedOperator disjoint_homotopy(const GradedOperator& psi, const AffinoidContext& from,
                                 const AffinoidContext& to, const Precision& prec);

struct SeparationData {
    int axis = 0;         // 1-based
    bool from_positive = false;  // source side has the larger values along the axis
    Rational gap;         // val gain per conjugation step
};

SeparationData find_axis_separation(const AffinoidContext& from, const AffinoidContext& to);

// Element of Hom^c(Gamma^P, Lambda) spanned by the duals rho_alpha.
class Functional {
  public:
    explicit Functional(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::map<IntVec, NovikovScalar>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    void add_entry(const IntVec& alpha, const NovikovScalar& c);

    friend bool operator==(const Functional& a, const Functional& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

    std::string str() const;

  private:
    int dim_;
    std::map<IntVec, NovikovScalar> entries_;
};

// Sum of diagonal coefficients.
NovikovScalar trace(const FiniteOperator& phi);
// eps(phi)(z^alpha) = tr(phi o mult_{z^alpha}).
Functional eps(const FiniteOperator& phi);
// delta(rho)(f) = rho(f) * 1.
FiniteOperator delta(const Functional& rho);
// The duality contraction of the trace pairing; pairs with dual_differential.
GradedOperator hbar(const GradedOperator& psi);
FiniteOperator hbar_axis(const FiniteOperator& phi, int axis_j);

enum class HfTag { InclusionIso, NestedDual, DisjointZero, Unclassified };

struct HfClass {
    HfTag tag = HfTag::Unclassified;
    std::string description;  // one deterministic report line
};

// Classification of HF*(P0,P1) with the convention that CF(P0,P1) carries
// Hom^c(Gamma^{P0}, Gamma^{P1}).
HfClass classify_hf(const Polytope& p0, const Polytope& p1, const RatVec& basepoint);

std::string print_functional(const Functional& rho);

}  // namespace nova
