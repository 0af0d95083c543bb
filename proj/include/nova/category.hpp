#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nova/cech.hpp"

namespace nova {

// Directed category of a cover poset: hom(tau,sigma) is a free rank-1
// module over the ring of the smaller polytope P_sigma when tau <= sigma,
// and zero otherwise. Test-only extra edges can be injected to model a
// corrupted category.
class DirectedCategory {
  public:
    static DirectedCategory build(Cover cover, RatVec basepoint);

    const Cover& cover() const { return cover_; }
    const RatVec& basepoint() const { return basepoint_; }
    size_t size() const { return cover_.size(); }

    bool hom_nonzero(size_t tau, size_t sigma) const;
    // Context of the smaller polytope; raises NotComparable on zero homs.
    AffinoidContext hom_context(size_t tau, size_t sigma) const;

    // Objects whose polytope meets P_sigma.
    std::vector<size_t> star(size_t sigma) const;

    void inject_edge(size_t tau, size_t sigma) { extra_edges_.insert({tau, sigma}); }
    const std::set<std::pair<size_t, size_t>>& extra_edges() const { return extra_edges_; }

  private:
    Cover cover_ = Cover::build(
        Polytope::from_halfspaces(1, {Halfspace::make({1}, Rational(0)),
                                      Halfspace::make({-1}, Rational(-1))}),
        {"a"},
        {Polytope::from_halfspaces(1, {Halfspace::make({1}, Rational(0)),
                                       Halfspace::make({-1}, Rational(-1))})});
    RatVec basepoint_;
    std::set<std::pair<size_t, size_t>> extra_edges_;
};

// compose g in hom(sigma,rho) with f in hom(tau,sigma): restrict f to P_rho,
// multiply, truncate.
LaurentElement compose_hom(const DirectedCategory& cat, size_t tau, size_t sigma, size_t rho,
                           const LaurentElement& g, const LaurentElement& f, const Precision& prec);

enum class ModuleSide { left, right };

// Rank-1 module over the directed category: a unit transition element per
// comparable pair, subject to the multiplicative cocycle condition at
// precision.
class RankOneModule {
  public:
    static RankOneModule build(const DirectedCategory& cat, ModuleSide side,
                               std::map<std::pair<size_t, size_t>, LaurentElement> cocycle,
                               const Precision& prec);

    ModuleSide side() const { return side_; }
    // g_{tau sigma}; identity pairs give 1, missing pairs default to 1.
    LaurentElement transition(const DirectedCategory& cat, size_t tau, size_t sigma) const;

  private:
    ModuleSide side_ = ModuleSide::left;
    std::map<std::pair<size_t, size_t>, LaurentElement> cocycle_;
};

// Unit monomial inverse at precision (single-term Laurent elements only).
LaurentElement unit_invert(const LaurentElement& u, const Precision& prec);

// Auxiliary polytope of the exactness proofs: P_sigma relaxed into its own
// interior, small enough that the star pieces cover it.
struct StarEnvelope {
    Polytope envelope;
    std::vector<size_t> star;           // objects used
    std::vector<Polytope> star_pieces;  // envelope ∩ P_tau, same order
};

StarEnvelope star_envelope(const DirectedCategory& cat, size_t sigma);

struct SurjectivityWitness {
    std::map<size_t, LaurentElement> tuple;  // per star object
    Val residual;                            // val of target - image
    std::string report;
};

// Right-exactness witness: an explicit preimage tuple of a target element of
// the module at sigma, built by distributing the target over the star cover
// with the iterated two-term contraction.
SurjectivityWitness tensor_surjectivity_witness(const DirectedCategory& cat,
                                                const RankOneModule& mod, size_t sigma,
                                                const LaurentElement& target,
                                                const Precision& prec);

struct ReconstructionWitness {
    LaurentElement global;
    Val residual;  // worst val of (tuple - restriction of global), over the star
    std::string report;
};

// Left-exactness witness: the unique-at-precision global hom-element
// restricting to a compatible tuple.
ReconstructionWitness hom_reconstruction_witness(const DirectedCategory& cat,
                                                 const RankOneModule& mod, size_t sigma,
                                                 const std::map<size_t, LaurentElement>& tuple,
                                                 const Precision& prec);

struct LocalityRestrictReport {
    bool pass = false;
    std::string text;
};

// Structural check that every bar-complex summand contributing over the full
// category already lies over the star subcategory at sigma.
LocalityRestrictReport locality_restrict_check(const DirectedCategory& cat, size_t sigma,
                                               int max_chain_length = 3);

// Filtration report for the Yoneda modules, in decreasing poset order.
std::string perfectness_filtration(const DirectedCategory& cat, const RankOneModule& mod,
                                   const Precision& prec);

// Module file: "side: left" then "g[a<=ab] = (1)*z[0]" lines.
RankOneModule parse_module_file(const std::string& text, const DirectedCategory& cat,
                                const Precision& prec);

}  // namespace nova
