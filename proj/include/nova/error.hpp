#pragma once

#include <stdexcept>
#include <string>

namespace nova {

enum class errc {
    overflow,
    parse_error,
    dimension_mismatch,
    zero_division,
    zero_normal,
    empty_polytope,
    unbounded_polytope,
    not_a_subset,
    not_separated,
    not_a_cover,
    not_a_cocycle,
    not_laurent_cover,
    refinement_failure,
    not_comparable,
    cocycle_violation,
    cover_assumption_violated,
    not_compatible,
    precondition_violated,
    nonpositive_delta,
    invalid_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::overflow: return "Overflow";
        case errc::parse_error: return "ParseError";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::zero_division: return "ZeroDivision";
        case errc::zero_normal: return "ZeroNormal";
        case errc::empty_polytope: return "EmptyPolytope";
        case errc::unbounded_polytope: return "UnboundedPolytope";
        case errc::not_a_subset: return "NotASubset";
        case errc::not_separated: return "NotSeparated";
        case errc::not_a_cover: return "NotACover";
        case errc::not_a_cocycle: return "NotACocycle";
        case errc::not_laurent_cover: return "NotLaurentCover";
        case errc::refinement_failure: return "RefinementFailure";
        case errc::not_comparable: return "NotComparable";
        case errc::cocycle_violation: return "CocycleViolation";
        case errc::cover_assumption_violated: return "CoverAssumptionViolated";
        case errc::not_compatible: return "NotCompatible";
        case errc::precondition_violated: return "PreconditionViolated";
        case errc::nonpositive_delta: return "NonpositiveDelta";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "Error";
}

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace nova
