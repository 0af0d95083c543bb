#pragma once

#include <cstdint>
#include <string>

#include "nova/rational.hpp"

namespace nova {

struct VerifyOptions {
    std::uint64_t seed = 1;
    Rational prec = Rational(6);
    int samples = 100;
    int window = 6;
};

struct CheckResult {
    bool pass = true;
    std::string detail;  // deterministic, line oriented

    void fail(const std::string& line) {
        pass = false;
        detail += "FAIL " + line + "\n";
    }
    void note(const std::string& line) { detail += line + "\n"; }
};

// Fine-grained checks; counts and cutoffs are the caller's contract.
CheckResult check_novikov_suite(std::uint64_t seed, int cases, const Rational& prec);
CheckResult check_valuation_suite(std::uint64_t seed, int samples);
CheckResult check_inclusion_retraction(std::uint64_t seed, int ops, int window);
CheckResult check_homotopy_form_comparison(std::uint64_t seed, int ops, int window);
CheckResult check_disjoint_vanishing(std::uint64_t seed, int pairs, int ops_per_pair,
                                     const Rational& cutoff);
CheckResult check_duality(std::uint64_t seed, int functionals, int ops);
CheckResult check_tate_two_term(std::uint64_t seed, int inputs, const Rational& cutoff);
CheckResult check_cech_acyclicity(std::uint64_t seed, const Rational& cutoff);
CheckResult check_hf_classification(std::uint64_t seed, const Rational& cutoff);
CheckResult check_category_suite(std::uint64_t seed, int targets, const Rational& cutoff);
CheckResult check_text_roundtrip(std::uint64_t seed, int cases);

// Module-level verification reports with the fixed deterministic header.
struct VerifyResult {
    bool pass = true;
    std::string report;
};

VerifyResult verify_module(const std::string& name, const VerifyOptions& opt);

}  // namespace nova
