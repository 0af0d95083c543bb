// Acceptance gate: one line per criterion, every tolerance pinned here.
#include <chrono>
#include <cstdio>
#include <string>

#include "nova/cli.hpp"
#include "nova/verify.hpp"

using namespace nova;

namespace {

int failures = 0;

template <typename F>
CheckResult timed(F&& f, double budget_seconds, double* out_seconds) {
    auto start = std::chrono::steady_clock::now();
    CheckResult result;
    try {
        result = f();
    } catch (const std::exception& e) {
        result.fail(std::string("unhandled exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    *out_seconds = elapsed;
    if (elapsed >= budget_seconds)
        result.fail("time budget exceeded: " + std::to_string(elapsed) + "s >= " +
                    std::to_string(budget_seconds) + "s");
    return result;
}

void criterion(int index, const char* label, double budget_seconds, CheckResult (*f)()) {
    double seconds = 0;
    CheckResult result = timed(f, budget_seconds, &seconds);
    std::printf("criterion %2d [%-22s]: %s (%.2fs)\n", index, label,
                result.pass ? "PASS" : "FAIL", seconds);
    if (!result.pass) {
        std::fputs(result.detail.c_str(), stdout);
        ++failures;
    }
}

constexpr std::uint64_t kSeed = 20260808;

CheckResult cli_determinism() {
    CheckResult r;
    CliResult first = run_cli({"verify", "operator", "--seed", "7", "--prec", "5", "--samples", "30"});
    CliResult second = run_cli({"verify", "operator", "--seed", "7", "--prec", "5", "--samples", "30"});
    if (first.out != second.out) r.fail("verify reports differ between identical runs");
    if (first.exit_code != 0) r.fail("verify operator must PASS under the fixed seed");
    CliResult val = run_cli({"nov", "val", "1*T^(1/2) + 2*T^(2)"});
    if (val.exit_code != 0 || val.out != "1/2\n") r.fail("nov val golden output");
    CliResult usage = run_cli({"nov", "val", "1//2"});
    if (usage.exit_code != 2) r.fail("usage errors must exit 2");
    CliResult classify = run_cli({"op", "classify-hf",
                                  "P{dim=1; q=[0]; ineq [1] >= -1; ineq [-1] >= -1}",
                                  "P{dim=1; q=[0]; ineq [1] >= 0; ineq [-1] >= -1}"});
    if (classify.out != "InclusionIso deg=0 ring=Gamma^[0, 1]\n")
        r.fail("classify-hf golden output, got: " + classify.out);
    r.note("byte-identical reports, golden outputs, exit-code contract");
    return r;
}

}  // namespace

int main() {
    std::puts("nova acceptance suite");
    criterion(1, "novikov field suite", 5.0,
              [] { return check_novikov_suite(kSeed + 1, 500, Rational(6)); });
    criterion(2, "valuation suite", 10.0, [] { return check_valuation_suite(kSeed + 2, 1000); });
    criterion(3, "inclusion retraction", 30.0,
              [] { return check_inclusion_retraction(kSeed + 3, 50, 6); });
    criterion(4, "disjoint vanishing", 20.0,
              [] { return check_disjoint_vanishing(kSeed + 4, 5, 10, Rational(10)); });
    criterion(5, "duality eps/delta/hbar", 10.0,
              [] { return check_duality(kSeed + 5, 100, 50); });
    criterion(6, "tate two-term homotopy", 20.0,
              [] { return check_tate_two_term(kSeed + 6, 100, Rational(8)); });
    criterion(7, "cech acyclicity", 30.0,
              [] { return check_cech_acyclicity(kSeed + 7, Rational(6)); });
    criterion(8, "hf classification", 20.0,
              [] { return check_hf_classification(kSeed + 8, Rational(6)); });
    criterion(9, "category suite", 30.0,
              [] { return check_category_suite(kSeed + 9, 20, Rational(6)); });
    criterion(10, "cli determinism", 5.0, [] {
        CheckResult r = cli_determinism();
        CheckResult roundtrip = check_text_roundtrip(kSeed + 10, 200);
        if (!roundtrip.pass) {
            r.pass = false;
            r.detail += roundtrip.detail;
        }
        return r;
    });
    if (failures == 0)
        std::puts("acceptance: 10/10 PASS");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
