#include "nova/cli.hpp"

#include <fstream>

#include "doctest.h"
#include "nova/error.hpp"

using namespace nova;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

const char* kUnitInterval = "P{dim=1; q=[0]; ineq [1] >= 0; ineq [-1] >= -1}";

}  // namespace

TEST_CASE("nov subcommands") {
    CliResult val = run_cli({"nov", "val", "1*T^(1/2) + 2*T^(2)"});
    CHECK(val.exit_code == 0);
    CHECK(val.out == "1/2\n");

    CliResult add = run_cli({"nov", "add", "1*T^(1)", "-1*T^(1)"});
    CHECK(add.out == "0\n");

    CliResult inv = run_cli({"nov", "inv", "1 + 1*T^(1)", "--prec", "3"});
    CHECK(inv.out == "1 + -1*T^(1) + 1*T^(2)\n");

    CliResult bad = run_cli({"nov", "val", "1//2"});
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("ParseError") != std::string::npos);
}

TEST_CASE("poly subcommands") {
    CliResult verts = run_cli({"poly", "vertices", kUnitInterval});
    CHECK(verts.out == "[0, 1]\n");

    CliResult support = run_cli({"poly", "support", kUnitInterval, "--beta", "[-1]"});
    CHECK(support.out == "-1\n");

    CliResult meet = run_cli({"poly", "intersect", kUnitInterval,
                              "P{dim=1; q=[0]; ineq [1] >= 2; ineq [-1] >= -3}"});
    CHECK(meet.out == "EmptyPolytope\n");

    CliResult split = run_cli({"poly", "split", kUnitInterval, "--u", "[1]", "--lambda", "1/2"});
    CHECK(split.out.find("plus: P{dim=1; q=[0]; ineq [-1] >= -1; ineq [1] >= 0; ineq [1] >= 1/2}") !=
          std::string::npos);
    CHECK(split.out.find("overlap:") != std::string::npos);
}

TEST_CASE("op classify-hf prints the classification line") {
    CliResult inc = run_cli({"op", "classify-hf",
                             "P{dim=1; q=[0]; ineq [1] >= -1; ineq [-1] >= -1}", kUnitInterval});
    CHECK(inc.exit_code == 0);
    CHECK(inc.out == "InclusionIso deg=0 ring=Gamma^[0, 1]\n");

    CliResult disjoint = run_cli({"op", "classify-hf", kUnitInterval,
                                  "P{dim=1; q=[0]; ineq [1] >= 2; ineq [-1] >= -3}"});
    CHECK(disjoint.out.find("DisjointZero") == 0);
}

TEST_CASE("aff subcommands") {
    CliResult val = run_cli({"aff", "val", "(1*T^(1))*z[-1]",
                             "P{dim=1; q=[0]; ineq [1] >= 0; ineq [-1] >= -1/2}"});
    CHECK(val.out == "1/2\n");

    CliResult cert = run_cli({"aff", "cert", "--delta", "1", "--eps", "1/4", "--pairs",
                              "1:1,2:2,3:3"});
    CHECK(cert.exit_code == 0);
    CHECK(cert.out.find("convergent") == 0);
}

TEST_CASE("cech cover file workflow") {
    write_file("test_cover.txt",
               "base: P{dim=1; q=[0]; ineq [1] >= 0; ineq [-1] >= -1}\n"
               "piece a: P{dim=1; q=[0]; ineq [1] >= 0; ineq [-1] >= -2/3}\n"
               "piece b: P{dim=1; q=[0]; ineq [1] >= 1/3; ineq [-1] >= -1}\n");
    CliResult build = run_cli({"cech", "build", "test_cover.txt"});
    CHECK(build.exit_code == 0);
    CHECK(build.out.find("face {a,b}: [1/3, 2/3]") != std::string::npos);

    CliResult aug = run_cli({"cech", "augment", "test_cover.txt", "(1)*z[0]", "--prec", "6"});
    CHECK(aug.exit_code == 0);
    write_file("test_cochain.txt", aug.out);
    CliResult rec = run_cli({"cech", "reconstruct", "test_cover.txt", "test_cochain.txt",
                             "--prec", "6"});
    CHECK(rec.exit_code == 0);
    CHECK(rec.out == "(1)*z[0]\n");
}

TEST_CASE("op pipeline goldens") {
    CHECK(run_cli({"op", "diff", "(1)*e[0][0] ^ b{}", "--dim", "1"}).out ==
          "(1)*e[0][0] ^ b{1} + (-1)*e[1][1] ^ b{1}\n");
    CHECK(run_cli({"op", "hbar", "(1)*e[2][0] ^ b{1}", "--dim", "1"}).out ==
          "(1)*e[1][-1] ^ b{} + (1)*e[2][0] ^ b{}\n");
    CHECK(run_cli({"op", "h-eval", "(1)*e[1][1] ^ b{1}", "--dim", "1", "--alpha", "[3]"}).out ==
          "b{}: (1)*z[3]\n");
    CHECK(run_cli({"op", "trace", "(1)*e[2][2] ^ b{}", "--dim", "1"}).out == "1\n");
    CHECK(run_cli({"op", "eps", "(1)*e[0][3] ^ b{}", "--dim", "1"}).out == "(1)*rho[3]\n");
    CHECK(run_cli({"op", "delta", "(1)*rho[3]", "--dim", "1"}).out == "(1)*e[0][3] ^ b{}\n");
}

TEST_CASE("cech tate and laurent goldens") {
    CliResult th = run_cli({"cech", "tate-h", "P{dim=1; q=[0]; ineq [1] >= -1; ineq [-1] >= -1}",
                            "--u", "[1]", "--lambda", "0", "--on-overlap",
                            "(1)*z[1] + (1)*z[-1]"});
    CHECK(th.out == "plus: (1)*z[1]\nminus: (-1)*z[-1]\n");
    CliResult glue = run_cli({"cech", "tate-h", "P{dim=1; q=[0]; ineq [1] >= -1; ineq [-1] >= -1}",
                              "--u", "[1]", "--lambda", "0", "--on-plus", "(1)*z[0] + (1)*z[1]",
                              "--on-minus", "(1)*z[-1]"});
    CHECK(glue.out == "(1)*z[0]\n");
    CHECK(run_cli({"cech", "tate-split", "(1)*z[1] + (1)*z[-1]", "--dim", "1", "--axis", "0"}).out ==
          "plus: (1)*z[1]\nminus: (1)*z[-1]\n");

    write_file("test_laurent_cochain.txt",
               "face {m0-}: (1)*z[0] + (1)*z[1]\n"
               "face {m0+}: (1)*z[0]\n");
    CliResult lh = run_cli({"cech", "laurent-h", "P{dim=1; q=[0]; ineq [1] >= -1; ineq [-1] >= -1}",
                            "test_laurent_cochain.txt", "--splits", "[1]@0", "--prec", "6"});
    CHECK(lh.out.find("contract: (1)*z[0] + (1)*z[1]") == 0);
}

TEST_CASE("cat subcommands over the star cover") {
    write_file("test_star.txt",
               "base: P{dim=1; q=[0]; ineq [1] >= 0; ineq [-1] >= -1}\n"
               "piece a: P{dim=1; q=[0]; ineq [1] >= 0; ineq [-1] >= -5/8}\n"
               "piece b: P{dim=1; q=[0]; ineq [1] >= 3/8; ineq [-1] >= -1}\n"
               "piece ab: P{dim=1; q=[0]; ineq [1] >= 3/8; ineq [-1] >= -5/8}\n");
    write_file("test_mod.txt",
               "side: left\n"
               "g[a<=ab] = (1)*z[1]\n"
               "g[b<=ab] = (1)*z[1]\n");
    CliResult build = run_cli({"cat", "build", "test_star.txt"});
    CHECK(build.out.find("hom(a, ab) = Gamma^[3/8, 5/8]") != std::string::npos);
    CHECK(build.out.find("hom(a, b)") == std::string::npos);

    CliResult witness = run_cli({"cat", "tensor-witness", "test_star.txt", "test_mod.txt",
                                 "--sigma", "ab", "--target", "(1)*z[0] + (1*T^(1))*z[2]",
                                 "--prec", "5"});
    CHECK(witness.exit_code == 0);
    CHECK(witness.out.find("PASS") != std::string::npos);

    CliResult locality = run_cli({"cat", "locality", "test_star.txt", "--sigma", "ab"});
    CHECK(locality.exit_code == 0);

    CliResult perf = run_cli({"cat", "perfectness", "test_star.txt", "test_mod.txt", "--prec", "5"});
    CHECK(perf.out.find("stage 3") != std::string::npos);

    CliResult compose = run_cli({"cat", "compose", "test_star.txt", "--tau", "a", "--sigma", "a",
                                 "--rho", "ab", "--g", "(1)*z[1]", "--f", "(1)*z[0]", "--prec", "6"});
    CHECK(compose.out == "(1)*z[1]\n");
}

TEST_CASE("poly refine lists the cutting facets") {
    write_file("test_star2.txt",
               "base: P{dim=1; q=[0]; ineq [1] >= 0; ineq [-1] >= -1}\n"
               "piece a: P{dim=1; q=[0]; ineq [1] >= 0; ineq [-1] >= -2/3}\n"
               "piece b: P{dim=1; q=[0]; ineq [1] >= 1/3; ineq [-1] >= -1}\n");
    CliResult refine = run_cli({"poly", "refine", "test_star2.txt"});
    CHECK(refine.out == "split [1] at 1/3\nsplit [1] at 2/3\n");
}

TEST_CASE("verify reports are deterministic and carry the header") {
    CliResult first = run_cli({"verify", "novikov", "--seed", "7", "--samples", "40"});
    CliResult second = run_cli({"verify", "novikov", "--seed", "7", "--samples", "40"});
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.find("nova verify novikov\n") == 0);
    CHECK(first.out.find("seed: 7") != std::string::npos);
    CHECK(first.out.find("result: PASS") != std::string::npos);

    CliResult different = run_cli({"verify", "novikov", "--seed", "8", "--samples", "40"});
    CHECK(different.out != first.out);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({}).exit_code == 2);
    CHECK(run_cli({"bogus"}).exit_code == 2);
    CHECK(run_cli({"nov"}).exit_code == 2);
    CHECK(run_cli({"nov", "val"}).exit_code == 2);
    CHECK(run_cli({"verify", "bogus"}).exit_code == 2);
}
