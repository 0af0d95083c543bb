#pragma once

#include <string>
#include <vector>

namespace nova {

struct CliResult {
    int exit_code = 0;     // 0 success/PASS, 1 verification FAIL, 2 input error
    std::string out;
    std::string err;
};

// The whole command surface, callable in-process for deterministic tests.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace nova
