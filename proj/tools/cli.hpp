#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "solmut/operators.hpp"

namespace solmut::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kBaselineFailure = 3 };

struct ToolConfig {
    std::string project = ".";
    std::vector<std::string> sources; // globs relative to project
    OperatorSet operators = all_operators();
    std::uint64_t seed = 0;
    std::string compile_command;
    int compile_timeout_s = 60;
    std::string test_command;
    int per_test_timeout_s = 300;
    unsigned jobs = 1;
    bool prune_failing_baseline = false;
    bool early_exit = false;
    std::string out = "out";
    std::string marks;
    std::string coverage;
    int runs = 10;
};

/// Applies a JSON config document on top of `config`. Keys are the long flag
/// names with '_' for '-'. Throws Error on unknown keys or operator codes.
void apply_config_json(std::string_view json_text, ToolConfig& config);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace solmut::cli
