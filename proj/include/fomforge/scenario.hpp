#pragma once

#include <filesystem>
#include <ostream>
#include <string_view>

#include "fomforge/federation.hpp"

// Line-oriented scenario scripts driving a federation registry: create and
// join with module files, management queries, declarations, lifecycle, and
// `expect` assertions that turn a script into an executable check.

namespace fomforge {

struct ScenarioOptions {
    bool trace = false;
    // Module file paths in the script resolve against this directory.
    std::filesystem::path base_dir = ".";
};

struct ScenarioResult {
    int exit_code = 0;  // 0 ok, 1 script syntax error, 3 failed expectation
    int commands_run = 0;
    int expects_passed = 0;
    int expects_failed = 0;
};

ScenarioResult run_scenario(std::string_view script, const ScenarioOptions& options,
                            std::ostream& out);

}  // namespace fomforge
