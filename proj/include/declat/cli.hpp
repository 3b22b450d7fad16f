#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace declat {

struct RunReport {
    std::string command;
    nlohmann::json inputs;
    nlohmann::json results;
    std::vector<std::string> failures;
    int exit_code = 0;
};

/// Executes one CLI invocation. argv excludes the program name. The
/// report is emitted on out (human table by default, JSON with
/// --format json). Exit codes: 0 success, 1 domain failure, 2 usage.
RunReport run(const std::vector<std::string>& argv, std::ostream& out);

} // namespace declat
