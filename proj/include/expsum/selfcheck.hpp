#pragma once

#include <functional>
#include <string>
#include <vector>

namespace expsum {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// The self-verification suite: 13 numbered checks with pinned tolerances.
/// `sink` receives one line per check as it finishes. `cli_path` (optional)
/// points at the command-line binary for the byte-determinism check; when
/// empty the check compares in-process report bytes instead. `only` = 0 runs
/// everything, otherwise the single numbered check.
std::vector<CheckResult> run_selfcheck(const std::function<void(const std::string&)>& sink,
                                       const std::string& cli_path = "", int only = 0);

/// true iff every check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace expsum
