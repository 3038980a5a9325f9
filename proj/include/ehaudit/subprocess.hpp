#pragma once

#include <string>

namespace ehaudit {

struct RunResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string output; // interleaved stdout+stderr
    double seconds = 0.0;
};

/// Runs `command` through /bin/sh -c in `cwd`, capturing combined output.
/// timeout_seconds <= 0 disables the timeout; on expiry the whole process
/// group is killed and timed_out is set.
RunResult run_shell(const std::string& command, const std::string& cwd,
                    double timeout_seconds = 0.0);

} // namespace ehaudit
