#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace solmut {

struct ProcessOptions {
    std::vector<std::string> argv;
    std::optional<std::filesystem::path> cwd;
    /// Wall-clock limit from spawn; zero means none.
    std::chrono::milliseconds deadline{0};
    /// Limit on silence between stdout lines; zero means none.
    std::chrono::milliseconds inactivity{0};
    /// Called for every complete stdout line (without the newline). Returning
    /// false stops the process early.
    std::function<bool(std::string_view)> on_line;
};

struct ProcessResult {
    int exit_code = -1; // -1 when killed by a signal or on timeout
    bool timed_out = false;
    bool stopped = false; // on_line asked to stop
    std::string stdout_text;
    std::string stderr_text;
};

/// Runs argv[0] (looked up on PATH) in its own process group; on timeout or
/// stop the whole group is killed. Throws Error when the process cannot be
/// spawned.
ProcessResult run_process(const ProcessOptions& options);

/// argv that runs `command` through /bin/sh with `arg` as its last argument,
/// unquoted into the shell text.
std::vector<std::string> shell_argv(const std::string& command, const std::string& arg);

/// Single-quotes `s` for /bin/sh.
std::string shell_quote(std::string_view s);

} // namespace solmut
