#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

// Helpers for driving the command-line binary from tests.

namespace clisupport {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the binary with the given argument string; stdout and stderr are
// captured separately.
inline CliResult run_cli(const std::string& args, const std::string& err_file = "cli_stderr.txt") {
    CliResult result;
    const std::string cmd = std::string(CONVEXITY_BINARY) + " " + args + " 2>" + err_file;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.err = slurp(err_file);
    return result;
}

inline bool file_exists(const std::string& path) {
    std::ifstream in(path);
    return in.good();
}

} // namespace clisupport
