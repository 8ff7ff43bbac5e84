// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace tvop::testing {

struct RunResult {
    int code = -1;
    std::string output;  // stdout and stderr together
};

// Runs `program args` through the shell and captures its combined output.
inline RunResult run_program(const std::string& program, const std::string& args) {
    const std::string cmd = program + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for " + program);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace tvop::testing
