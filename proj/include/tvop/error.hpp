// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <stdexcept>
#include <string>

namespace tvop {

enum class ErrorCode {
    invalid_argument,
    validation,
    no_route,
    cap_exceeded,
    io,
    internal,
};

// Every failure raised by the library carries one of the codes above so the
// C layer can translate it without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace tvop
