#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sskh {

enum class ErrorCode {
    invalid_argument,
    precondition,
    dimension_mismatch,
    singular_design,
    guard_exceeded,
    io,
};

std::string_view to_string(ErrorCode code);

// Base for every error a module raises on bad input; the CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool ok, ErrorCode code, const std::string& message) {
    if (!ok) fail(code, message);
}

}  // namespace sskh
