#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xaikg {

// Machine-readable failure categories shared by the library, the HTTP API and the CLI.
enum class ErrorCode {
    parse_error,
    schema_violation,
    unknown_id,
    conflict,
    invalid_argument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace xaikg
