#include <xaikg/error.hpp>

namespace xaikg {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::schema_violation: return "schema_violation";
    case ErrorCode::unknown_id: return "unknown_id";
    case ErrorCode::conflict: return "conflict";
    case ErrorCode::invalid_argument: return "invalid_argument";
    }
    return "invalid_argument";
}

}  // namespace xaikg
