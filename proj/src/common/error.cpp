#include "sskh/common/error.hpp"

namespace sskh {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::dimension_mismatch: return "dimension_mismatch";
        case ErrorCode::singular_design: return "singular_design";
        case ErrorCode::guard_exceeded: return "guard_exceeded";
        case ErrorCode::io: return "io";
    }
    return "unknown";
}

}  // namespace sskh
