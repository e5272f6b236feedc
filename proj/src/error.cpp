#include "mrtapf/error.hpp"

namespace mrtapf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid input";
        case ErrorKind::Unreachable: return "unreachable goal";
        case ErrorKind::LimitExceeded: return "CBS limit exceeded";
        case ErrorKind::Infeasible: return "infeasible";
        case ErrorKind::TimeLimit: return "time limit exceeded";
    }
    return "unknown";
}

}  // namespace mrtapf
