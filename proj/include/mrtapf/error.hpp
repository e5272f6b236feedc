#pragma once

#include <stdexcept>
#include <string>

namespace mrtapf {

enum class ErrorKind {
    InvalidInput,    // malformed files, violated preconditions
    Unreachable,     // a goal cannot be reached by its robot
    LimitExceeded,   // CBS node budget exhausted
    Infeasible,      // search space exhausted without a solution
    TimeLimit,       // cooperative wall-clock deadline hit
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mrtapf
