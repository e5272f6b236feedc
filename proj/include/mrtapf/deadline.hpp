#pragma once

#include <chrono>
#include <optional>

#include "mrtapf/error.hpp"

namespace mrtapf {

/// Cooperative wall-clock budget shared by the solver stages.
class Deadline {
public:
    using Clock = std::chrono::steady_clock;

    Deadline() = default;
    explicit Deadline(Clock::time_point at) : at_(at) {}

    static Deadline none() { return {}; }
    static Deadline after(double seconds) {
        return Deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(seconds)));
    }

    bool expired() const { return at_ && Clock::now() >= *at_; }

    void check(const char* stage) const {
        if (expired()) throw Error(ErrorKind::TimeLimit, std::string("time limit exceeded in ") + stage);
    }

private:
    std::optional<Clock::time_point> at_;
};

}  // namespace mrtapf
