#pragma once

#include <stdexcept>
#include <string>

namespace treewalk {

// thrown for malformed configs, words, measures (CLI exit code 2)
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// thrown when a numerical routine cannot deliver (CLI exit code 1)
struct ComputeError : std::runtime_error {
    explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

// thrown when a structural property the theory guarantees fails to hold
// on the computed objects (CLI exit code 3)
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace treewalk
