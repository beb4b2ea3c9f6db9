#pragma once

#include <stdexcept>
#include <string>

namespace pairplan {

// Bad argument or configuration value. CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// File or stream failure. CLI maps this to exit code 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Instance exceeds a hard size bound of an exhaustive algorithm.
struct CapacityError : ValidationError {
    explicit CapacityError(const std::string& what) : ValidationError(what) {}
};

}  // namespace pairplan
