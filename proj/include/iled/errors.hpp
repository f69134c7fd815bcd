#pragma once

#include <stdexcept>
#include <string>

namespace iled {

// Malformed or inconsistent input data (syntax errors, timestamp range
// violations, annotation contradicting the narrative). CLI exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// An abductive task has no solution: the data cannot be explained within
// the language bias. CLI exit code 3.
struct NoSolutionError : std::runtime_error {
  explicit NoSolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured search or grounding cap was exceeded. CLI exit code 4.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace iled
