#pragma once

#include <stdexcept>
#include <string>

namespace dmbst {

/// Invalid input: malformed file, out-of-range parameter, broken precondition.
/// Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Instance exceeds a documented hard cap of an exact/exhaustive routine.
/// Maps to CLI exit code 3.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dmbst
