#pragma once

#include <stdexcept>
#include <string>

namespace nphase {

// Thrown when an input violates a documented precondition (out-of-range
// parameter, non-finite phase, degenerate configuration). The message names
// the violated condition; the CLI maps this to exit code 1.
class validation_error : public std::invalid_argument {
public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace nphase
