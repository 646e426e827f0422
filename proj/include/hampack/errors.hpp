#pragma once

#include <stdexcept>
#include <string>

namespace hampack {

// Produced output failed an internal consistency check (bad cycle, broken
// accounting, corrupted ownership map). Distinct from invalid_argument so
// the CLI can map it to its own exit code.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hampack
