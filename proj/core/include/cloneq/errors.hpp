#pragma once

#include <stdexcept>
#include <string>

namespace cloneq {

// Thrown when a requested tensor space would exceed the configured dense-size
// guard. Callers that really want a bigger space pass an explicit guard.
class dimension_error : public std::runtime_error {
 public:
  explicit dimension_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cloneq
