#pragma once

#include <stdexcept>
#include <string>

namespace chanwin {

/// Error reported by framework operations (bad handles, registry
/// violations, lifecycle misuse). The framework never aborts the
/// process on these; they surface to the calling thread.
class FrameworkError : public std::runtime_error {
 public:
  explicit FrameworkError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chanwin
