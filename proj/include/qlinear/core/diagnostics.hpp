#pragma once

#include <functional>
#include <string_view>

namespace qlinear {

// Non-fatal conditions (boundary contamination, marginal grid coverage) are
// routed through a process-wide handler. The default writes to stderr.
using WarningHandler = std::function<void(std::string_view)>;

/// Installs `handler` and returns the previous one. Passing an empty
/// function restores the default.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

/// RAII capture of warnings, mostly for tests.
class ScopedWarningHandler {
 public:
  explicit ScopedWarningHandler(WarningHandler handler)
      : previous_(set_warning_handler(std::move(handler))) {}
  ~ScopedWarningHandler() { set_warning_handler(std::move(previous_)); }
  ScopedWarningHandler(const ScopedWarningHandler&) = delete;
  ScopedWarningHandler& operator=(const ScopedWarningHandler&) = delete;

 private:
  WarningHandler previous_;
};

}  // namespace qlinear
