#pragma once

#include <functional>
#include <string>
#include <vector>

namespace emonet {

using WarningHandler = std::function<void(const std::string&)>;

// Emits a warning through the installed handler (stderr by default).
// Safe to call from worker threads.
void warn(const std::string& message);

// Installs a new handler and returns the previous one.
WarningHandler set_warning_handler(WarningHandler handler);

// RAII capture of warnings, mostly for tests.
class ScopedWarningCapture {
 public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }
  bool contains(const std::string& needle) const;

 private:
  std::vector<std::string> messages_;
  WarningHandler previous_;
};

}  // namespace emonet
