#include "emonet/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace emonet {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& current_handler() {
  static WarningHandler handler = [](const std::string& msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return handler;
}

}  // namespace

void warn(const std::string& message) {
  std::lock_guard lock(handler_mutex());
  if (current_handler()) current_handler()(message);
}

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  auto previous = std::move(current_handler());
  current_handler() = std::move(handler);
  return previous;
}

ScopedWarningCapture::ScopedWarningCapture() {
  previous_ = set_warning_handler([this](const std::string& msg) { messages_.push_back(msg); });
}

ScopedWarningCapture::~ScopedWarningCapture() { set_warning_handler(std::move(previous_)); }

bool ScopedWarningCapture::contains(const std::string& needle) const {
  for (const auto& m : messages_) {
    if (m.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace emonet
