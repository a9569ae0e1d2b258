#include "kmodes/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace kmodes {

namespace {

void default_handler(std::string_view message) {
  std::cerr << "warning: " << message << '\n';
}

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& current_handler() {
  static WarningHandler h = default_handler;
  return h;
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  if (!handler) handler = default_handler;
  return std::exchange(current_handler(), std::move(handler));
}

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  current_handler()(message);
}

}  // namespace kmodes
