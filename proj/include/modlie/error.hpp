#pragma once

#include <stdexcept>
#include <string>

namespace modlie {

// Bad input or a violated precondition. The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computed structure escaped the classification tables. Exit code 3.
struct AlarmError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw ValidationError(msg); }

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace modlie
