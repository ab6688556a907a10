#pragma once

#include <stdexcept>
#include <string>

namespace hwmlab {

/// Thrown when an operation would exceed its resource guard (rank, depth,
/// word length, orbit size). Callers that accept the cost can lift the
/// bound through the Limits argument of the guarded operation.
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shared knob for guarded operations. Default-constructed Limits keep
/// every documented bound in force; `unlimited = true` lifts them all.
struct Limits {
  bool unlimited = false;
};

inline void require_guard(bool ok, const std::string& what) {
  if (!ok) throw guard_error(what);
}

inline void require_arg(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace hwmlab
