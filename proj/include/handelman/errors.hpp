#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace handelman {

/// Malformed or structurally invalid input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure in a JSON document; `offset` is the byte position when the
/// failure is syntactic, and `location` a JSON pointer when it is structural.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset, std::string location)
      : InputError(what), offset_(offset), location_(std::move(location)) {}
  std::size_t offset() const { return offset_; }
  const std::string& location() const { return location_; }

 private:
  std::size_t offset_;
  std::string location_;
};

/// The polyhedron is unbounded, has empty interior, or admits no positive
/// scaling with sum c_i L_i = 1.
class NotNormalizable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Escalation exhausted without a certificate.
class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An expansion would exceed the configured lattice/memory cap.
class MemoryCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The --max-seconds soft cap was hit.
class TimeLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace handelman
