#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qdesign/numeric.hpp"

namespace qdesign {

// Caller passed arguments outside an operation's domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input with invalid content (e.g. non-positive multiplicity).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal identity failed; indicates a bug, never a user error.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A search or enumeration exceeded its budget. When the solver aborts it
// reports the interval known to contain the answer.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what,
                              std::optional<BigInt> lower = std::nullopt,
                              std::optional<BigInt> upper = std::nullopt)
      : std::runtime_error(what), lower_(std::move(lower)), upper_(std::move(upper)) {}

  const std::optional<BigInt>& lower() const { return lower_; }
  const std::optional<BigInt>& upper() const { return upper_; }

 private:
  std::optional<BigInt> lower_;
  std::optional<BigInt> upper_;
};

}  // namespace qdesign
