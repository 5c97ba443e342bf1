#pragma once

#include <stdexcept>
#include <string>

namespace cmdp {

/// Input violates a domain rule, e.g. a row that does not sum to 1. Also
/// used for JSON syntax errors.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cmdp
