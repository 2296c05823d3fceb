#pragma once

#include <stdexcept>
#include <string>

namespace wigner_lab {

// Exit-code classes used by the CLI: usage (2), domain (3), numerical guard (4).
class SizingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when an object is only meaningful as a distribution (a retained delta
// factor) and a pointwise value is requested.
class DistributionalError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NumericalGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace wigner_lab
