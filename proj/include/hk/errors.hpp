#pragma once

#include <stdexcept>
#include <string>

namespace hk {

// Raised when a line bundle class (or one of its restrictions) lies on the
// boundary of, or outside, the effective cone. Counts are infinite there.
class NotBig : public std::domain_error {
 public:
  explicit NotBig(const std::string& what) : std::domain_error(what) {}
};

class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// The requested height zeta value sits too close to its pole for the
// available work budget to certify the requested tolerance.
class TooCloseToPole : public std::runtime_error {
 public:
  explicit TooCloseToPole(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

class AllZero : public std::invalid_argument {
 public:
  explicit AllZero(const std::string& what) : std::invalid_argument(what) {}
};

class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

class QuadratureFailure : public std::runtime_error {
 public:
  explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateFit : public std::runtime_error {
 public:
  explicit DegenerateFit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hk
