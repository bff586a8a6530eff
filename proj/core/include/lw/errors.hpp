#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lw {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parse failure; carries the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t offset)
      : Error(msg + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation outside the natural domain of a function (ln/sqrt of a
/// negative number, non-finite result, fractional power of a non-positive base).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NotNull : public Error {
 public:
  using Error::Error;
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

class NonPositiveFrameDet : public Error {
 public:
  using Error::Error;
};

class SignObstruction : public Error {
 public:
  using Error::Error;
};

class EquatorSingularity : public Error {
 public:
  using Error::Error;
};

class NorthPole : public Error {
 public:
  using Error::Error;
};

class NotOnSphere : public Error {
 public:
  using Error::Error;
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

class MissingDecomposition : public Error {
 public:
  using Error::Error;
};

class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

class StepRejected : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

}  // namespace lw
