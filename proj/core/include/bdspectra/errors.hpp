#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bdspectra {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad expression text, bad problem file, bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(std::size_t offset, const std::string& what);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public InputError {
 public:
  UnknownIdentifier(std::size_t offset, std::string name);
  std::size_t offset() const noexcept { return offset_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::size_t offset_;
  std::string name_;
};

/// A coefficient or a matrix realization is not valid at some t.
class ValidityError : public Error {
 public:
  using Error::Error;
};

/// Expression evaluated outside its domain (division by zero, ln of a
/// non-positive value, t outside the open interval, ...).
class DomainError : public ValidityError {
 public:
  DomainError(std::string subexpr, double t, const std::string& reason);
  const std::string& subexpr() const noexcept { return subexpr_; }
  double t() const noexcept { return t_; }

 private:
  std::string subexpr_;
  double t_;
};

/// Birth-death positivity (a_j > 0, b_j > 0 for j >= 1, b_0 >= 0) fails.
class PositivityViolation : public ValidityError {
 public:
  PositivityViolation(std::size_t j, char which, double value, double t);
  std::size_t index() const noexcept { return j_; }
  char which() const noexcept { return which_; }
  double value() const noexcept { return value_; }
  double t() const noexcept { return t_; }

 private:
  std::size_t j_;
  char which_;
  double value_;
  double t_;
};

/// Random-walk range condition (c_j in (0,1), c_0 in (0,1]) fails.
class RangeViolation : public ValidityError {
 public:
  RangeViolation(std::size_t j, double value, double t);
  std::size_t index() const noexcept { return j_; }
  double value() const noexcept { return value_; }
  double t() const noexcept { return t_; }

 private:
  std::size_t j_;
  double value_;
  double t_;
};

class OddOrder : public Error {
 public:
  explicit OddOrder(std::size_t size);
};

class DegenerateOffDiagonal : public Error {
 public:
  explicit DegenerateOffDiagonal(std::size_t j);
  std::size_t index() const noexcept { return j_; }

 private:
  std::size_t j_;
};

class ResidualTooLarge : public Error {
 public:
  explicit ResidualTooLarge(double residual);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class AllZero : public Error {
 public:
  AllZero();
};

/// Two algebraically identical routes disagree. Always an implementation bug.
class FormMismatch : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace bdspectra
