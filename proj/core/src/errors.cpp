#include "bdspectra/errors.hpp"

#include "bdspectra/expr.hpp"

namespace bdspectra {

namespace {
std::string fmt_num(double v) { return format_number(v); }
}  // namespace

SyntaxError::SyntaxError(std::size_t offset, const std::string& what)
    : InputError("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

UnknownIdentifier::UnknownIdentifier(std::size_t offset, std::string name)
    : InputError("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
      offset_(offset),
      name_(std::move(name)) {}

DomainError::DomainError(std::string subexpr, double t, const std::string& reason)
    : ValidityError("domain error in " + subexpr + " at t=" + fmt_num(t) + ": " + reason),
      subexpr_(std::move(subexpr)),
      t_(t) {}

PositivityViolation::PositivityViolation(std::size_t j, char which, double value, double t)
    : ValidityError("positivity violated at t=" + fmt_num(t) + ": " + std::string(1, which) + "_" +
                    std::to_string(j) + " = " + fmt_num(value)),
      j_(j),
      which_(which),
      value_(value),
      t_(t) {}

RangeViolation::RangeViolation(std::size_t j, double value, double t)
    : ValidityError("range violated at t=" + fmt_num(t) + ": c_" + std::to_string(j) + " = " +
                    fmt_num(value)),
      j_(j),
      value_(value),
      t_(t) {}

OddOrder::OddOrder(std::size_t size)
    : Error("matrix order " + std::to_string(size) +
            " is odd; 0 is always an eigenvalue, drop it and reduce the even complement") {}

DegenerateOffDiagonal::DegenerateOffDiagonal(std::size_t j)
    : Error("off-diagonal entry " + std::to_string(j) + " is zero; split the matrix"), j_(j) {}

ResidualTooLarge::ResidualTooLarge(double residual)
    : Error("eigenvector residual too large: " + fmt_num(residual)), residual_(residual) {}

AllZero::AllZero() : Error("sign count of an all-zero vector") {}

}  // namespace bdspectra
