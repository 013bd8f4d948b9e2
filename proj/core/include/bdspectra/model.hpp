#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bdspectra/dual.hpp"
#include "bdspectra/expr.hpp"

namespace bdspectra {

/// Open interval (lo, hi) of the parameter t.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double t) const noexcept { return lo < t && t < hi; }
  double width() const noexcept { return hi - lo; }
  /// Interior grid point i of `count`: lo + (i + 1/2) * width / count.
  double grid_point(std::size_t i, std::size_t count) const noexcept {
    return lo + (static_cast<double>(i) + 0.5) * width() / static_cast<double>(count);
  }
};

/// Birth-death coefficient family a_0..a_n, b_0..b_n on an open interval.
///
/// The matrix A(t) has diagonal a_j + b_j, superdiagonal a_j and
/// subdiagonal b_{j+1}. Positivity (a_j > 0, b_j > 0 for j >= 1, b_0 >= 0)
/// is checked wherever the spec is sampled.
class BirthDeathSpec {
 public:
  BirthDeathSpec(std::vector<CoeffExpr> a, std::vector<CoeffExpr> b, Interval domain,
                 std::string name = {});

  /// Order index: matrices are (n+1) x (n+1).
  std::size_t n() const noexcept { return a_.size() - 1; }
  std::size_t size() const noexcept { return a_.size(); }
  const std::vector<CoeffExpr>& a() const noexcept { return a_; }
  const std::vector<CoeffExpr>& b() const noexcept { return b_; }
  const Interval& domain() const noexcept { return domain_; }
  const std::string& name() const noexcept { return name_; }

  /// Set iff b_0 is the literal constant 0. Conditions that need
  /// "b_0(t) = 0" test this flag, never a numeric tolerance.
  bool b0_identically_zero() const noexcept { return b0_zero_; }

 private:
  std::vector<CoeffExpr> a_;
  std::vector<CoeffExpr> b_;
  Interval domain_;
  std::string name_;
  bool b0_zero_ = false;
};

/// Random-walk family c_0..c_n (n >= 1). B(t) has zero diagonal,
/// superdiagonal c_j and subdiagonal 1 - c_{j+1}.
class RandomWalkSpec {
 public:
  RandomWalkSpec(std::vector<CoeffExpr> c, Interval domain, std::string name = {});

  std::size_t n() const noexcept { return c_.size() - 1; }
  std::size_t size() const noexcept { return c_.size(); }
  const std::vector<CoeffExpr>& c() const noexcept { return c_; }
  const Interval& domain() const noexcept { return domain_; }
  const std::string& name() const noexcept { return name_; }

  /// Set iff c_0 is the literal constant 1.
  bool c0_identically_one() const noexcept { return c0_one_; }

 private:
  std::vector<CoeffExpr> c_;
  Interval domain_;
  std::string name_;
  bool c0_one_ = false;
};

/// Coefficients and their derivatives at one t, already validated.
struct BirthDeathSample {
  double t = 0.0;
  std::vector<Dual> a;
  std::vector<Dual> b;

  std::size_t n() const noexcept { return a.size() - 1; }
  std::size_t size() const noexcept { return a.size(); }
};

struct RandomWalkSample {
  double t = 0.0;
  std::vector<Dual> c;

  std::size_t n() const noexcept { return c.size() - 1; }
  std::size_t size() const noexcept { return c.size(); }
};

/// Symmetric tridiagonal matrix.
struct TriSym {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
  double norm_inf() const noexcept;
  /// Leading k x k principal section.
  TriSym leading(std::size_t k) const;
};

/// General tridiagonal matrix.
struct TriGeneral {
  std::vector<double> diag;
  std::vector<double> sup;
  std::vector<double> sub;

  std::size_t size() const noexcept { return diag.size(); }
  double norm_inf() const noexcept;
};

/// Evaluates a_j, b_j with derivatives at t. Throws DomainError when t is
/// outside the open domain or an expression is undefined, and
/// PositivityViolation when a coefficient has the wrong sign.
BirthDeathSample sample(const BirthDeathSpec& spec, double t);
/// Throws DomainError or RangeViolation.
RandomWalkSample sample(const RandomWalkSpec& rw, double t);

TriGeneral assemble_A(const BirthDeathSample& s);
TriGeneral assemble_A(const BirthDeathSpec& spec, double t);
/// Entrywise derivative A'(t).
TriGeneral assemble_A_prime(const BirthDeathSample& s);

/// Symmetrization D A D^{-1}, built directly from the coefficients:
/// diagonal a_j + b_j, off-diagonal sqrt(a_j b_{j+1}).
TriSym assemble_S(const BirthDeathSample& s);
TriSym assemble_S(const BirthDeathSpec& spec, double t);
/// Entrywise derivative S'(t).
TriSym assemble_S_prime(const BirthDeathSample& s);

/// Diagonal of D: d_0 = 1, d_j = sqrt(a_0...a_{j-1} / (b_1...b_j)).
std::vector<double> assemble_D(const BirthDeathSample& s);
std::vector<double> assemble_D(const BirthDeathSpec& spec, double t);

TriGeneral assemble_B(const RandomWalkSample& s);
TriGeneral assemble_B(const RandomWalkSpec& rw, double t);

/// Symmetrized random walk S_w = T B T^{-1}: zero diagonal,
/// off-diagonal sqrt(delta_j) with delta_j = (1 - c_{j+1}) c_j.
TriSym assemble_S_w(const RandomWalkSample& s);

/// delta_j = (1 - c_{j+1}) c_j for j = 0..n-1, with derivatives.
std::vector<Dual> random_walk_deltas(const RandomWalkSample& s);

/// The birth-death spec of I + B(t): a_i = c_i, b_i = 1 - c_i.
/// Its eigenvalues are those of B(t) shifted by +1, with equal derivatives.
/// When c_0 is the literal 1, b_0 is the literal 0.
BirthDeathSpec rw_to_bd_hat(const RandomWalkSpec& rw);

/// Birth-death spec A_w of order m = (n-1)/2 for an even-size random walk:
/// a_j = x_j = delta_{2j}, b_j = y_j = delta_{2j-1}, b_0 = 0.
/// The positive eigenvalues of B(t) are the square roots of those of A_w(t).
/// Throws OddOrder when n+1 is odd.
BirthDeathSpec golub_kahan_reduce(const RandomWalkSpec& rw);

/// Leading principal minors Delta_0..Delta_{n+1} of A(t) by the recursion
/// Delta_k = a_{k-1} Delta_{k-1} + b_0 b_1 ... b_{k-1}.
std::vector<double> leading_minors(const BirthDeathSample& s);

}  // namespace bdspectra
