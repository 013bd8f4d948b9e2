#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bdspectra/model.hpp"

namespace bdspectra {

/// Simple spectrum of a Jacobi matrix with its q-eigenvectors.
/// `q[k]` is the eigenvector of `values[k]`, scaled so that q[k][0] == 1.
/// With ascending order, q[k] has exactly n - k sign changes: the vector of
/// the largest eigenvalue is positive and that of the smallest alternates.
struct Spectrum {
  std::vector<double> values;
  std::vector<std::vector<double>> q;

  std::size_t size() const noexcept { return values.size(); }
};

/// Number of eigenvalues of m strictly below x.
std::size_t sturm_count(const TriSym& m, double x);

/// [lo, hi] enclosing every Gershgorin disc.
std::pair<double, double> gershgorin_interval(const TriSym& m);

/// 1e-13 * max(1, |m|_inf).
double default_tolerance(const TriSym& m);

/// All eigenvalues, ascending, each bisected to width <= tol.
/// Throws DegenerateOffDiagonal when an off-diagonal entry is 0.
std::vector<double> eigenvalues_bisect(const TriSym& m, double tol);
inline std::vector<double> eigenvalues_bisect(const TriSym& m) {
  return eigenvalues_bisect(m, default_tolerance(m));
}

/// Eigenvector with q_0 = 1 from the three-term recursion
/// q_{j+1} = ((lambda - diag_j) q_j - off_{j-1} q_{j-1}) / off_j.
/// When the scaled residual exceeds 1e-8 the vector is recomputed by inverse
/// iteration; ResidualTooLarge is thrown if that also fails.
std::vector<double> eigenvector_q(const TriSym& m, double lambda);

/// |M q - lambda q|_inf / (|q|_inf * max(1, |M|_inf)).
double eigen_residual(const TriSym& m, double lambda, const std::vector<double>& q);

/// Sign alternations of the nonzero entries. Throws AllZero.
std::size_t sign_changes(const std::vector<double>& v);

/// Strict interlacing of every pair of consecutive leading sections, with
/// 1e-12 * max(1, |m|_inf) slack.
bool interlacing_check(const TriSym& m);
bool interlacing_check(const BirthDeathSpec& spec, double t);

/// Eigenvalues bisected until the bracket stops shrinking, with q-vectors.
Spectrum compute_spectrum(const TriSym& m);

}  // namespace bdspectra
