#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bdspectra/model.hpp"

namespace bdspectra {

// Ground truth that shares no code with the Sturm/q-vector path: dense
// eigensolvers on the full matrix, central differences of sorted spectra, and
// closed forms of the worked examples.

/// Largest matrix accepted by the dense routines.
inline constexpr std::size_t kDenseLimit = 64;

/// Ascending eigenvalues via a dense Hessenberg QR solve. Imaginary parts
/// larger than 1e-8 * scale throw ConvergenceFailure (spectra here are real).
std::vector<double> dense_eig(const TriGeneral& m);
/// Ascending eigenvalues via a dense symmetric QR solve.
std::vector<double> dense_eig(const TriSym& m);

/// det of the leading k x k block of m, by dense LU.
double dense_leading_minor(const TriGeneral& m, std::size_t k);

/// (lambda_k(t+h) - lambda_k(t-h)) / 2h with sorted-index matching. When the
/// estimates for h and h/2 differ by more than 1e-4 relative, the Richardson
/// combination (4 D(h/2) - D(h)) / 3 is returned instead.
double fd_lambda_prime(const BirthDeathSpec& spec, double t, std::size_t k, double h = 1e-6);
double fd_lambda_prime(const RandomWalkSpec& rw, double t, std::size_t k, double h = 1e-6);

struct OracleReport {
  double t = 0.0;
  std::size_t k = 0;
  double fd_deriv = 0.0;
  double form_deriv = 0.0;
  bool agree = false;  ///< |fd - form| <= 1e-5 (1 + |form|)
  std::optional<double> closed_form;
};

inline bool derivatives_agree(double fd, double form) {
  return std::abs(fd - form) <= 1e-5 * (1.0 + std::abs(form));
}

/// Compare the quadratic-form derivative of lambda_k with central differences.
OracleReport oracle_report(const BirthDeathSpec& spec, double t, std::size_t k);

/// Worked examples with known eigenvalue formulas.
///   a1_mid  middle eigenvalue of the 3x3 example with a = [1/t, 1-t, 1/t],
///           b = [1/(1-t), t, 1/(1-t)]: 1/t + 1/(1-t)
///   b1_max  largest eigenvalue of the 2x2 random walk c = [1/(1+t), 1/(1+2t)]
enum class ClosedForm { a1_mid, b1_max };

std::string_view closed_form_name(ClosedForm which);
/// Accepts "A1_mid"/"B1_max" (case-insensitive).
std::optional<ClosedForm> parse_closed_form(std::string_view name);

struct ClosedFormCheck {
  double t = 0.0;
  double dense = 0.0;                    ///< dense eigensolve of the example matrix
  double published = 0.0;                ///< formula as originally stated
  std::optional<double> derived;         ///< formula derived from the 2x2 characteristic polynomial
  bool published_matches = false;        ///< |published - dense| <= 1e-10
  std::optional<bool> derived_matches;
  std::string verdict;
};

/// Value of the registered formula that matches the dense solver.
double closed_form(ClosedForm which, double t);
ClosedFormCheck check_closed_form(ClosedForm which, double t);

/// Specs of the worked examples on (0, 1).
BirthDeathSpec example_a1();
BirthDeathSpec example_a2();
RandomWalkSpec example_b1();

}  // namespace bdspectra
