#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "bdspectra/dual.hpp"
#include "bdspectra/eigen_tri.hpp"
#include "bdspectra/model.hpp"

namespace bdspectra {

// Eigenvalue derivatives lambda_k'(t) = q^T S' q / q^T q, where q is the
// q-eigenvector of the symmetrized matrix. The numerator can be expanded in
// several algebraically equivalent ways; each expansion is exposed as a list
// of per-index terms so that monotonicity conditions can reason about signs.
//
// With P_j = a_j b_{j+1}, o_j = sqrt(P_j), d_j = a_j + b_j, W_j = a_j b_j' - a_j' b_j:
//
//   rawdot   term_j = (a_j' + b_j') q_j^2 + 2 o_j' q_j q_{j+1}
//   grouped  term_j = (d_j' + l_j (lambda - d_j)) q_j^2 + (o_{j-1}' - l_j o_{j-1}) q_{j-1} q_j,
//            term_n = (d_n' + l_{n-1} (lambda - d_n)) q_n^2,   l_j = P_j' / (2 P_j)
//   newform  term_0 = (a_0' lambda + W_0) q_0^2 / a_0,
//            term_j = ((a_j' lambda + W_j) q_j^2 + sqrt(a_{j-1}/b_j) W_j q_{j-1} q_j) / a_j
//   sumsq    term_j = (d_j' + w_j (lambda - d_j)) q_j^2,  term_n = d_n' q_n^2,  w_j = Pi_j'/Pi_j

enum class DerivativeForm { rawdot, grouped, newform, sumsq };

std::string_view form_name(DerivativeForm form);

struct DerivativeBreakdown {
  double total = 0.0;          ///< lambda_k'
  std::vector<double> terms;   ///< per-index contributions; sum == total * norm2
  double norm2 = 0.0;          ///< q^T q
  DerivativeForm form_used = DerivativeForm::rawdot;
};

/// Per-index expansion of q^T S' q for the eigenpair (lambda, q).
DerivativeBreakdown derivative_terms(const BirthDeathSample& s, double lambda,
                                     const std::vector<double>& q, DerivativeForm form);

/// lambda_k' by `form`. All four forms are evaluated and compared; a
/// disagreement beyond 1e-9 * (1 + |lambda'|) throws FormMismatch.
DerivativeBreakdown lambda_prime(const BirthDeathSample& s, const Spectrum& spectrum,
                                 std::size_t k, DerivativeForm form = DerivativeForm::rawdot);
DerivativeBreakdown lambda_prime(const BirthDeathSpec& spec, double t, std::size_t k,
                                 DerivativeForm form = DerivativeForm::rawdot);

/// lambda_k' for every k (rawdot, cross-checked).
std::vector<double> lambda_primes(const BirthDeathSample& s, const Spectrum& spectrum);

/// Largest pairwise gap between the four forms for eigenpair k.
double form_disagreement(const BirthDeathSample& s, const Spectrum& spectrum, std::size_t k);

struct AuxSequences {
  /// e_j = P_{j-1}/P_j with e_0 = 0, j = 0..n-1 (value and derivative).
  std::vector<Dual> e;
  /// (sqrt(e_j))', j = 0..n-1; 0 at j = 0.
  std::vector<double> sqrt_e_prime;
  /// l_j = P_j' / (2 P_j), j = 0..n-1.
  std::vector<double> ell;
  /// Pi_n = 1, Pi_j Pi_{j+1} = P_j.
  std::vector<double> pi;
  /// Pi_j'/Pi_j from the explicit alternating sums (index-corrected even case).
  std::vector<double> pi_logd;
  /// Pi_j'/Pi_j with the even-parity denominators as originally printed.
  /// Not finite when the printed index reaches P_{-1} = 0.
  std::vector<double> pi_logd_printed;
  /// Pi_j'/Pi_j by differentiating the recursion with dual numbers.
  std::vector<double> pi_logd_dual;
  /// chi_j in closed form, j = 0..n.
  std::vector<double> chi;
  /// chi_j from chi_j = sqrt(a_{j-1}/b_j) chi_{j-1} + b_0 / (b_j d_j).
  std::vector<double> chi_recursive;
  /// q_j(0) from the three-term recursion at x = 0; equals (-1)^j chi_j.
  std::vector<double> q_at_zero;
};

AuxSequences aux_sequences(const BirthDeathSample& s);
AuxSequences aux_sequences(const BirthDeathSpec& spec, double t);

struct BoundSet {
  double m1 = 0.0;     ///< max_j (a_j + b_j)
  double sigma = 0.0;  ///< Gershgorin bound from the columns of A
  double rho = 0.0;    ///< Gershgorin bound from the rows of S
  double m2 = 0.0;     ///< min(sigma, rho)
  double mu = 0.0;     ///< min_j (a_j + b_j)
};

BoundSet bounds(const BirthDeathSample& s);
BoundSet bounds(const BirthDeathSpec& spec, double t);

}  // namespace bdspectra
