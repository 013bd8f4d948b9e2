#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bdspectra/monotonicity.hpp"
#include "bdspectra/problem_file.hpp"

namespace bdspectra {

/// Outcome of one invariant over a grid. `witness` describes the first
/// failing grid point (smallest t).
struct PropertyResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string witness;

  bool passed() const noexcept { return failures == 0; }
};

struct VerifyOptions {
  std::size_t grid = 1000;
  std::size_t threads = 0;
  /// Criteria whose soundness is checked; empty means every applicable one.
  std::vector<CriterionId> criteria;
};

/// Runs the invariant suite at every interior grid point:
///   derivative forms agree      four expansions of lambda_k' within 1e-9 (1 + |lambda'|)
///   finite differences agree    quadratic form vs central differences, 1e-5 (1 + |lambda'|)
///   sturm matches dense         bisection vs dense eigensolver, 1e-10 max(1, |S|)
///   positivity                  lambda_0 > 0
///   interlacing                 leading sections strictly interlace
///   sign changes                q-vector of lambda_k has n - k sign changes
///   bound sandwich              m1 < lambda_max <= m2 and 0 < lambda_min < mu
///   spectrum symmetry           eig(B) = -eig(B) (random walks)
///   containment                 ISMAIL_MAX => B_MAX, ISMAIL_C_MAX↑ => D_MAX↑
///   soundness <tag>             members have derivatives of the claimed sign,
///                               confirmed by finite differences
/// Random walks are checked through I + B. ValidityError propagates.
std::vector<PropertyResult> verify_problem(const Problem& problem, const VerifyOptions& options = {});

}  // namespace bdspectra
