#pragma once

#include <functional>
#include <vector>

namespace bdspectra::testing {

/// (f(t+h) - f(t-h)) / 2h.
double central_difference(const std::function<double(double)>& f, double t, double h = 1e-6);

/// Root of f bracketed by [lo, hi] (sign change required), to about 1e-14.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi);

/// Eigenvalues of the symmetric tridiagonal matrix (diag, off) from a
/// general dense solver, ascending.
std::vector<double> dense_symmetric_eigs(const std::vector<double>& diag, const std::vector<double>& off);

}  // namespace bdspectra::testing
