#include "bdspectra/eigen_tri.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bdspectra/errors.hpp"

namespace bdspectra {

namespace {

constexpr double kResidualLimit = 1e-8;
constexpr int kMaxBisections = 256;
constexpr int kInverseIterations = 4;

double scale_of(const TriSym& m) { return std::max(1.0, m.norm_inf()); }

// Solves (m - shift I) x = rhs by Gaussian elimination with partial pivoting.
// Zero pivots are nudged to a tiny multiple of the scale so the solve always
// completes; inverse iteration only needs the direction.
std::vector<double> shifted_solve(const TriSym& m, double shift, std::vector<double> rhs) {
  const std::size_t n = m.size();
  const double tiny = std::numeric_limits<double>::epsilon() * scale_of(m);
  std::vector<double> d(n), u(n, 0.0), u2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = m.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) u[i] = m.off[i];
  std::vector<double> sub(m.off);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(sub[i]) > std::abs(d[i])) {
      // swap rows i and i+1
      std::swap(d[i], sub[i]);
      std::swap(u[i], d[i + 1]);
      if (i + 2 < n) std::swap(u2[i], u[i + 1]);
      std::swap(rhs[i], rhs[i + 1]);
    }
    if (d[i] == 0.0) d[i] = tiny;
    const double factor = sub[i] / d[i];
    d[i + 1] -= factor * u[i];
    if (i + 2 < n) u[i + 1] -= factor * u2[i];
    rhs[i + 1] -= factor * rhs[i];
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;

  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double v = rhs[ii];
    if (ii + 1 < n) v -= u[ii] * x[ii + 1];
    if (ii + 2 < n) v -= u2[ii] * x[ii + 2];
    x[ii] = v / d[ii];
  }
  return x;
}

std::vector<double> inverse_iteration(const TriSym& m, double lambda) {
  const std::size_t n = m.size();
  const double shift = lambda + 1e-14 * m.norm_inf();
  std::vector<double> x(n, 1.0);
  for (int it = 0; it < kInverseIterations; ++it) {
    x = shifted_solve(m, shift, x);
    double big = 0.0;
    for (double v : x) big = std::max(big, std::abs(v));
    if (!(big > 0.0) || !std::isfinite(big)) break;
    for (double& v : x) v /= big;
  }
  if (x[0] == 0.0 || !std::isfinite(x[0])) return x;
  const double first = x[0];
  for (double& v : x) v /= first;
  return x;
}

std::vector<double> recursion_q(const TriSym& m, double lambda) {
  const std::size_t n = m.size();
  std::vector<double> q(n);
  q[0] = 1.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double next = (lambda - m.diag[j]) * q[j];
    if (j > 0) next -= m.off[j - 1] * q[j - 1];
    q[j + 1] = next / m.off[j];
  }
  return q;
}

}  // namespace

std::size_t sturm_count(const TriSym& m, double x) {
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, m.norm_inf());
  std::size_t count = 0;
  double p = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double off2 = i == 0 ? 0.0 : m.off[i - 1] * m.off[i - 1];
    p = (m.diag[i] - x) - off2 / p;
    if (std::abs(p) < pivmin) p = -pivmin;
    if (p < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_interval(const TriSym& m) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(m.off[i - 1]);
    if (i < m.off.size()) r += std::abs(m.off[i]);
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  // widen so the counts at the ends are exactly 0 and n+1
  const double pad = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, m.norm_inf());
  return {lo - pad, hi + pad};
}

double default_tolerance(const TriSym& m) { return 1e-13 * scale_of(m); }

std::vector<double> eigenvalues_bisect(const TriSym& m, double tol) {
  for (std::size_t j = 0; j < m.off.size(); ++j)
    if (m.off[j] == 0.0) throw DegenerateOffDiagonal(j);
  const auto [glo, ghi] = gershgorin_interval(m);
  const std::size_t n = m.size();
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    // smallest x with count(x) >= k+1 is just above lambda_k
    double lo = k == 0 ? glo : std::max(glo, values[k - 1]);
    double hi = ghi;
    for (int it = 0; it < kMaxBisections && hi - lo > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(m, mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    values[k] = 0.5 * (lo + hi);
  }
  return values;
}

double eigen_residual(const TriSym& m, double lambda, const std::vector<double>& q) {
  double res = 0.0;
  double qmax = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double r = (m.diag[i] - lambda) * q[i];
    if (i > 0) r += m.off[i - 1] * q[i - 1];
    if (i + 1 < m.size()) r += m.off[i] * q[i + 1];
    res = std::max(res, std::abs(r));
    qmax = std::max(qmax, std::abs(q[i]));
  }
  if (!std::isfinite(res) || !std::isfinite(qmax)) return std::numeric_limits<double>::infinity();
  return res / (qmax * scale_of(m));
}

std::vector<double> eigenvector_q(const TriSym& m, double lambda) {
  for (std::size_t j = 0; j < m.off.size(); ++j)
    if (m.off[j] == 0.0) throw DegenerateOffDiagonal(j);
  auto q = recursion_q(m, lambda);
  const double res = eigen_residual(m, lambda, q);
  if (res <= kResidualLimit) return q;
  auto alt = inverse_iteration(m, lambda);
  const double alt_res = eigen_residual(m, lambda, alt);
  if (alt_res <= kResidualLimit) return alt;
  throw ResidualTooLarge(std::min(res, alt_res));
}

std::size_t sign_changes(const std::vector<double>& v) {
  std::size_t changes = 0;
  int last = 0;
  for (double x : v) {
    const int s = (x > 0.0) - (x < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  if (last == 0) throw AllZero();
  return changes;
}

bool interlacing_check(const TriSym& m) {
  const double slack = 1e-12 * scale_of(m);
  std::vector<double> prev = {m.diag[0]};
  for (std::size_t k = 2; k <= m.size(); ++k) {
    const auto cur = eigenvalues_bisect(m.leading(k));
    for (std::size_t i = 0; i < prev.size(); ++i)
      if (!(cur[i] < prev[i] + slack && prev[i] < cur[i + 1] + slack)) return false;
    prev = cur;
  }
  return true;
}

bool interlacing_check(const BirthDeathSpec& spec, double t) {
  return interlacing_check(assemble_S(spec, t));
}

Spectrum compute_spectrum(const TriSym& m) {
  Spectrum s;
  s.values = eigenvalues_bisect(m, 0.0);
  s.q.reserve(s.values.size());
  for (double v : s.values) s.q.push_back(eigenvector_q(m, v));
  return s;
}

}  // namespace bdspectra
