#include "bdspectra/spectral_calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "bdspectra/errors.hpp"

namespace bdspectra {

namespace {

constexpr double kFormTolerance = 1e-9;

struct Prepared {
  std::size_t n;
  std::vector<Dual> prod;  // P_j = a_j b_{j+1}
  std::vector<Dual> off;   // o_j = sqrt(P_j)
  std::vector<double> ell;
  std::vector<double> dprime;  // a_j' + b_j'
  std::vector<double> diag;    // a_j + b_j
};

Prepared prepare(const BirthDeathSample& s) {
  Prepared p;
  p.n = s.n();
  for (std::size_t j = 0; j < p.n; ++j) {
    const Dual prod = s.a[j] * s.b[j + 1];
    p.prod.push_back(prod);
    p.off.push_back(sqrt(prod));
    p.ell.push_back(prod.deriv / (2.0 * prod.value));
  }
  for (std::size_t j = 0; j <= p.n; ++j) {
    p.dprime.push_back(s.a[j].deriv + s.b[j].deriv);
    p.diag.push_back(s.a[j].value + s.b[j].value);
  }
  return p;
}

// Pi_j'/Pi_j = sum_{i=j}^{n-1} (-1)^{i-j} L_i, written out by parity of n-j.
// `printed_even` reproduces the denominators of the even case as first
// published, where the subtracted terms are divided by P_{k+2i-1}.
std::vector<double> pi_log_derivative(const Prepared& p, bool printed_even) {
  const auto n = static_cast<long>(p.n);
  const auto P = [&](long i) { return i < 0 ? 0.0 : p.prod[static_cast<std::size_t>(i)].value; };
  const auto dP = [&](long i) { return p.prod[static_cast<std::size_t>(i)].deriv; };
  std::vector<double> out(p.n + 1, 0.0);
  for (long k = 0; k < n; ++k) {
    double sum = 0.0;
    if ((n - k) % 2 == 1) {
      for (long j = 0; j <= (n - k - 1) / 2; ++j) sum += dP(k + 2 * j) / P(k + 2 * j);
      for (long j = 1; j <= (n - k - 1) / 2; ++j) sum -= dP(k + 2 * j - 1) / P(k + 2 * j - 1);
    } else {
      for (long j = 0; j <= (n - k - 2) / 2; ++j) sum += dP(k + 2 * j) / P(k + 2 * j);
      for (long j = 0; j <= (n - k - 2) / 2; ++j) {
        const long den = printed_even ? k + 2 * j - 1 : k + 2 * j + 1;
        sum -= dP(k + 2 * j + 1) / P(den);
      }
    }
    out[static_cast<std::size_t>(k)] = sum;
  }
  return out;
}

double sum_of(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  return total;
}

}  // namespace

std::string_view form_name(DerivativeForm form) {
  switch (form) {
    case DerivativeForm::rawdot: return "rawdot";
    case DerivativeForm::grouped: return "grouped";
    case DerivativeForm::newform: return "newform";
    case DerivativeForm::sumsq: return "sumsq";
  }
  return "?";
}

DerivativeBreakdown derivative_terms(const BirthDeathSample& s, double lambda,
                                     const std::vector<double>& q, DerivativeForm form) {
  const Prepared p = prepare(s);
  const std::size_t n = p.n;
  DerivativeBreakdown out;
  out.form_used = form;
  out.terms.assign(n + 1, 0.0);
  for (double v : q) out.norm2 += v * v;

  switch (form) {
    case DerivativeForm::rawdot:
      for (std::size_t j = 0; j <= n; ++j) {
        out.terms[j] = p.dprime[j] * q[j] * q[j];
        if (j < n) out.terms[j] += 2.0 * p.off[j].deriv * q[j] * q[j + 1];
      }
      break;
    case DerivativeForm::grouped:
      for (std::size_t j = 0; j < n; ++j) {
        out.terms[j] = (p.dprime[j] + p.ell[j] * (lambda - p.diag[j])) * q[j] * q[j];
        if (j > 0)
          out.terms[j] += (p.off[j - 1].deriv - p.ell[j] * p.off[j - 1].value) * q[j - 1] * q[j];
      }
      out.terms[n] = (p.dprime[n] + (n > 0 ? p.ell[n - 1] : 0.0) * (lambda - p.diag[n])) * q[n] * q[n];
      break;
    case DerivativeForm::newform:
      for (std::size_t j = 0; j <= n; ++j) {
        const double w = s.a[j].value * s.b[j].deriv - s.a[j].deriv * s.b[j].value;
        double term = (s.a[j].deriv * lambda + w) * q[j] * q[j];
        if (j > 0) term += std::sqrt(s.a[j - 1].value / s.b[j].value) * w * q[j - 1] * q[j];
        out.terms[j] = term / s.a[j].value;
      }
      break;
    case DerivativeForm::sumsq: {
      const auto w = pi_log_derivative(p, false);
      for (std::size_t j = 0; j < n; ++j)
        out.terms[j] = (p.dprime[j] + w[j] * (lambda - p.diag[j])) * q[j] * q[j];
      out.terms[n] = p.dprime[n] * q[n] * q[n];
      break;
    }
  }
  out.total = sum_of(out.terms) / out.norm2;
  return out;
}

double form_disagreement(const BirthDeathSample& s, const Spectrum& spectrum, std::size_t k) {
  constexpr std::array forms = {DerivativeForm::rawdot, DerivativeForm::grouped,
                                DerivativeForm::newform, DerivativeForm::sumsq};
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (DerivativeForm f : forms) {
    const double v = derivative_terms(s, spectrum.values[k], spectrum.q[k], f).total;
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    lo = first ? v : std::min(lo, v);
    hi = first ? v : std::max(hi, v);
    first = false;
  }
  return hi - lo;
}

DerivativeBreakdown lambda_prime(const BirthDeathSample& s, const Spectrum& spectrum,
                                 std::size_t k, DerivativeForm form) {
  if (k >= spectrum.size()) throw InputError("eigenvalue index out of range");
  DerivativeBreakdown chosen = derivative_terms(s, spectrum.values[k], spectrum.q[k], form);
  const double gap = form_disagreement(s, spectrum, k);
  if (!(gap <= kFormTolerance * (1.0 + std::abs(chosen.total))))
    throw FormMismatch("derivative forms disagree by " + format_number(gap) + " at t=" +
                       format_number(s.t) + ", k=" + std::to_string(k));
  return chosen;
}

DerivativeBreakdown lambda_prime(const BirthDeathSpec& spec, double t, std::size_t k,
                                 DerivativeForm form) {
  const auto s = sample(spec, t);
  return lambda_prime(s, compute_spectrum(assemble_S(s)), k, form);
}

std::vector<double> lambda_primes(const BirthDeathSample& s, const Spectrum& spectrum) {
  std::vector<double> out;
  out.reserve(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) out.push_back(lambda_prime(s, spectrum, k).total);
  return out;
}

AuxSequences aux_sequences(const BirthDeathSample& s) {
  const Prepared p = prepare(s);
  const std::size_t n = p.n;
  AuxSequences aux;

  for (std::size_t j = 0; j < n; ++j) {
    if (j == 0) {
      aux.e.emplace_back(0.0, 0.0);
      aux.sqrt_e_prime.push_back(0.0);
    } else {
      const Dual e = p.prod[j - 1] / p.prod[j];
      aux.e.push_back(e);
      aux.sqrt_e_prime.push_back(sqrt(e).deriv);
    }
  }
  aux.ell = p.ell;

  aux.pi.assign(n + 1, 1.0);
  std::vector<Dual> pid(n + 1, Dual(1.0, 0.0));
  for (std::size_t j = n; j-- > 0;) {
    pid[j] = p.prod[j] / pid[j + 1];
    aux.pi[j] = pid[j].value;
  }
  for (const Dual& v : pid) aux.pi_logd_dual.push_back(v.deriv / v.value);
  aux.pi_logd = pi_log_derivative(p, false);
  aux.pi_logd_printed = pi_log_derivative(p, true);

  // closed form: sum_k (b_0..b_{k-1})(a_k..a_{j-1}) / sqrt(a_0..a_{j-1} b_1..b_j)
  aux.chi.assign(n + 1, 1.0);
  for (std::size_t j = 1; j <= n; ++j) {
    double num = 0.0;
    for (std::size_t k = 0; k <= j; ++k) {
      double term = 1.0;
      for (std::size_t i = 0; i < k; ++i) term *= s.b[i].value;
      for (std::size_t i = k; i < j; ++i) term *= s.a[i].value;
      num += term;
    }
    double den = 1.0;
    for (std::size_t i = 0; i < j; ++i) den *= s.a[i].value * s.b[i + 1].value;
    aux.chi[j] = num / std::sqrt(den);
  }

  const auto d = assemble_D(s);
  aux.chi_recursive.assign(n + 1, 1.0);
  for (std::size_t j = 1; j <= n; ++j)
    aux.chi_recursive[j] = std::sqrt(s.a[j - 1].value / s.b[j].value) * aux.chi_recursive[j - 1] +
                           s.b[0].value / (s.b[j].value * d[j]);

  aux.q_at_zero.assign(n + 1, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    double next = -p.diag[j] * aux.q_at_zero[j];
    if (j > 0) next -= p.off[j - 1].value * aux.q_at_zero[j - 1];
    aux.q_at_zero[j + 1] = next / p.off[j].value;
  }
  return aux;
}

AuxSequences aux_sequences(const BirthDeathSpec& spec, double t) {
  return aux_sequences(sample(spec, t));
}

BoundSet bounds(const BirthDeathSample& s) {
  const std::size_t n = s.n();
  const auto d = [&](std::size_t j) { return s.a[j].value + s.b[j].value; };
  const auto o = [&](std::size_t j) { return std::sqrt(s.a[j].value * s.b[j + 1].value); };
  BoundSet b;
  b.m1 = d(0);
  b.mu = d(0);
  for (std::size_t j = 1; j <= n; ++j) {
    b.m1 = std::max(b.m1, d(j));
    b.mu = std::min(b.mu, d(j));
  }
  b.sigma = std::max(2.0 * s.a[0].value + s.b[0].value, s.a[n].value + 2.0 * s.b[n].value);
  for (std::size_t i = 1; i < n; ++i) b.sigma = std::max(b.sigma, 2.0 * d(i));
  if (n == 0) {
    b.rho = d(0);
  } else {
    b.rho = std::max(d(0) + o(0), d(n) + o(n - 1));
    for (std::size_t i = 1; i < n; ++i) b.rho = std::max(b.rho, d(i) + o(i - 1) + o(i));
  }
  b.m2 = std::min(b.sigma, b.rho);
  return b;
}

BoundSet bounds(const BirthDeathSpec& spec, double t) { return bounds(sample(spec, t)); }

}  // namespace bdspectra
