#include "bdspectra/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <Eigen/Dense>

#include "bdspectra/errors.hpp"
#include "bdspectra/spectral_calculus.hpp"

namespace bdspectra {

namespace {

constexpr double kClosedFormTolerance = 1e-10;

void check_size(std::size_t n) {
  if (n == 0 || n > kDenseLimit)
    throw InputError("dense oracle accepts sizes 1.." + std::to_string(kDenseLimit));
}

Eigen::MatrixXd to_dense(const TriGeneral& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i, i) = m.diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      out(i, i + 1) = m.sup[static_cast<std::size_t>(i)];
      out(i + 1, i) = m.sub[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

Eigen::MatrixXd to_dense(const TriSym& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i, i) = m.diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) out(i, i + 1) = out(i + 1, i) = m.off[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<double> spectrum_at(const BirthDeathSpec& spec, double t) {
  return dense_eig(assemble_S(spec, t));
}

std::vector<double> spectrum_at(const RandomWalkSpec& rw, double t) {
  return dense_eig(assemble_B(rw, t));
}

template <typename Spec>
double central_difference(const Spec& spec, double t, std::size_t k, double h) {
  const auto plus = spectrum_at(spec, t + h);
  const auto minus = spectrum_at(spec, t - h);
  if (k >= plus.size()) throw InputError("eigenvalue index out of range");
  return (plus[k] - minus[k]) / (2.0 * h);
}

template <typename Spec>
double fd_with_fallback(const Spec& spec, double t, std::size_t k, double h) {
  if (!(h > 0.0)) throw InputError("finite-difference step must be positive");
  const double coarse = central_difference(spec, t, k, h);
  const double fine = central_difference(spec, t, k, 0.5 * h);
  const double scale = std::max({std::abs(coarse), std::abs(fine), 1e-300});
  if (std::abs(coarse - fine) > 1e-4 * scale && std::abs(coarse - fine) > 1e-9)
    return (4.0 * fine - coarse) / 3.0;
  return coarse;
}

double a1_mid(double t) { return 1.0 / t + 1.0 / (1.0 - t); }
double b1_published(double t) { return std::sqrt(2.0 * t) / ((t + 1.0) * (2.0 * t + 1.0)); }
double b1_derived(double t) { return std::sqrt(2.0 * t / ((1.0 + t) * (1.0 + 2.0 * t))); }

std::vector<CoeffExpr> parse_all(std::initializer_list<const char*> sources) {
  std::vector<CoeffExpr> out;
  for (const char* s : sources) out.push_back(parse_expr(s));
  return out;
}

}  // namespace

std::vector<double> dense_eig(const TriGeneral& m) {
  check_size(m.size());
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_dense(m), false);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("dense QR iteration did not converge");
  const double scale = std::max(1.0, m.norm_inf());
  std::vector<double> values;
  for (const auto& z : solver.eigenvalues()) {
    if (std::abs(z.imag()) > 1e-8 * scale)
      throw ConvergenceFailure("dense solver returned a complex eigenvalue");
    values.push_back(z.real());
  }
  std::sort(values.begin(), values.end());
  return values;
}

std::vector<double> dense_eig(const TriSym& m) {
  check_size(m.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_dense(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("dense symmetric QR iteration did not converge");
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end());
  return values;
}

double dense_leading_minor(const TriGeneral& m, std::size_t k) {
  check_size(m.size());
  if (k == 0) return 1.0;
  if (k > m.size()) throw InputError("minor order exceeds matrix size");
  const auto kk = static_cast<Eigen::Index>(k);
  const Eigen::MatrixXd block = to_dense(m).topLeftCorner(kk, kk);
  return block.partialPivLu().determinant();
}

double fd_lambda_prime(const BirthDeathSpec& spec, double t, std::size_t k, double h) {
  return fd_with_fallback(spec, t, k, h);
}

double fd_lambda_prime(const RandomWalkSpec& rw, double t, std::size_t k, double h) {
  return fd_with_fallback(rw, t, k, h);
}

OracleReport oracle_report(const BirthDeathSpec& spec, double t, std::size_t k) {
  OracleReport r;
  r.t = t;
  r.k = k;
  r.form_deriv = lambda_prime(spec, t, k).total;
  r.fd_deriv = fd_lambda_prime(spec, t, k);
  r.agree = derivatives_agree(r.fd_deriv, r.form_deriv);
  return r;
}

std::string_view closed_form_name(ClosedForm which) {
  return which == ClosedForm::a1_mid ? "A1_mid" : "B1_max";
}

std::optional<ClosedForm> parse_closed_form(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "a1_mid") return ClosedForm::a1_mid;
  if (lower == "b1_max") return ClosedForm::b1_max;
  return std::nullopt;
}

ClosedFormCheck check_closed_form(ClosedForm which, double t) {
  ClosedFormCheck c;
  c.t = t;
  if (which == ClosedForm::a1_mid) {
    c.dense = spectrum_at(example_a1(), t)[1];
    c.published = a1_mid(t);
  } else {
    c.dense = spectrum_at(example_b1(), t).back();
    c.published = b1_published(t);
    c.derived = b1_derived(t);
  }
  const double tol = kClosedFormTolerance * std::max(1.0, std::abs(c.dense));
  c.published_matches = std::abs(c.published - c.dense) <= tol;
  if (c.derived) c.derived_matches = std::abs(*c.derived - c.dense) <= tol;

  const std::string name(closed_form_name(which));
  if (c.published_matches) {
    c.verdict = name + ": published formula matches the dense solver";
  } else if (c.derived_matches.value_or(false)) {
    c.verdict = name + ": published formula " + format_number(c.published) +
                " disagrees with the dense solver " + format_number(c.dense) +
                "; the derived formula sqrt(2t/((1+t)(1+2t))) matches";
  } else {
    c.verdict = name + ": no registered formula matches the dense solver";
  }
  return c;
}

double closed_form(ClosedForm which, double t) {
  const auto c = check_closed_form(which, t);
  if (c.published_matches) return c.published;
  if (c.derived_matches.value_or(false)) return *c.derived;
  throw FormMismatch(c.verdict);
}

BirthDeathSpec example_a1() {
  return BirthDeathSpec(parse_all({"1/t", "1-t", "1/t"}), parse_all({"1/(1-t)", "t", "1/(1-t)"}),
                        Interval{0.0, 1.0}, "A1");
}

BirthDeathSpec example_a2() {
  return BirthDeathSpec(parse_all({"(1-t)*t", "1/t", "t"}), parse_all({"t^2", "1/(1-t)", "t^2"}),
                        Interval{0.0, 1.0}, "A2");
}

RandomWalkSpec example_b1() {
  return RandomWalkSpec(parse_all({"1/(1+t)", "1/(1+2*t)"}), Interval{0.0, 1.0}, "B1");
}

}  // namespace bdspectra
