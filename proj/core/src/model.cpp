#include "bdspectra/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bdspectra/errors.hpp"

namespace bdspectra {

namespace {

void check_domain(const Interval& d) {
  if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || !(d.lo < d.hi))
    throw InputError("domain must be a finite interval with lo < hi");
}

void check_t(const Interval& d, double t) {
  if (!d.contains(t))
    throw DomainError("t", t,
                      "outside the open domain (" + format_number(d.lo) + ", " +
                          format_number(d.hi) + ")");
}

}  // namespace

BirthDeathSpec::BirthDeathSpec(std::vector<CoeffExpr> a, std::vector<CoeffExpr> b,
                               Interval domain, std::string name)
    : a_(std::move(a)), b_(std::move(b)), domain_(domain), name_(std::move(name)) {
  if (a_.empty()) throw InputError("a birth-death spec needs at least one coefficient");
  if (a_.size() != b_.size())
    throw InputError("a and b must have the same length (n+1)");
  check_domain(domain_);
  b0_zero_ = b_[0].is_literal(0.0);
}

RandomWalkSpec::RandomWalkSpec(std::vector<CoeffExpr> c, Interval domain, std::string name)
    : c_(std::move(c)), domain_(domain), name_(std::move(name)) {
  if (c_.size() < 2) throw InputError("a random-walk spec needs n >= 1");
  check_domain(domain_);
  c0_one_ = c_[0].is_literal(1.0);
}

double TriSym::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(off[i - 1]);
    if (i < off.size()) row += std::abs(off[i]);
    best = std::max(best, row);
  }
  return best;
}

TriSym TriSym::leading(std::size_t k) const {
  TriSym out;
  out.diag.assign(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(k));
  if (k > 0) out.off.assign(off.begin(), off.begin() + static_cast<std::ptrdiff_t>(k - 1));
  return out;
}

double TriGeneral::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(sub[i - 1]);
    if (i < sup.size()) row += std::abs(sup[i]);
    best = std::max(best, row);
  }
  return best;
}

BirthDeathSample sample(const BirthDeathSpec& spec, double t) {
  check_t(spec.domain(), t);
  BirthDeathSample s;
  s.t = t;
  s.a.reserve(spec.size());
  s.b.reserve(spec.size());
  for (std::size_t j = 0; j < spec.size(); ++j) {
    s.a.push_back(spec.a()[j].eval(t));
    s.b.push_back(spec.b()[j].eval(t));
  }
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (!(s.a[j].value > 0.0)) throw PositivityViolation(j, 'a', s.a[j].value, t);
    if (j == 0 ? !(s.b[0].value >= 0.0) : !(s.b[j].value > 0.0))
      throw PositivityViolation(j, 'b', s.b[j].value, t);
  }
  return s;
}

RandomWalkSample sample(const RandomWalkSpec& rw, double t) {
  check_t(rw.domain(), t);
  RandomWalkSample s;
  s.t = t;
  s.c.reserve(rw.size());
  for (const auto& c : rw.c()) s.c.push_back(c.eval(t));
  for (std::size_t j = 0; j < s.c.size(); ++j) {
    const double v = s.c[j].value;
    const bool ok = j == 0 ? (v > 0.0 && v <= 1.0) : (v > 0.0 && v < 1.0);
    if (!ok) throw RangeViolation(j, v, t);
  }
  return s;
}

TriGeneral assemble_A(const BirthDeathSample& s) {
  TriGeneral m;
  const std::size_t n = s.n();
  m.diag.resize(n + 1);
  m.sup.resize(n);
  m.sub.resize(n);
  for (std::size_t j = 0; j <= n; ++j) m.diag[j] = s.a[j].value + s.b[j].value;
  for (std::size_t j = 0; j < n; ++j) {
    m.sup[j] = s.a[j].value;
    m.sub[j] = s.b[j + 1].value;
  }
  return m;
}

TriGeneral assemble_A(const BirthDeathSpec& spec, double t) { return assemble_A(sample(spec, t)); }

TriGeneral assemble_A_prime(const BirthDeathSample& s) {
  TriGeneral m;
  const std::size_t n = s.n();
  m.diag.resize(n + 1);
  m.sup.resize(n);
  m.sub.resize(n);
  for (std::size_t j = 0; j <= n; ++j) m.diag[j] = s.a[j].deriv + s.b[j].deriv;
  for (std::size_t j = 0; j < n; ++j) {
    m.sup[j] = s.a[j].deriv;
    m.sub[j] = s.b[j + 1].deriv;
  }
  return m;
}

TriSym assemble_S(const BirthDeathSample& s) {
  TriSym m;
  const std::size_t n = s.n();
  m.diag.resize(n + 1);
  m.off.resize(n);
  for (std::size_t j = 0; j <= n; ++j) m.diag[j] = s.a[j].value + s.b[j].value;
  for (std::size_t j = 0; j < n; ++j) m.off[j] = std::sqrt(s.a[j].value * s.b[j + 1].value);
  return m;
}

TriSym assemble_S(const BirthDeathSpec& spec, double t) { return assemble_S(sample(spec, t)); }

TriSym assemble_S_prime(const BirthDeathSample& s) {
  TriSym m;
  const std::size_t n = s.n();
  m.diag.resize(n + 1);
  m.off.resize(n);
  for (std::size_t j = 0; j <= n; ++j) m.diag[j] = s.a[j].deriv + s.b[j].deriv;
  for (std::size_t j = 0; j < n; ++j) m.off[j] = sqrt(s.a[j] * s.b[j + 1]).deriv;
  return m;
}

std::vector<double> assemble_D(const BirthDeathSample& s) {
  std::vector<double> d(s.size());
  d[0] = 1.0;
  for (std::size_t j = 1; j < s.size(); ++j)
    d[j] = d[j - 1] * std::sqrt(s.a[j - 1].value / s.b[j].value);
  return d;
}

std::vector<double> assemble_D(const BirthDeathSpec& spec, double t) {
  return assemble_D(sample(spec, t));
}

TriGeneral assemble_B(const RandomWalkSample& s) {
  TriGeneral m;
  const std::size_t n = s.n();
  m.diag.assign(n + 1, 0.0);
  m.sup.resize(n);
  m.sub.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    m.sup[j] = s.c[j].value;
    m.sub[j] = 1.0 - s.c[j + 1].value;
  }
  return m;
}

TriGeneral assemble_B(const RandomWalkSpec& rw, double t) { return assemble_B(sample(rw, t)); }

std::vector<Dual> random_walk_deltas(const RandomWalkSample& s) {
  std::vector<Dual> delta(s.n());
  for (std::size_t j = 0; j < s.n(); ++j) delta[j] = (Dual(1.0) - s.c[j + 1]) * s.c[j];
  return delta;
}

TriSym assemble_S_w(const RandomWalkSample& s) {
  TriSym m;
  m.diag.assign(s.size(), 0.0);
  for (const Dual& d : random_walk_deltas(s)) m.off.push_back(std::sqrt(d.value));
  return m;
}

BirthDeathSpec rw_to_bd_hat(const RandomWalkSpec& rw) {
  std::vector<CoeffExpr> a = rw.c();
  std::vector<CoeffExpr> b;
  b.reserve(rw.size());
  for (std::size_t i = 0; i < rw.size(); ++i) {
    if (i == 0 && rw.c0_identically_one())
      b.push_back(CoeffExpr::constant(0.0));
    else
      b.push_back(CoeffExpr::constant(1.0) - rw.c()[i]);
  }
  return BirthDeathSpec(std::move(a), std::move(b), rw.domain(), rw.name());
}

BirthDeathSpec golub_kahan_reduce(const RandomWalkSpec& rw) {
  if (rw.size() % 2 != 0) throw OddOrder(rw.size());
  const auto& c = rw.c();
  const auto delta = [&](std::size_t j) { return (CoeffExpr::constant(1.0) - c[j + 1]) * c[j]; };
  const std::size_t m = (rw.n() - 1) / 2;
  std::vector<CoeffExpr> x;
  std::vector<CoeffExpr> y;
  for (std::size_t j = 0; j <= m; ++j) {
    x.push_back(delta(2 * j));
    y.push_back(j == 0 ? CoeffExpr::constant(0.0) : delta(2 * j - 1));
  }
  return BirthDeathSpec(std::move(x), std::move(y), rw.domain(), rw.name());
}

std::vector<double> leading_minors(const BirthDeathSample& s) {
  std::vector<double> minors(s.size() + 1);
  minors[0] = 1.0;
  double bprod = 1.0;
  for (std::size_t k = 1; k <= s.size(); ++k) {
    bprod *= s.b[k - 1].value;
    minors[k] = s.a[k - 1].value * minors[k - 1] + bprod;
  }
  return minors;
}

}  // namespace bdspectra
