#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bdspectra/eigen_tri.hpp"
#include "bdspectra/monotonicity.hpp"
#include "bdspectra/oracle.hpp"
#include "bdspectra/spectral_calculus.hpp"
#include "bdspectra/verify.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace bdspectra;
using namespace bdspectra::testing;

namespace {

constexpr std::size_t kScanGrid = 1000;
constexpr std::size_t kCorpusGrid = 1000;
constexpr double kEndpointTol = 1e-3;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail << "\n      " << what;
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string show(const std::vector<MonotoneInterval>& runs) {
  if (runs.empty()) return "{}";
  std::string out;
  for (const auto& r : runs) out += "(" + fmt(r.lo) + ", " + fmt(r.hi) + ")";
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void expect_interval(Outcome& o, const BirthDeathSpec& spec, CriterionId id, double lo, double hi) {
  const auto runs = scan(spec, id, kScanGrid);
  const bool ok = runs.size() == 1 && std::abs(runs[0].lo - lo) <= kEndpointTol &&
                  std::abs(runs[0].hi - hi) <= kEndpointTol;
  o.require(ok, criterion_tag(id) + " = " + show(runs) + ", expected (" + fmt(lo) + ", " + fmt(hi) + ")");
}

void expect_interval(Outcome& o, const RandomWalkSpec& rw, CriterionId id, double lo, double hi) {
  const auto runs = scan(rw, id, kScanGrid);
  const bool ok = runs.size() == 1 && std::abs(runs[0].lo - lo) <= kEndpointTol &&
                  std::abs(runs[0].hi - hi) <= kEndpointTol;
  o.require(ok, criterion_tag(id) + " = " + show(runs) + ", expected (" + fmt(lo) + ", " + fmt(hi) + ")");
}

void expect_empty(Outcome& o, const BirthDeathSpec& spec, CriterionId id) {
  const auto runs = scan(spec, id, kScanGrid);
  o.require(runs.empty(), criterion_tag(id) + " = " + show(runs) + ", expected {}");
}

const std::vector<Problem>& corpus() {
  static const std::vector<Problem> problems = standard_corpus();
  return problems;
}

// The invariant suite over the corpus, run once and shared by several criteria.
struct CorpusResult {
  std::string problem;
  PropertyResult property;
};

const std::vector<CorpusResult>& corpus_results() {
  static const std::vector<CorpusResult> results = [] {
    std::vector<CorpusResult> out;
    VerifyOptions options;
    options.grid = kCorpusGrid;
    for (const auto& p : corpus())
      for (auto& r : verify_problem(p, options)) out.push_back({p.name(), std::move(r)});
    return out;
  }();
  return results;
}

void expect_properties(Outcome& o, const std::function<bool(const std::string&)>& selected) {
  std::size_t checks = 0;
  for (const auto& r : corpus_results()) {
    if (!selected(r.property.name)) continue;
    checks += r.property.checks;
    o.require(r.property.passed(), r.problem + ": " + r.property.name + ": " + std::to_string(r.property.failures) +
                                       " failures, first at " + r.property.witness);
  }
  o.require(checks > 0, "no checks were run");
  o.detail << " (" << checks << " checks)";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

void criterion_1(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto a1 = example_a1();
  double worst = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const double t = a1.domain().grid_point(i, 50);
    const double mid = compute_spectrum(assemble_S(a1, t)).values[1];
    worst = std::max(worst, std::abs(mid - (1.0 / t + 1.0 / (1.0 - t))));
  }
  o.require(worst <= 1e-9, "middle eigenvalue error " + fmt(worst));
  expect_interval(o, a1, {Criterion::b_max, Direction::up}, 0.5, 1.0);
  expect_interval(o, a1, {Criterion::b_min, Direction::up}, 0.5, 1.0);
  expect_interval(o, a1, {Criterion::b_max, Direction::down}, 0.0, 0.5);
  expect_interval(o, a1, {Criterion::b_min, Direction::down}, 0.0, 0.5);
  const double elapsed = seconds_since(start);
  o.require(elapsed < 5.0, "runtime " + fmt(elapsed) + " s");
  o.detail << " (max eigenvalue error " << fmt(worst) << ", " << fmt(elapsed) << " s)";
}

void criterion_2(Outcome& o) {
  const auto a1 = example_a1();
  const CriterionId id{Criterion::btilde_max, Direction::up};
  const auto runs = scan(a1, id, kScanGrid);
  const bool ok = !runs.empty() && std::abs(runs[0].lo - 0.554958) <= 1e-4;
  o.require(ok, criterion_tag(id) + " = " + show(runs) + ", expected left endpoint 0.554958");
  if (ok) return;
  const Problem problem{a1};
  for (std::size_t j = 0; j <= a1.n(); ++j) {
    std::string parts;
    for (const auto& [lo, hi] : scan_component(problem, id, j, kScanGrid))
      parts += "(" + fmt(lo) + ", " + fmt(hi) + ")";
    o.detail << "\n      index set j=" << j << ": " << (parts.empty() ? "{}" : parts);
  }
  const auto s = sample(a1, 0.5);
  const double w1 = s.a[1].value * s.b[1].deriv - s.a[1].deriv * s.b[1].value;
  o.detail << "\n      j=1 needs a'_1 m2 + W_1 >= 0 with a'_1 = " << fmt(s.a[1].deriv) << ", W_1 = " << fmt(w1)
           << ", m2(0.5) = " << fmt(bounds(s).m2) << ": the set is empty for every t in (0, 1)";
}

void criterion_3(Outcome& o) {
  const auto a2 = example_a2();
  expect_interval(o, a2, {Criterion::b_max, Direction::up}, 0.5, 1.0);
  expect_empty(o, a2, {Criterion::b_max, Direction::down});
  expect_interval(o, a2, {Criterion::b_min, Direction::up}, 0.6, 1.0);
  expect_empty(o, a2, {Criterion::b_min, Direction::down});
  for (auto c : {Criterion::ismail_min, Criterion::ismail_max})
    for (auto d : {Direction::up, Direction::down}) expect_empty(o, a2, {c, d});
}

void criterion_4(Outcome& o) {
  const auto b1 = example_b1();
  const double peak = 1.0 / std::sqrt(2.0);
  expect_interval(o, b1, {Criterion::d_max, Direction::up}, 0.0, peak);
  expect_interval(o, b1, {Criterion::d_max, Direction::down}, peak, 1.0);
  double worst = 0.0;
  double printed_gap = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const double t = b1.domain().grid_point(i, 50);
    const auto c = sample(b1, t).c;
    const auto dense = dense_symmetric_eigs({0.0, 0.0}, {std::sqrt(c[0].value * (1.0 - c[1].value))});
    const double derived = std::sqrt(2.0 * t / ((1.0 + t) * (1.0 + 2.0 * t)));
    const auto check = check_closed_form(ClosedForm::b1_max, t);
    worst = std::max({worst, std::abs(dense[1] - closed_form(ClosedForm::b1_max, t)), std::abs(dense[1] - derived)});
    printed_gap = std::max(printed_gap, std::abs(check.published - check.dense));
  }
  o.require(worst <= 1e-10, "closed form error " + fmt(worst));
  o.detail << " (closed form error " << fmt(worst) << "; " << check_closed_form(ClosedForm::b1_max, 0.5).verdict
           << "; max printed-vs-dense gap " << fmt(printed_gap) << ")";
}

void criterion_5(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<BirthDeathSpec> specs{example_a1(), example_a2(), rw_to_bd_hat(example_b1())};
  for (auto& s : random_birth_death(20, 20240601, 6)) specs.push_back(std::move(s));
  constexpr DerivativeForm forms[] = {DerivativeForm::rawdot, DerivativeForm::grouped, DerivativeForm::newform,
                                      DerivativeForm::sumsq};
  double worst_form = 0.0;
  double worst_fd = 0.0;
  std::size_t checks = 0;
  for (const auto& spec : specs) {
    for (std::size_t i = 0; i < 20; ++i) {
      const double t = spec.domain().grid_point(i, 20);
      const auto s = sample(spec, t);
      const auto spectrum = compute_spectrum(assemble_S(s));
      for (std::size_t k = 0; k < spectrum.size(); ++k) {
        std::vector<double> values;
        for (auto f : forms) values.push_back(derivative_terms(s, spectrum.values[k], spectrum.q[k], f).total);
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        const double scale = 1.0 + std::abs(values[0]);
        const double spread = (*hi - *lo) / scale;
        const double fd_gap = std::abs(fd_lambda_prime(spec, t, k) - values[0]) / scale;
        worst_form = std::max(worst_form, spread);
        worst_fd = std::max(worst_fd, fd_gap);
        ++checks;
        o.require(spread <= 1e-9, spec.name() + " t=" + fmt(t) + " k=" + std::to_string(k) + " form spread " + fmt(spread));
        o.require(fd_gap <= 1e-5, spec.name() + " t=" + fmt(t) + " k=" + std::to_string(k) + " fd gap " + fmt(fd_gap));
      }
    }
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 60.0, "runtime " + fmt(elapsed) + " s");
  o.detail << " (" << checks << " eigenpairs, form spread " << fmt(worst_form) << ", fd gap " << fmt(worst_fd) << ", "
           << fmt(elapsed) << " s)";
}

void criterion_6(Outcome& o) {
  expect_properties(o, [](const std::string& name) {
    return name == "interlacing" || name == "positivity" || name == "spectrum symmetry" || name == "sign changes" ||
           name == "bound sandwich";
  });
}

void criterion_7(Outcome& o) {
  expect_properties(o, [](const std::string& name) { return starts_with(name, "containment "); });
}

void criterion_8(Outcome& o) {
  const auto spec = proportional_spec(3);
  const CriterionId id{Criterion::magagna_a0, Direction::up};
  const auto runs = scan(spec, id, kScanGrid);
  o.require(runs.size() == 1 && runs[0].lo == spec.domain().lo && runs[0].hi == spec.domain().hi,
            criterion_tag(id) + " = " + show(runs) + ", expected the whole domain");
  double commutator = 0.0;
  double eig_gap = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    const double t = spec.domain().grid_point(i, 20);
    const auto v = classify(spec, id, t);
    o.require(v.member, "not a member at t=" + fmt(t));
    if (!v.commutation) {
      o.require(false, "no commutation report at t=" + fmt(t));
      continue;
    }
    const auto& c = *v.commutation;
    commutator = std::max(commutator, c.commutator / c.commutator_scale);
    eig_gap = std::max(eig_gap, c.eig_gap);
  }
  o.require(commutator <= 1e-9, "commutator " + fmt(commutator));
  o.require(eig_gap <= 1e-7, "eig(A') vs lambda' gap " + fmt(eig_gap));
  o.detail << " (commutator " << fmt(commutator) << ", eigenvalue gap " << fmt(eig_gap) << ")";
}

void criterion_9(Outcome& o) {
  double worst = 0.0;
  for (std::size_t size : {2u, 4u, 6u}) {
    const auto rw = random_walk_of_size(size, 900 + size);
    const auto aw = golub_kahan_reduce(rw);
    for (std::size_t i = 0; i < 20; ++i) {
      const double t = rw.domain().grid_point(i, 20);
      const auto b = dense_eig(assemble_B(rw, t));
      const auto S = assemble_S(aw, t);
      const auto w = dense_symmetric_eigs(S.diag, S.off);
      const std::size_t half = w.size();
      if (b.size() != 2 * half) {
        o.require(false, "size mismatch for size " + std::to_string(size));
        continue;
      }
      for (std::size_t k = 0; k < half; ++k) {
        worst = std::max(worst, std::abs(b[half + k] - std::sqrt(w[k])));
        worst = std::max(worst, std::abs(b[half - 1 - k] + std::sqrt(w[k])));
      }
    }
  }
  o.require(worst <= 1e-10, "max gap " + fmt(worst));
  o.detail << " (max gap " << fmt(worst) << ")";
}

void criterion_10(Outcome& o) {
  expect_properties(o, [](const std::string& name) { return starts_with(name, "soundness "); });
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* title;
    void (*run)(Outcome&);
  };
  const Entry entries[] = {
      {1, "A1 eigenvalue formula and B_MAX/B_MIN intervals", criterion_1},
      {2, "left endpoint of B~_MAX↑ for A1", criterion_2},
      {3, "A2 intervals and empty Ismail sets", criterion_3},
      {4, "B1 D_MAX intervals and lambda_max closed form", criterion_4},
      {5, "derivative forms and finite differences", criterion_5},
      {6, "structural spectral properties on the corpus", criterion_6},
      {7, "containments on the corpus", criterion_7},
      {8, "proportional spec: Magagna A0↑ and commutation", criterion_8},
      {9, "Golub-Kahan for random walks of size 2, 4, 6", criterion_9},
      {10, "soundness sweep on the corpus", criterion_10},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Outcome o;
    try {
      e.run(o);
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail << "\n      exception: " << ex.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << e.number << ": " << e.title << o.detail.str()
              << std::endl;
  }
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
