#include "bdspectra/verify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "bdspectra/eigen_tri.hpp"
#include "bdspectra/errors.hpp"
#include "bdspectra/oracle.hpp"
#include "bdspectra/parallel.hpp"
#include "bdspectra/spectral_calculus.hpp"

namespace bdspectra {

namespace {

constexpr double kFormTol = 1e-9;
constexpr double kDenseTol = 1e-10;
constexpr double kStrictSlack = 1e-12;

class Tallies {
 public:
  template <typename Witness>
  void check(const std::string& name, bool ok, Witness&& witness) {
    PropertyResult& r = get(name);
    ++r.checks;
    if (!ok && r.failures++ == 0) r.witness = witness();
  }

  void fail(const std::string& name, const std::string& witness) {
    check(name, false, [&] { return witness; });
  }

  PropertyResult& get(const std::string& name) {
    for (auto& r : items_)
      if (r.name == name) return r;
    items_.push_back(PropertyResult{name, 0, 0, {}});
    return items_.back();
  }

  std::vector<PropertyResult>& items() { return items_; }

 private:
  std::vector<PropertyResult> items_;
};

std::string fmt(double x) { return format_number(x); }

std::string at(double t) { return "t=" + fmt(t); }
std::string at(double t, std::size_t k) { return at(t) + " k=" + std::to_string(k); }

double fd_at(const Problem& p, double t, std::size_t k) {
  return p.is_birth_death() ? fd_lambda_prime(p.birth_death(), t, k) : fd_lambda_prime(p.random_walk(), t, k);
}

std::vector<std::size_t> governed_indices(Target target, std::size_t size) {
  switch (target) {
    case Target::lambda_min: return {0};
    case Target::lambda_max: return {size - 1};
    case Target::all: break;
  }
  std::vector<std::size_t> all(size);
  for (std::size_t k = 0; k < size; ++k) all[k] = k;
  return all;
}

void spectral_checks(Tallies& out, const Problem& problem, const BirthDeathSample& s, double t) {
  const TriSym S = assemble_S(s);
  const double scale = std::max(1.0, S.norm_inf());
  const std::size_t size = S.size();

  Spectrum spectrum;
  try {
    spectrum = compute_spectrum(S);
  } catch (const Error& e) {
    out.fail("sturm matches dense", at(t) + ": " + e.what());
    return;
  }

  const auto dense = dense_eig(S);
  double gap = 0.0;
  for (std::size_t k = 0; k < size; ++k) gap = std::max(gap, std::abs(dense[k] - spectrum.values[k]));
  out.check("sturm matches dense", gap <= kDenseTol * scale, [&] { return at(t) + " max gap " + fmt(gap); });

  out.check("positivity", spectrum.values.front() > 0.0,
            [&] { return at(t) + " lambda_0=" + fmt(spectrum.values.front()); });
  out.check("interlacing", interlacing_check(S), [&] { return at(t); });

  for (std::size_t k = 0; k < size; ++k) {
    std::size_t changes = 0;
    bool ok = false;
    try {
      changes = sign_changes(spectrum.q[k]);
      ok = changes == size - 1 - k;
    } catch (const AllZero&) {
    }
    out.check("sign changes", ok, [&] {
      return at(t, k) + " changes=" + std::to_string(changes) + " expected " + std::to_string(size - 1 - k);
    });
  }

  const BoundSet b = bounds(s);
  const double lmax = spectrum.values.back();
  const double lmin = spectrum.values.front();
  const double slack = kStrictSlack * scale;
  out.check("bound sandwich", lmax > b.m1 - slack && lmax <= b.m2 + slack && lmin > 0.0 && lmin < b.mu + slack,
            [&] {
              return at(t) + " m1=" + fmt(b.m1) + " lambda_max=" + fmt(lmax) + " m2=" + fmt(b.m2) +
                     " lambda_min=" + fmt(lmin) + " mu=" + fmt(b.mu);
            });

  for (std::size_t k = 0; k < size; ++k) {
    const double form = derivative_terms(s, spectrum.values[k], spectrum.q[k], DerivativeForm::rawdot).total;
    const double disagreement = form_disagreement(s, spectrum, k);
    out.check("derivative forms agree", disagreement <= kFormTol * (1.0 + std::abs(form)),
              [&] { return at(t, k) + " spread=" + fmt(disagreement); });
    const double fd = fd_at(problem, t, k);
    out.check("finite differences agree", derivatives_agree(fd, form),
              [&] { return at(t, k) + " form=" + fmt(form) + " fd=" + fmt(fd); });
  }
}

void criterion_checks(Tallies& out, const Problem& problem, const std::vector<CriterionId>& ids,
                      const BirthDeathSample& s, double t) {
  const auto verdicts = classify_all(problem, ids, t);
  const auto member = [&](Criterion c, Direction d) -> std::optional<bool> {
    for (const auto& v : verdicts)
      if (v.id.criterion == c && v.id.direction == d) return v.member;
    return std::nullopt;
  };

  for (Direction d : {Direction::up, Direction::down}) {
    const std::string arrow = d == Direction::up ? "↑" : "↓";
    if (problem.is_birth_death()) {
      const auto ismail = member(Criterion::ismail_max, d);
      const auto bmax = member(Criterion::b_max, d);
      if (ismail && bmax)
        out.check("containment ISMAIL_MAX" + arrow + " => B_MAX" + arrow, !*ismail || *bmax, [&] { return at(t); });
    } else if (d == Direction::up) {
      const auto c = member(Criterion::ismail_c_max, d);
      const auto dm = member(Criterion::d_max, d);
      if (c && dm) out.check("containment ISMAIL_C_MAX↑ => D_MAX↑", !*c || *dm, [&] { return at(t); });
    }
  }

  std::optional<Spectrum> spectrum;
  const double scale = std::max(1.0, assemble_S(s).norm_inf());
  for (const auto& v : verdicts) {
    const std::string name = "soundness " + criterion_tag(v.id);
    if (!v.member) {
      out.get(name);
      continue;
    }
    if (!spectrum) spectrum = compute_spectrum(assemble_S(s));
    const double sign = v.id.direction == Direction::up ? 1.0 : -1.0;
    for (std::size_t k : governed_indices(criterion_target(v.id.criterion), spectrum->size())) {
      const double form =
          derivative_terms(s, spectrum->values[k], spectrum->q[k], DerivativeForm::rawdot).total;
      const double fd = fd_at(problem, t, k);
      const bool ok = sign * form > kStrictSlack * scale && (sign * fd > 0.0 || derivatives_agree(fd, form));
      out.check(name, ok, [&] {
        return (problem.name().empty() ? std::string() : problem.name() + " ") + criterion_tag(v.id) + " " +
               at(t, k) + " form=" + fmt(form) + " fd=" + fmt(fd);
      });
    }
    if (v.commutation) {
      out.check("commutation " + criterion_tag(v.id), v.commutation->commutes && v.commutation->eig_match, [&] {
        return at(t) + " commutator=" + fmt(v.commutation->commutator) + " eig gap=" + fmt(v.commutation->eig_gap);
      });
    }
  }
}

std::vector<PropertyResult> point_checks(const Problem& problem, const std::vector<CriterionId>& ids,
                                         const std::optional<BirthDeathSpec>& hat, double t) {
  Tallies out;
  BirthDeathSample s;
  if (problem.is_birth_death()) {
    s = sample(problem.birth_death(), t);
  } else {
    const auto rs = sample(problem.random_walk(), t);
    s = sample(*hat, t);
    const auto eig_b = dense_eig(assemble_B(rs));
    const double scale = std::max(1.0, assemble_B(rs).norm_inf());
    double gap = 0.0;
    for (std::size_t k = 0; k < eig_b.size(); ++k)
      gap = std::max(gap, std::abs(eig_b[k] + eig_b[eig_b.size() - 1 - k]));
    out.check("spectrum symmetry", gap <= kDenseTol * scale, [&] { return at(t) + " asymmetry " + fmt(gap); });
  }
  spectral_checks(out, problem, s, t);
  criterion_checks(out, problem, ids, s, t);
  return std::move(out.items());
}

}  // namespace

std::vector<PropertyResult> verify_problem(const Problem& problem, const VerifyOptions& options) {
  if (options.grid < 2) throw InputError("grid must have at least 2 points");
  const auto ids = options.criteria.empty() ? applicable_criteria(problem) : options.criteria;
  std::optional<BirthDeathSpec> hat;
  if (!problem.is_birth_death()) hat = rw_to_bd_hat(problem.random_walk());

  const auto per_point = parallel_map<std::vector<PropertyResult>>(
      options.grid,
      [&](std::size_t i) { return point_checks(problem, ids, hat, problem.domain().grid_point(i, options.grid)); },
      options.threads);

  std::vector<PropertyResult> merged;
  for (const auto& point : per_point) {
    for (const auto& r : point) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const PropertyResult& m) { return m.name == r.name; });
      if (it == merged.end()) {
        merged.push_back(PropertyResult{r.name, 0, 0, {}});
        it = merged.end() - 1;
      }
      it->checks += r.checks;
      if (r.failures > 0 && it->failures == 0) it->witness = r.witness;
      it->failures += r.failures;
    }
  }
  return merged;
}

}  // namespace bdspectra
