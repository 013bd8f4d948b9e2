#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bdspectra/model.hpp"
#include "bdspectra/problem_file.hpp"

namespace bdspectra {

// Pointwise membership in the monotonicity sets and their consolidation into
// intervals. Each set is a conjunction over indices j of disjunctions of
// sign conditions on coefficient expressions; the ↓ set of a criterion is
// obtained from the ↑ set by swapping > with < and >= with <=.

enum class Criterion {
  ismail_min,    // a_0' > 0, b_0 = 0, a_j' > 0 and a_j' b_j - a_j b_j' > 0
  ismail_max,    // a_j' > 0 and b_j' > 0 for every j
  ismail_c_max,  // c_0 = 1 and c_j' < 0 for j >= 1 (random walk)
  b_max,         // lambda_max, grouped expansion with m1/m2
  btilde_max,    // lambda_max, expansion through a_j b_j' - a_j' b_j
  b_min,         // lambda_min, grouped expansion with mu
  e_min,         // lambda_min, interior indices through chi_j / chi_{j-1}
  magagna_a0,    // every eigenvalue: a_j' b_j = a_j b_j'
  magagna_a1,    // every eigenvalue: a_{j-1}' b_j = a_{j-1} b_j'
  d_max,         // lambda_max of a random walk: delta_j' > 0
};

enum class Direction { up, down };

struct CriterionId {
  Criterion criterion;
  Direction direction;
  friend bool operator==(const CriterionId&, const CriterionId&) = default;
};

/// Which eigenvalue a criterion speaks about.
enum class Target { lambda_min, lambda_max, all };
Target criterion_target(Criterion c);
bool applies_to_random_walk(Criterion c);

/// Canonical tag, e.g. "B_MAX↑".
std::string criterion_tag(CriterionId id);
/// Base name without arrow, e.g. "B_MAX".
std::string_view criterion_name(Criterion c);
std::string_view direction_name(Direction d);  // "increasing" / "decreasing"
/// Accepts "B_MAX↑", "B_MAX_UP", "b_max_up" and the ↓ forms "B_MAX↓",
/// "B_MAX_DOWN", "B_MAX_DN".
std::optional<CriterionId> parse_criterion(std::string_view text);

std::vector<CriterionId> birth_death_criteria();
std::vector<CriterionId> random_walk_criteria();
std::vector<CriterionId> applicable_criteria(const Problem& problem);

/// A real number together with the magnitude of the terms it was built
/// from. A sign test treats |value| <= tol * mag as zero, which keeps
/// identities such as (a_0 b_1)' == 0 from taking a random sign in
/// floating point.
struct Quantity {
  double value = 0.0;
  double mag = 0.0;

  static Quantity exact(double v) { return {v, std::abs(v)}; }

  int sign(double tol = 1e-12) const {
    if (std::abs(value) <= tol * mag) return 0;
    return value > 0.0 ? 1 : -1;
  }

  friend Quantity operator+(Quantity a, Quantity b) { return {a.value + b.value, a.mag + b.mag}; }
  friend Quantity operator-(Quantity a, Quantity b) { return {a.value - b.value, a.mag + b.mag}; }
  friend Quantity operator-(Quantity a) { return {-a.value, a.mag}; }
  friend Quantity operator*(Quantity a, Quantity b) { return {a.value * b.value, a.mag * b.mag}; }
  friend Quantity operator/(Quantity a, Quantity b) {
    return {a.value / b.value, a.mag / std::abs(b.value)};
  }
};

enum class Rel { gt, ge, lt, le, ne, eq };
std::string_view rel_symbol(Rel r);
/// > <-> <, >= <-> <=; != and == are unchanged.
Rel mirror(Rel r);

/// One sign condition "quantity REL 0" as evaluated at a point.
struct Condition {
  std::string label;
  double value = 0.0;
  double mag = 0.0;
  Rel rel = Rel::gt;
  double tol = 1e-12;
  bool holds = false;
};

/// Evaluation of the per-index set j: every disjunct with its conditions and
/// the first satisfied one (1-based; 0 when none holds).
struct IndexWitness {
  std::size_t j = 0;
  int disjunct = 0;
  std::vector<std::vector<Condition>> disjuncts;
};

/// Commutation check attached to Magagna verdicts on A0 ∩ A1.
struct CommutationReport {
  double commutator = 0.0;        ///< max |(A'A - AA')_{ik}|
  double commutator_scale = 0.0;  ///< max(1, |A|_inf |A'|_inf)
  bool commutes = false;          ///< commutator <= 1e-9 * scale
  std::vector<double> eig_a_prime;
  std::vector<double> lambda_prime;
  double eig_gap = 0.0;  ///< max_k |eig_k(A') - lambda_k'|
  bool eig_match = false;  ///< eig_gap <= 1e-7
};

struct CriterionVerdict {
  CriterionId id{Criterion::b_max, Direction::up};
  double t = 0.0;
  bool member = false;
  std::vector<IndexWitness> indices;
  /// Conditions outside the per-index sets: the nondegeneracy set, the
  /// structural b_0 = 0 / c_0 = 1 flags.
  std::vector<Condition> global;
  std::optional<CommutationReport> commutation;

  /// Whether the per-index set j holds on its own.
  bool component(std::size_t j) const;
  /// One line per index: which disjunct held, with the deciding values.
  std::string describe() const;
};

CriterionVerdict classify(const BirthDeathSpec& spec, CriterionId id, double t);
CriterionVerdict classify(const RandomWalkSpec& rw, CriterionId id, double t);
CriterionVerdict classify(const Problem& problem, CriterionId id, double t);

/// Evaluates several criteria sharing one sample of the coefficients.
std::vector<CriterionVerdict> classify_all(const Problem& problem,
                                           const std::vector<CriterionId>& ids, double t);

/// Both directions of one family.
std::vector<CriterionVerdict> classify_ismail(const BirthDeathSpec& spec, double t);
std::vector<CriterionVerdict> classify_ismail(const RandomWalkSpec& rw, double t);
std::vector<CriterionVerdict> classify_B_max(const BirthDeathSpec& spec, double t);
std::vector<CriterionVerdict> classify_Btilde_max(const BirthDeathSpec& spec, double t);
std::vector<CriterionVerdict> classify_B_min(const BirthDeathSpec& spec, double t);
std::vector<CriterionVerdict> classify_E_min(const BirthDeathSpec& spec, double t);
std::vector<CriterionVerdict> classify_magagna(const BirthDeathSpec& spec, double t);
std::vector<CriterionVerdict> classify_D_max(const RandomWalkSpec& rw, double t);

struct MonotoneInterval {
  CriterionId id{Criterion::b_max, Direction::up};
  double lo = 0.0;
  double hi = 0.0;
};

struct ScanOptions {
  double refine_width = 1e-6;
  /// 0 means one worker per hardware thread.
  std::size_t threads = 0;
};

/// Member runs of `predicate` on the interior grid lo + (i + 1/2) h. Each
/// boundary between a member and a non-member grid point is bisected on the
/// predicate to width refine_width; runs that reach the first or last grid
/// point extend to the domain ends. Single-point runs are dropped.
/// The predicate may throw during refinement, which counts as non-member;
/// on grid points the exception propagates.
std::vector<std::pair<double, double>> scan_predicate(const Interval& domain, std::size_t grid,
                                                      const std::function<bool(double)>& predicate,
                                                      const ScanOptions& options = {});

std::vector<MonotoneInterval> scan(const Problem& problem, CriterionId id, std::size_t grid,
                                   const ScanOptions& options = {});
std::vector<MonotoneInterval> scan(const BirthDeathSpec& spec, CriterionId id, std::size_t grid,
                                   const ScanOptions& options = {});
std::vector<MonotoneInterval> scan(const RandomWalkSpec& rw, CriterionId id, std::size_t grid,
                                   const ScanOptions& options = {});

/// Runs of the per-index set j alone (diagnostic for intersections).
std::vector<std::pair<double, double>> scan_component(const Problem& problem, CriterionId id,
                                                      std::size_t j, std::size_t grid,
                                                      const ScanOptions& options = {});

/// The eigenvalue derivative(s) a criterion governs, computed by the
/// quadratic form: lambda_min', lambda_max', or every lambda_k'. For random
/// walks this is lambda_max(B)' obtained through I + B.
std::vector<double> governed_derivatives(const Problem& problem, Criterion c, double t);

}  // namespace bdspectra
