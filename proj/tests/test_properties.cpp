#include <doctest.h>

#include <cmath>
#include <string>

#include "bdspectra/monotonicity.hpp"
#include "bdspectra/oracle.hpp"
#include "bdspectra/verify.hpp"
#include "support/corpus.hpp"

using namespace bdspectra;
using namespace bdspectra::testing;

namespace {

const std::string kCDContainment = "containment ISMAIL_C_MAX↑ => D_MAX↑";

}  // namespace

TEST_CASE("invariant suite on the standard corpus") {
  for (const auto& problem : standard_corpus()) {
    VerifyOptions options;
    options.grid = 200;
    for (const auto& r : verify_problem(problem, options)) {
      if (r.name == kCDContainment) continue;
      CAPTURE(problem.name());
      CAPTURE(r.name);
      CAPTURE(r.witness);
      if (r.name.rfind("soundness ", 0) != 0) CHECK(r.checks > 0);
      CHECK(r.failures == 0);
    }
  }
}

TEST_CASE("decreasing c_j does not force delta_j to increase") {
  // c_0 = 1 and c_1, c_2 decreasing, yet delta_1 = (1 - c_2) c_1 decreases.
  const auto walk = make_random_walk({"1", "0.9 - 0.5*t", "0.5 - 0.01*t"});
  const double t = 0.5;
  CHECK(classify(walk, {Criterion::ismail_c_max, Direction::up}, t).member);
  const auto d = classify(walk, {Criterion::d_max, Direction::up}, t);
  CHECK_FALSE(d.member);
  REQUIRE(d.indices.size() == 2);
  CHECK(d.indices[0].disjunct == 1);
  CHECK(d.indices[1].disjunct == 0);
}

TEST_CASE("scanned intervals mirror under time reversal") {
  std::vector<BirthDeathSpec> specs = random_birth_death(6, 77);
  specs.push_back(example_a1());
  specs.push_back(example_a2());
  for (const auto& spec : specs) {
    const auto reversed = time_reversed(spec);
    const double sum = spec.domain().lo + spec.domain().hi;
    for (const auto& id : birth_death_criteria()) {
      const CriterionId flipped{id.criterion, id.direction == Direction::up ? Direction::down : Direction::up};
      const auto forward = scan(spec, id, 100);
      auto backward = scan(reversed, flipped, 100);
      CAPTURE(criterion_tag(id));
      REQUIRE(forward.size() == backward.size());
      for (std::size_t i = 0; i < forward.size(); ++i) {
        const auto& b = backward[backward.size() - 1 - i];
        CHECK(std::abs(forward[i].lo - (sum - b.hi)) <= 2e-6);
        CHECK(std::abs(forward[i].hi - (sum - b.lo)) <= 2e-6);
      }
    }
  }
}

TEST_CASE("random walks keep their symmetric spectrum through I + B") {
  for (const auto& rw : random_walks(8, 123, 7, false)) {
    const auto hat = rw_to_bd_hat(rw);
    for (double t : {0.2, 0.6}) {
      const auto eig = dense_eig(assemble_B(rw, t));
      const auto shifted = dense_eig(assemble_A(hat, t));
      for (std::size_t k = 0; k < eig.size(); ++k) {
        CHECK(std::abs(eig[k] + eig[eig.size() - 1 - k]) <= 1e-10);
        CHECK(std::abs(eig[k] + 1.0 - shifted[k]) <= 1e-10);
      }
    }
  }
}
