#include <doctest.h>

#include <cmath>
#include <vector>

#include "bdspectra/eigen_tri.hpp"
#include "bdspectra/errors.hpp"
#include "bdspectra/oracle.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace bdspectra;
using namespace bdspectra::testing;

TEST_CASE("eigenvector_q of the symmetrized first example at t = 1/2") {
  const TriSym m{{4, 1, 4}, {1, 1}};
  const auto q = eigenvector_q(m, 4.0);
  REQUIRE(q.size() == 3);
  CHECK(q[0] == doctest::Approx(1.0));
  CHECK(std::abs(q[1]) <= 1e-14);
  CHECK(q[2] == doctest::Approx(-1.0));
  CHECK(eigen_residual(m, 4.0, q) <= 1e-14);
}

TEST_CASE("sign changes") {
  CHECK(sign_changes({1, 0, -1}) == 1);
  CHECK(sign_changes({1, -2, 3, -4}) == 3);
  CHECK(sign_changes({2, 3, 0, 5}) == 0);
  CHECK_THROWS_AS(sign_changes({0, 0, 0}), AllZero);
}

TEST_CASE("Sturm count at the Gershgorin ends") {
  for (const auto& spec : random_birth_death(10, 99)) {
    const auto S = assemble_S(spec, 0.37);
    const auto [lo, hi] = gershgorin_interval(S);
    CHECK(sturm_count(S, lo) == 0);
    CHECK(sturm_count(S, hi) == S.size());
  }
}

TEST_CASE("bisection agrees with an independent dense solver") {
  for (const auto& spec : random_birth_death(20, 5)) {
    for (double t : {0.05, 0.5, 0.95}) {
      const auto S = assemble_S(spec, t);
      const auto want = dense_symmetric_eigs(S.diag, S.off);
      const auto got = eigenvalues_bisect(S);
      REQUIRE(got.size() == want.size());
      const double scale = std::max(1.0, S.norm_inf());
      for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("compute_spectrum: residuals, normalization and sign pattern") {
  for (const auto& spec : random_birth_death(20, 17)) {
    const auto S = assemble_S(spec, 0.41);
    const auto spectrum = compute_spectrum(S);
    const std::size_t size = S.size();
    REQUIRE(spectrum.size() == size);
    for (std::size_t k = 0; k < size; ++k) {
      CAPTURE(k);
      CHECK(spectrum.q[k][0] == 1.0);
      CHECK(eigen_residual(S, spectrum.values[k], spectrum.q[k]) <= 1e-8);
      CHECK(sign_changes(spectrum.q[k]) == size - 1 - k);
      if (k > 0) CHECK(spectrum.values[k] > spectrum.values[k - 1]);
    }
  }
}

TEST_CASE("interlacing of leading sections") {
  CHECK(interlacing_check(TriSym{{4, 1, 4}, {1, 1}}));
  CHECK(interlacing_check(example_a1(), 0.3));
  for (const auto& spec : random_birth_death(10, 3)) CHECK(interlacing_check(spec, 0.6));
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(eigenvalues_bisect(TriSym{{1, 2}, {0}}), DegenerateOffDiagonal);
  const auto single = eigenvalues_bisect(TriSym{{2.5}, {}});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == doctest::Approx(2.5));
}
