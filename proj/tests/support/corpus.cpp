#include "support/corpus.hpp"

#include <cstdio>
#include <random>

#include "bdspectra/oracle.hpp"

namespace bdspectra::testing {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string paren(double x) { return x < 0.0 ? "(" + num(x) + ")" : num(x); }

std::vector<CoeffExpr> parse_all(const std::vector<std::string>& sources) {
  std::vector<CoeffExpr> out;
  for (const auto& s : sources) out.push_back(parse_expr(s));
  return out;
}

// A function positive on [0, 1].
std::string positive_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> level(0.3, 2.5);
  std::uniform_int_distribution<int> shape(0, 2);
  const double alpha = level(rng);
  switch (shape(rng)) {
    case 0: {
      std::uniform_real_distribution<double> slope(-0.85 * alpha, 2.0);
      return num(alpha) + " + " + paren(slope(rng)) + "*t";
    }
    case 1: {
      std::uniform_real_distribution<double> rate(-1.5, 1.5);
      return num(alpha) + "*exp(" + paren(rate(rng)) + "*t)";
    }
    default: {
      std::uniform_real_distribution<double> curve(-0.8 * alpha, 1.5);
      return num(alpha) + " + " + paren(curve(rng)) + "*t^2";
    }
  }
}

std::string logistic(double offset, double slope) {
  return "1/(1 + exp(" + paren(offset) + " + " + paren(slope) + "*t))";
}

}  // namespace

BirthDeathSpec make_birth_death(const std::vector<std::string>& a, const std::vector<std::string>& b,
                                Interval domain, std::string name) {
  return BirthDeathSpec(parse_all(a), parse_all(b), domain, std::move(name));
}

RandomWalkSpec make_random_walk(const std::vector<std::string>& c, Interval domain, std::string name) {
  return RandomWalkSpec(parse_all(c), domain, std::move(name));
}

BirthDeathSpec constant_spec(std::size_t n, double value) {
  std::vector<std::string> a(n + 1, num(value));
  return make_birth_death(a, a, {0.0, 1.0}, "constant");
}

BirthDeathSpec proportional_spec(std::size_t n) {
  std::vector<std::string> a;
  for (std::size_t j = 0; j <= n; ++j) a.push_back(std::to_string(j + 1) + "*t");
  return make_birth_death(a, a, {0.0, 1.0}, "proportional");
}

std::vector<BirthDeathSpec> random_birth_death(std::size_t count, std::uint64_t seed, std::size_t max_n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> order(1, max_n);
  std::uniform_int_distribution<int> third(0, 2);
  std::vector<BirthDeathSpec> out;
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t n = order(rng);
    std::vector<std::string> a, b;
    for (std::size_t j = 0; j <= n; ++j) {
      a.push_back(positive_function(rng));
      b.push_back(j == 0 && third(rng) == 0 ? "0" : positive_function(rng));
    }
    out.push_back(make_birth_death(a, b, {0.0, 1.0}, "bd" + std::to_string(s)));
  }
  return out;
}

std::vector<RandomWalkSpec> random_walks(std::size_t count, std::uint64_t seed, std::size_t max_n, bool c0_one) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> order(1, max_n);
  std::uniform_real_distribution<double> offset(-2.0, 2.0);
  std::uniform_real_distribution<double> slope(-3.0, 3.0);
  std::uniform_real_distribution<double> rising(0.2, 3.0);
  std::vector<RandomWalkSpec> out;
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t n = order(rng);
    std::vector<std::string> c;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == 0 && c0_one)
        c.push_back("1");
      else
        c.push_back(logistic(offset(rng), c0_one ? rising(rng) : slope(rng)));
    }
    out.push_back(make_random_walk(c, {0.0, 1.0}, (c0_one ? "rw1_" : "rw") + std::to_string(s)));
  }
  return out;
}

RandomWalkSpec random_walk_of_size(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> offset(-2.0, 2.0);
  std::uniform_real_distribution<double> slope(-3.0, 3.0);
  std::vector<std::string> c;
  for (std::size_t j = 0; j < size; ++j) c.push_back(logistic(offset(rng), slope(rng)));
  return make_random_walk(c, {0.0, 1.0}, "rw_size" + std::to_string(size));
}

BirthDeathSpec time_reversed(const BirthDeathSpec& spec) {
  const auto& d = spec.domain();
  const CoeffExpr mirror = CoeffExpr::constant(d.lo + d.hi) - CoeffExpr::variable();
  std::vector<CoeffExpr> a, b;
  for (const auto& e : spec.a()) a.push_back(e.substitute(mirror));
  for (const auto& e : spec.b()) b.push_back(e.substitute(mirror));
  return BirthDeathSpec(a, b, d, spec.name() + "_reversed");
}

RandomWalkSpec time_reversed(const RandomWalkSpec& rw) {
  const auto& d = rw.domain();
  const CoeffExpr mirror = CoeffExpr::constant(d.lo + d.hi) - CoeffExpr::variable();
  std::vector<CoeffExpr> c;
  for (const auto& e : rw.c()) c.push_back(e.substitute(mirror));
  return RandomWalkSpec(c, d, rw.name() + "_reversed");
}

std::vector<Problem> standard_corpus() {
  std::vector<Problem> out{Problem{example_a1()}, Problem{example_a2()}, Problem{example_b1()},
                           Problem{proportional_spec(3)}, Problem{constant_spec(2)}};
  for (auto& s : random_birth_death(20, 20240601)) out.push_back(Problem{std::move(s)});
  for (const auto& s : random_birth_death(10, 2, 3))
    out.push_back(Problem{BirthDeathSpec(s.a(), s.b(), s.domain(), "small_" + s.name())});
  for (auto& r : random_walks(6, 7, 6, false)) out.push_back(Problem{std::move(r)});
  for (auto& r : random_walks(6, 11, 6, true)) out.push_back(Problem{std::move(r)});
  return out;
}

}  // namespace bdspectra::testing
