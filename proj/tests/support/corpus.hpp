#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bdspectra/model.hpp"
#include "bdspectra/problem_file.hpp"

namespace bdspectra::testing {

BirthDeathSpec make_birth_death(const std::vector<std::string>& a, const std::vector<std::string>& b,
                                Interval domain = {0.0, 1.0}, std::string name = {});
RandomWalkSpec make_random_walk(const std::vector<std::string>& c, Interval domain = {0.0, 1.0},
                                std::string name = {});

/// a_j = b_j = value on (0, 1).
BirthDeathSpec constant_spec(std::size_t n, double value = 1.0);
/// a_j = b_j = (j+1) t on (0, 1).
BirthDeathSpec proportional_spec(std::size_t n);

/// Seeded families of coefficients that stay valid on (0, 1): affine,
/// exponential and quadratic positive functions; b_0 is the literal 0 in
/// about a third of the specs.
std::vector<BirthDeathSpec> random_birth_death(std::size_t count, std::uint64_t seed, std::size_t max_n = 6);

/// Logistic c_j in (0, 1). With `c0_one` the walk has c_0 = 1 and strictly
/// decreasing c_j for j >= 1, so it lies in ISMAIL_C_MAX↑ everywhere.
std::vector<RandomWalkSpec> random_walks(std::size_t count, std::uint64_t seed, std::size_t max_n,
                                         bool c0_one);
RandomWalkSpec random_walk_of_size(std::size_t size, std::uint64_t seed);

/// t -> lo + hi - t composed into every coefficient.
BirthDeathSpec time_reversed(const BirthDeathSpec& spec);
RandomWalkSpec time_reversed(const RandomWalkSpec& rw);

/// The worked examples, the proportional and constant specs, 20 random
/// birth-death specs, 10 small ones (n <= 3) and 12 random walks (half with
/// c_0 = 1).
std::vector<Problem> standard_corpus();

}  // namespace bdspectra::testing
