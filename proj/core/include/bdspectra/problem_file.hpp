#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "bdspectra/model.hpp"

namespace bdspectra {

// Problem files are line-oriented `key = value` documents (a TOML subset).
// Values are JSON literals: strings, numbers, and arrays. `#` starts a comment
// outside strings, and an array may continue across lines until its brackets
// balance.
//
//   name   = "A1"                      # optional label
//   kind   = "birth_death"             # or "random_walk"
//   n      = 2
//   domain = [0, 1]
//   a      = ["1/t", "1-t", "1/t"]     # birth_death only
//   b      = ["1/(1-t)", "t", "1/(1-t)"]
//   c      = ["1/(1+t)", "1/(1+2*t)"]  # random_walk only
//
// Unknown or repeated keys are rejected.

struct Problem {
  std::variant<BirthDeathSpec, RandomWalkSpec> spec;

  bool is_birth_death() const noexcept { return spec.index() == 0; }
  const BirthDeathSpec& birth_death() const { return std::get<BirthDeathSpec>(spec); }
  const RandomWalkSpec& random_walk() const { return std::get<RandomWalkSpec>(spec); }
  const Interval& domain() const;
  const std::string& name() const;
  std::size_t n() const;
};

/// Throws InputError naming the offending line, key, or expression offset.
Problem parse_problem(std::string_view text);
Problem load_problem(const std::filesystem::path& path);

}  // namespace bdspectra
