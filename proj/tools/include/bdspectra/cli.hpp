#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bdspectra/monotonicity.hpp"

namespace bdspectra::cli {

enum class Command { analyze, scan, verify, trace };
enum class Format { csv, report };

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitValidityError = 3;

struct RunConfig {
  Command command = Command::analyze;
  std::filesystem::path problem_path;
  std::size_t grid = 1000;
  /// Empty means every criterion applicable to the problem kind.
  std::vector<CriterionId> criteria;
  std::optional<std::filesystem::path> output;
  /// Defaults to csv for analyze/scan and report for verify/trace.
  std::optional<Format> format;
  /// trace only: a single parameter value instead of the grid.
  std::optional<double> at;
  std::size_t threads = 0;
};

/// Parses argv (including the program name) and runs the command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace bdspectra::cli
