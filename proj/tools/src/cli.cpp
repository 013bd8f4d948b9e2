#include "bdspectra/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bdspectra/eigen_tri.hpp"
#include "bdspectra/errors.hpp"
#include "bdspectra/parallel.hpp"
#include "bdspectra/problem_file.hpp"
#include "bdspectra/spectral_calculus.hpp"
#include "bdspectra/verify.hpp"

namespace bdspectra::cli {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<double> grid_points(const Interval& domain, std::size_t grid) {
  std::vector<double> ts(grid);
  for (std::size_t i = 0; i < grid; ++i) ts[i] = domain.grid_point(i, grid);
  return ts;
}

struct Row {
  double t = 0.0;
  std::vector<double> lambda;
  std::vector<double> dlambda;
  BoundSet bounds;
};

Row analyze_point(const Problem& problem, const std::optional<BirthDeathSpec>& hat, double t) {
  Row row;
  row.t = t;
  BirthDeathSample s;
  double shift = 0.0;
  if (problem.is_birth_death()) {
    s = sample(problem.birth_death(), t);
  } else {
    sample(problem.random_walk(), t);
    s = sample(*hat, t);
    shift = -1.0;
  }
  const auto spectrum = compute_spectrum(assemble_S(s));
  row.dlambda = lambda_primes(s, spectrum);
  for (double v : spectrum.values) row.lambda.push_back(v + shift);
  row.bounds = bounds(s);
  row.bounds.m1 += shift;
  row.bounds.m2 += shift;
  row.bounds.mu += shift;
  return row;
}

int cmd_analyze(const RunConfig& cfg, const Problem& problem, std::ostream& out) {
  std::optional<BirthDeathSpec> hat;
  if (!problem.is_birth_death()) hat = rw_to_bd_hat(problem.random_walk());
  const auto ts = grid_points(problem.domain(), cfg.grid);
  const auto rows =
      parallel_map<Row>(ts.size(), [&](std::size_t i) { return analyze_point(problem, hat, ts[i]); }, cfg.threads);
  const std::size_t size = problem.n() + 1;

  if (cfg.format == Format::csv) {
    out << "t";
    for (std::size_t k = 0; k < size; ++k) out << ",lambda_" << k;
    for (std::size_t k = 0; k < size; ++k) out << ",dlambda_" << k;
    out << ",m1,m2,mu\n";
    for (const auto& r : rows) {
      out << num(r.t);
      for (double v : r.lambda) out << ',' << num(v);
      for (double v : r.dlambda) out << ',' << num(v);
      out << ',' << num(r.bounds.m1) << ',' << num(r.bounds.m2) << ',' << num(r.bounds.mu) << '\n';
    }
    return kExitOk;
  }

  out << problem.name() << (problem.is_birth_death() ? " (birth-death" : " (random walk") << ", n = " << problem.n()
      << ", " << cfg.grid << " points)\n";
  for (const auto& r : rows) {
    out << "t = " << short_num(r.t) << "\n  lambda :";
    for (double v : r.lambda) out << ' ' << short_num(v);
    out << "\n  lambda':";
    for (double v : r.dlambda) out << ' ' << short_num(v);
    out << "\n  m1 = " << short_num(r.bounds.m1) << "  m2 = " << short_num(r.bounds.m2)
        << "  mu = " << short_num(r.bounds.mu) << '\n';
  }
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, const Problem& problem, const std::vector<CriterionId>& ids,
             std::ostream& out) {
  ScanOptions options;
  options.threads = cfg.threads;
  if (cfg.format == Format::csv) out << "criterion,direction,lo,hi\n";
  for (const auto& id : ids) {
    const auto intervals = scan(problem, id, cfg.grid, options);
    if (cfg.format == Format::csv) {
      for (const auto& iv : intervals)
        out << criterion_tag(id) << ',' << direction_name(id.direction) << ',' << num(iv.lo) << ','
            << num(iv.hi) << '\n';
      continue;
    }
    out << criterion_tag(id) << ':';
    if (intervals.empty()) out << " none";
    for (const auto& iv : intervals) out << " (" << short_num(iv.lo) << ", " << short_num(iv.hi) << ')';
    out << '\n';
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const Problem& problem, const std::vector<CriterionId>& ids,
               std::ostream& out) {
  VerifyOptions options;
  options.grid = cfg.grid;
  options.threads = cfg.threads;
  options.criteria = ids;
  const auto results = verify_problem(problem, options);
  bool ok = true;
  if (cfg.format == Format::csv) out << "property,status,checks,failures,witness\n";
  for (const auto& r : results) {
    ok = ok && r.passed();
    if (cfg.format == Format::csv) {
      out << csv_field(r.name) << ',' << (r.passed() ? "pass" : "fail") << ',' << r.checks << ',' << r.failures
          << ',' << csv_field(r.witness) << '\n';
    } else {
      out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks";
      if (!r.passed()) out << ", " << r.failures << " failed; first at " << r.witness;
      out << ")\n";
    }
  }
  return ok ? kExitOk : kExitPropertyFailure;
}

int cmd_trace(const RunConfig& cfg, const Problem& problem, const std::vector<CriterionId>& ids,
              std::ostream& out) {
  const auto ts = cfg.at ? std::vector<double>{*cfg.at} : grid_points(problem.domain(), cfg.grid);
  const auto verdicts = parallel_map<std::vector<CriterionVerdict>>(
      ts.size(), [&](std::size_t i) { return classify_all(problem, ids, ts[i]); }, cfg.threads);
  if (cfg.format == Format::csv) {
    out << "t,criterion,member,j,case\n";
    for (const auto& at_t : verdicts)
      for (const auto& v : at_t)
        for (const auto& w : v.indices)
          out << num(v.t) << ',' << criterion_tag(v.id) << ',' << (v.member ? 1 : 0) << ',' << w.j << ','
              << w.disjunct << '\n';
    return kExitOk;
  }
  for (const auto& at_t : verdicts)
    for (const auto& v : at_t) out << v.describe();
  return kExitOk;
}

std::vector<CriterionId> resolve_criteria(const RunConfig& cfg, const Problem& problem) {
  if (cfg.criteria.empty()) return applicable_criteria(problem);
  for (const auto& id : cfg.criteria)
    if (applies_to_random_walk(id.criterion) == problem.is_birth_death())
      throw InputError(criterion_tag(id) + " does not apply to a " +
                       (problem.is_birth_death() ? "birth-death chain" : "random walk"));
  return cfg.criteria;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.grid < 2) throw InputError("--grid must be at least 2");
  const Problem problem = load_problem(cfg.problem_path);
  const auto ids = resolve_criteria(cfg, problem);
  RunConfig resolved = cfg;
  if (!resolved.format)
    resolved.format = cfg.command == Command::analyze || cfg.command == Command::scan ? Format::csv : Format::report;
  if (cfg.at && !problem.domain().contains(*cfg.at))
    throw InputError("--at " + num(*cfg.at) + " is outside the domain");
  switch (cfg.command) {
    case Command::analyze: return cmd_analyze(resolved, problem, out);
    case Command::scan: return cmd_scan(resolved, problem, ids, out);
    case Command::verify: return cmd_verify(resolved, problem, ids, out);
    case Command::trace: return cmd_trace(resolved, problem, ids, out);
  }
  return kExitOk;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!config.output) return dispatch(config, out);
    std::ostringstream buffer;
    const int code = dispatch(config, buffer);
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) throw InputError("cannot write " + config.output->string());
    file << buffer.str();
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ValidityError& e) {
    err << "invalid: " << e.what() << '\n';
    return kExitValidityError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitPropertyFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenvalue monotonicity of parametrized birth-death and random-walk matrices", "bd-spectra"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string problem;
  std::vector<std::string> criteria;
  std::string format;
  std::string output;
  double at = 0.0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--problem", problem, "problem file")->required();
    sub->add_option("--grid", cfg.grid, "interior grid points (default 1000)");
    sub->add_option("--criteria", criteria, "comma-separated criterion tags, e.g. B_MAX_UP,B_MIN↓")->delimiter(',');
    sub->add_option("--out", output, "write output to this file");
    sub->add_option("--format", format, "csv or report")->check(CLI::IsMember({"csv", "report"}));
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  };
  auto* analyze = app.add_subcommand("analyze", "eigenvalues, derivatives and bounds on the grid");
  auto* scan_cmd = app.add_subcommand("scan", "monotonicity intervals per criterion");
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  auto* trace = app.add_subcommand("trace", "per-index condition trace of each criterion");
  for (auto* sub : {analyze, scan_cmd, verify, trace}) add_common(sub);
  auto* at_opt = trace->add_option("--at", at, "trace a single parameter value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  if (analyze->parsed()) cfg.command = Command::analyze;
  if (scan_cmd->parsed()) cfg.command = Command::scan;
  if (verify->parsed()) cfg.command = Command::verify;
  if (trace->parsed()) cfg.command = Command::trace;
  cfg.problem_path = problem;
  if (!output.empty()) cfg.output = output;
  if (!format.empty()) cfg.format = format == "csv" ? Format::csv : Format::report;
  if (at_opt->count() > 0) cfg.at = at;
  for (const auto& c : criteria) {
    const auto id = parse_criterion(c);
    if (!id) {
      err << "error: unknown criterion '" << c << "'\n";
      return kExitInputError;
    }
    cfg.criteria.push_back(*id);
  }
  return execute(cfg, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bdspectra::cli
