#include "gmaos/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gmaos/bench.hpp"
#include "gmaos/config.hpp"
#include "gmaos/problems.hpp"
#include "gmaos/solver.hpp"

namespace gmaos {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

void require_problem(const std::string& name) {
  const auto& names = problem_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw UsageError("unknown problem '" + name + "'; valid names: " + join(names));
}

void require_solver(const std::string& name) {
  const auto& names = solver_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw UsageError("unknown solver '" + name + "'; valid names: " + join(names));
}

struct Options {
  // config sources
  std::string config_path;
  std::vector<std::string> overrides;
  bool dump_config = false;
  std::optional<double> epsilon;
  std::optional<long> max_iter;
  std::optional<long> max_feval;

  // solve
  std::string problem;
  std::string solver = "gmaos";
  int dim = kDefaultDimension;
  std::string trace_path;

  // bench
  std::string solvers = "gmaos,bb";
  std::string problems;
  std::string out_path = "records.csv";
  std::string profiles_path = "profiles.json";
  int workers = 1;
  std::uint64_t seed = kPerturbationSeed;

  // check-grad
  std::optional<double> h;
  double tolerance = 1e-5;
  int points = 10;
};

SolverConfig effective_config(const Options& o) {
  SolverConfig cfg;
  if (const char* env = std::getenv("GMAOS_CONFIG"); env && *env) apply_config_file(cfg, env);
  if (!o.config_path.empty()) apply_config_file(cfg, o.config_path);
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.epsilon) cfg.epsilon = *o.epsilon;
  if (o.max_iter) cfg.max_iter = *o.max_iter;
  if (o.max_feval) cfg.max_feval = *o.max_feval;
  validate(cfg);
  return cfg;
}

void add_config_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--epsilon", o.epsilon, "Stop when ||g||_inf <= epsilon");
  cmd.add_option("--max-iter", o.max_iter, "Iteration limit");
  cmd.add_option("--max-feval", o.max_feval, "Function-evaluation limit");
}

int run_solve(const Options& o, const SolverConfig& cfg, std::ostream& out) {
  require_problem(o.problem);
  require_solver(o.solver);
  const ObjectiveFunction fn = make_problem(o.problem, o.dim);

  std::ofstream trace;
  IterationObserver observer;
  if (!o.trace_path.empty()) {
    trace.open(o.trace_path);
    if (!trace) throw UsageError("cannot open trace file '" + o.trace_path + "'");
    trace << std::setprecision(17) << "k,f,gnorm_inf,alpha,branch,C,Q,nf,ng\n";
    observer = [&trace](const IterationRecord& r) {
      trace << r.k << ',' << r.f << ',' << r.gnorm_inf << ',' << r.alpha << ','
            << histogram_slot_name(r.slot) << ',' << r.c << ',' << r.q << ',' << r.nf << ','
            << r.ng << '\n';
    };
  }

  const SolverReport report = o.solver == "bb" ? solve_bb(fn, fn.default_start(), cfg, observer)
                                               : solve(fn, fn.default_start(), cfg, observer);
  out << std::setprecision(10) << "problem=" << fn.name() << " dim=" << fn.dim()
      << " solver=" << o.solver << " status=" << status_name(report.status)
      << " n_iter=" << report.n_iter << " n_feval=" << report.n_feval
      << " n_geval=" << report.n_geval << " f=" << report.final_f
      << " gnorm_inf=" << report.final_gnorm_inf << " time=" << report.wall_time_seconds << "s";
  if (!report.message.empty()) out << " message=\"" << report.message << '"';
  out << '\n';
  return report.status == SolverStatus::Converged ? kExitOk : kExitSolverFailure;
}

int run_bench(const Options& o, const SolverConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto solvers = split_commas(o.solvers);
  if (solvers.empty()) throw UsageError("--solvers must name at least one solver");
  for (const auto& s : solvers) require_solver(s);

  std::vector<ObjectiveFunction> problems;
  const auto names = o.problems.empty() ? problem_names() : split_commas(o.problems);
  for (const auto& name : names) {
    require_problem(name);
    problems.push_back(make_problem(name, o.dim));
  }

  const auto records = run_matrix(solvers, problems, cfg, o.workers, o.seed);
  {
    std::ofstream csv(o.out_path);
    if (!csv) throw UsageError("cannot open '" + o.out_path + "'");
    write_records_csv(records, csv);
  }
  if (solvers.size() >= 2) {
    std::vector<ProfileResult> profiles;
    for (Metric m : all_metrics()) {
      profiles.push_back(performance_profile(records, m));
      for (const auto& w : profiles.back().warnings) err << "warning: " << metric_name(m) << ": " << w << '\n';
    }
    std::ofstream json(o.profiles_path);
    if (!json) throw UsageError("cannot open '" + o.profiles_path + "'");
    write_profiles_json(profiles, json);
  } else {
    err << "warning: profiles need at least two solvers; " << o.profiles_path << " not written\n";
  }

  out << std::left << std::setw(8) << "solver" << std::setw(22) << "problem" << std::setw(16)
      << "status" << std::right << std::setw(9) << "n_iter" << std::setw(9) << "n_feval"
      << std::setw(9) << "n_geval" << '\n';
  for (const auto& r : records) {
    out << std::left << std::setw(8) << r.solver << std::setw(22) << r.problem << std::setw(16)
        << status_name(r.status) << std::right << std::setw(9) << r.n_iter << std::setw(9)
        << r.n_feval << std::setw(9) << r.n_geval << '\n';
  }
  return kExitOk;
}

int run_check_grad(const Options& o, std::ostream& out) {
  std::vector<std::string> names = problem_names();
  if (!o.problem.empty()) {
    require_problem(o.problem);
    names = {o.problem};
  }
  bool all_ok = true;
  out << std::left << std::setw(22) << "problem" << std::right << std::setw(14) << "max_error"
      << "  result\n";
  for (const auto& name : names) {
    const ObjectiveFunction fn = make_problem(name, o.dim);
    double worst = 0.0;
    std::string failure;
    try {
      for (const auto& x : gradient_check_points(fn, o.points, o.seed))
        worst = std::max(worst, check_gradient(fn, x, o.h));
    } catch (const GradientCheckError& e) {
      failure = std::string(e.what()) + " at index " + std::to_string(e.index());
    }
    const bool ok = failure.empty() && worst <= o.tolerance;
    all_ok = all_ok && ok;
    out << std::left << std::setw(22) << name << std::right << std::setw(14) << std::scientific
        << std::setprecision(3) << worst << std::defaultfloat << "  " << (ok ? "ok" : "FAIL");
    if (!failure.empty()) out << " (" << failure << ')';
    out << '\n';
  }
  return all_ok ? kExitOk : kExitSolverFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Gradient method with approximately optimal stepsizes", "gmaos"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.add_option("--config", o.config_path, "key=value config file (overrides GMAOS_CONFIG)");
  app.add_option("--set", o.overrides, "Override one config key: --set key=value");
  app.add_flag("--dump-config", o.dump_config, "Print the effective config and exit");

  auto* solve_cmd = app.add_subcommand("solve", "Solve one registered problem");
  solve_cmd->add_option("--problem", o.problem, "Problem name")->required();
  solve_cmd->add_option("--dim", o.dim, "Dimension")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--solver", o.solver, "gmaos or bb");
  solve_cmd->add_option("--trace", o.trace_path, "Per-iteration CSV trace");
  add_config_flags(*solve_cmd, o);

  auto* bench_cmd = app.add_subcommand("bench", "Run solvers over the registry and build profiles");
  bench_cmd->add_option("--solvers", o.solvers, "Comma-separated solver names");
  bench_cmd->add_option("--problems", o.problems, "Comma-separated problem names (default: all)");
  bench_cmd->add_option("--dim", o.dim, "Dimension")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", o.out_path, "Records CSV");
  bench_cmd->add_option("--profiles", o.profiles_path, "Profiles JSON");
  bench_cmd->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
  bench_cmd->add_option("--seed", o.seed, "Seed recorded with each run");
  add_config_flags(*bench_cmd, o);

  auto* check_cmd = app.add_subcommand("check-grad", "Verify analytic gradients by central differences");
  check_cmd->add_option("--problem", o.problem, "Only this problem");
  check_cmd->add_option("--dim", o.dim, "Dimension")->check(CLI::PositiveNumber);
  check_cmd->add_option("--step", o.h, "Relative difference step (default: per-function)")
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("--tol", o.tolerance, "Pass threshold");
  check_cmd->add_option("--points", o.points, "Perturbed points besides the default start")
      ->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--seed", o.seed, "Perturbation seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    const SolverConfig cfg = effective_config(o);
    if (o.dump_config) {
      dump_config(cfg, out);
      return kExitOk;
    }
    if (solve_cmd->parsed()) return run_solve(o, cfg, out);
    if (bench_cmd->parsed()) return run_bench(o, cfg, out, err);
    if (check_cmd->parsed()) return run_check_grad(o, out);
    err << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace gmaos
