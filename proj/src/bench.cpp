#include "gmaos/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace gmaos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::Iterations: return "n_iter";
    case Metric::FunctionEvals: return "n_feval";
    case Metric::GradientEvals: return "n_geval";
    case Metric::CombinedCost: return "combined_cost";
    case Metric::WallTime: return "wall_time_seconds";
  }
  return "unknown";
}

const std::vector<Metric>& all_metrics() {
  static const std::vector<Metric> metrics = {Metric::Iterations, Metric::FunctionEvals,
                                              Metric::GradientEvals, Metric::CombinedCost,
                                              Metric::WallTime};
  return metrics;
}

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {"gmaos", "bb"};
  return names;
}

SolverReport run_solver(const std::string& solver, const ObjectiveFunction& fn,
                        const SolverConfig& cfg) {
  if (solver == "gmaos") return solve(fn, fn.default_start(), cfg);
  if (solver == "bb") return solve_bb(fn, fn.default_start(), cfg);
  throw std::out_of_range("unknown solver '" + solver + "'");
}

BenchmarkRecord make_record(const std::string& solver, const ObjectiveFunction& fn,
                            const SolverReport& report, std::uint64_t seed) {
  BenchmarkRecord r;
  r.solver = solver;
  r.problem = fn.name();
  r.dim = fn.dim();
  r.status = report.status;
  r.n_iter = report.n_iter;
  r.n_feval = report.n_feval;
  r.n_geval = report.n_geval;
  r.combined_cost = report.n_feval + 3 * report.n_geval;
  r.wall_time_seconds = report.wall_time_seconds;
  r.final_f = report.final_f;
  r.final_gnorm_inf = report.final_gnorm_inf;
  r.seed = seed;
  return r;
}

std::vector<BenchmarkRecord> run_matrix(const std::vector<std::string>& solvers,
                                        const std::vector<ObjectiveFunction>& problems,
                                        const SolverConfig& cfg, int workers,
                                        std::uint64_t seed) {
  if (solvers.empty() || problems.empty())
    throw std::invalid_argument("run_matrix: needs at least one solver and one problem");
  for (const auto& s : solvers)
    if (std::find(solver_names().begin(), solver_names().end(), s) == solver_names().end())
      throw std::out_of_range("unknown solver '" + s + "'");
  validate(cfg);

  const std::size_t total = solvers.size() * problems.size();
  std::vector<BenchmarkRecord> records(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const std::string& solver = solvers[idx / problems.size()];
      const ObjectiveFunction& fn = problems[idx % problems.size()];
      try {
        records[idx] = make_record(solver, fn, run_solver(solver, fn, cfg), seed);
      } catch (const std::exception&) {
        SolverReport failed;
        failed.status = SolverStatus::NumericalError;
        failed.final_f = std::numeric_limits<double>::quiet_NaN();
        failed.final_gnorm_inf = std::numeric_limits<double>::quiet_NaN();
        records[idx] = make_record(solver, fn, failed, seed);
      }
    }
  };

  if (workers <= 0) workers = int(std::max(1u, std::thread::hardware_concurrency()));
  workers = int(std::min<std::size_t>(std::size_t(workers), total));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  return records;
}

double record_cost(const BenchmarkRecord& r, Metric m) {
  if (r.status != SolverStatus::Converged) return kInf;
  // Profiles need strictly positive costs; a run that starts at a
  // stationary point would otherwise report zero iterations.
  switch (m) {
    case Metric::Iterations: return std::max<double>(1.0, double(r.n_iter));
    case Metric::FunctionEvals: return std::max<double>(1.0, double(r.n_feval));
    case Metric::GradientEvals: return std::max<double>(1.0, double(r.n_geval));
    case Metric::CombinedCost: return std::max<double>(1.0, double(r.combined_cost));
    case Metric::WallTime: return std::max(1e-9, r.wall_time_seconds);
  }
  return kInf;
}

namespace {

ProfileResult profile_from_table(const std::vector<std::string>& solvers,
                                 const std::vector<std::string>& labels,
                                 const std::vector<std::vector<double>>& costs, Metric metric,
                                 int grid_points) {
  if (solvers.size() < 2) throw std::invalid_argument("performance_profile: needs >= 2 solvers");
  if (grid_points < 2) throw std::invalid_argument("performance_profile: grid too small");

  ProfileResult result;
  std::vector<std::vector<double>> ratios;
  for (std::size_t p = 0; p < costs.size(); ++p) {
    const auto& row = costs[p];
    if (row.size() != solvers.size())
      throw std::invalid_argument("performance_profile: cost row has wrong width");
    for (double c : row)
      if (!(c > 0.0)) throw std::invalid_argument("performance_profile: costs must be positive");
    const double best = *std::min_element(row.begin(), row.end());
    if (std::isinf(best)) {
      result.warnings.push_back("problem " + labels[p] + " unsolved by every solver; excluded");
      continue;
    }
    std::vector<double> r;
    r.reserve(row.size());
    for (double c : row) r.push_back(c / best);
    ratios.push_back(std::move(r));
  }
  result.n_problems = int(ratios.size());

  std::vector<double> grid{1.0};
  double tau_max = 1.0;
  for (const auto& r : ratios)
    for (double v : r)
      if (std::isfinite(v)) {
        grid.push_back(v);
        tau_max = std::max(tau_max, v);
      }
  if (tau_max > 1.0) {
    const double log_max = std::log(tau_max);
    for (int i = 1; i < grid_points - 1; ++i)
      grid.push_back(std::exp(log_max * double(i) / double(grid_points - 1)));
    grid.push_back(tau_max);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  for (std::size_t s = 0; s < solvers.size(); ++s) {
    ProfileCurve curve;
    curve.solver = solvers[s];
    curve.metric = metric;
    curve.informational = metric == Metric::WallTime;
    for (double tau : grid) {
      long hits = 0;
      for (const auto& r : ratios)
        if (r[s] <= tau) ++hits;
      const double rho = ratios.empty() ? 0.0 : double(hits) / double(ratios.size());
      curve.points.push_back({tau, rho});
    }
    result.curves.push_back(std::move(curve));
  }
  return result;
}

}  // namespace

ProfileResult performance_profile(const std::vector<std::string>& solvers,
                                  const std::vector<std::vector<double>>& costs, Metric metric,
                                  int grid_points) {
  std::vector<std::string> labels;
  for (std::size_t p = 0; p < costs.size(); ++p) labels.push_back(std::to_string(p));
  return profile_from_table(solvers, labels, costs, metric, grid_points);
}

ProfileResult performance_profile(const std::vector<BenchmarkRecord>& records, Metric metric,
                                  int grid_points) {
  std::vector<std::string> solvers;
  std::vector<std::string> problems;
  for (const auto& r : records) {
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end())
      solvers.push_back(r.solver);
    const std::string key = r.problem + "/" + std::to_string(r.dim);
    if (std::find(problems.begin(), problems.end(), key) == problems.end())
      problems.push_back(key);
  }
  std::vector<std::vector<double>> costs(problems.size(), std::vector<double>(solvers.size(), kInf));
  for (const auto& r : records) {
    const auto p = std::find(problems.begin(), problems.end(), r.problem + "/" + std::to_string(r.dim)) -
                   problems.begin();
    const auto s = std::find(solvers.begin(), solvers.end(), r.solver) - solvers.begin();
    costs[p][s] = record_cost(r, metric);
  }
  return profile_from_table(solvers, problems, costs, metric, grid_points);
}

double profile_value(const ProfileCurve& curve, double tau) {
  double rho = 0.0;
  for (const auto& pt : curve.points) {
    if (pt.tau > tau) break;
    rho = pt.rho;
  }
  return rho;
}

void write_records_csv(const std::vector<BenchmarkRecord>& records, std::ostream& out) {
  out << "solver,problem,dim,status,n_iter,n_feval,n_geval,combined_cost,wall_time_seconds,"
         "final_f,final_gnorm_inf,seed\n";
  const auto old_precision = out.precision(17);
  for (const auto& r : records) {
    out << r.solver << ',' << r.problem << ',' << r.dim << ',' << status_name(r.status) << ','
        << r.n_iter << ',' << r.n_feval << ',' << r.n_geval << ',' << r.combined_cost << ','
        << r.wall_time_seconds << ',' << r.final_f << ',' << r.final_gnorm_inf << ',' << r.seed
        << '\n';
  }
  out.precision(old_precision);
}

void write_profiles_json(const std::vector<ProfileResult>& profiles, std::ostream& out) {
  nlohmann::json curves = nlohmann::json::array();
  for (const auto& result : profiles) {
    for (const auto& curve : result.curves) {
      nlohmann::json points = nlohmann::json::array();
      for (const auto& pt : curve.points) points.push_back({pt.tau, pt.rho});
      curves.push_back({{"metric", std::string(metric_name(curve.metric))},
                        {"solver", curve.solver},
                        {"informational", curve.informational},
                        {"n_problems", result.n_problems},
                        {"points", std::move(points)}});
    }
  }
  out << curves.dump(2) << '\n';
}

}  // namespace gmaos
