#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmaos/config.hpp"
#include "gmaos/problems.hpp"
#include "gmaos/solver.hpp"

namespace gmaos {

struct BenchmarkRecord {
  std::string solver;
  std::string problem;
  int dim = 0;
  SolverStatus status = SolverStatus::NumericalError;
  long n_iter = 0;
  long n_feval = 0;
  long n_geval = 0;
  long combined_cost = 0;  // n_feval + 3 n_geval
  double wall_time_seconds = 0.0;
  double final_f = 0.0;
  double final_gnorm_inf = 0.0;
  std::uint64_t seed = 0;
};

enum class Metric { Iterations, FunctionEvals, GradientEvals, CombinedCost, WallTime };

std::string_view metric_name(Metric m);
const std::vector<Metric>& all_metrics();

struct ProfilePoint {
  double tau = 1.0;
  double rho = 0.0;
};

struct ProfileCurve {
  std::string solver;
  Metric metric = Metric::FunctionEvals;
  std::vector<ProfilePoint> points;
  bool informational = false;  // true for hardware-dependent metrics
};

struct ProfileResult {
  std::vector<ProfileCurve> curves;
  std::vector<std::string> warnings;
  int n_problems = 0;  // problems solved by at least one solver
};

/// Known solver names: "gmaos" and "bb".
const std::vector<std::string>& solver_names();

SolverReport run_solver(const std::string& solver, const ObjectiveFunction& fn,
                        const SolverConfig& cfg);

BenchmarkRecord make_record(const std::string& solver, const ObjectiveFunction& fn,
                            const SolverReport& report, std::uint64_t seed);

/// One record per (solver, problem) pair, ordered solver-major. Runs are
/// spread over `workers` threads; a run that throws is recorded as
/// NumericalError.
std::vector<BenchmarkRecord> run_matrix(const std::vector<std::string>& solvers,
                                        const std::vector<ObjectiveFunction>& problems,
                                        const SolverConfig& cfg, int workers,
                                        std::uint64_t seed = 0);

/// Cost of a record under a metric; +inf when the run did not converge.
double record_cost(const BenchmarkRecord& r, Metric m);

/// Dolan-More profiles for every solver present in the records.
ProfileResult performance_profile(const std::vector<BenchmarkRecord>& records, Metric metric,
                                  int grid_points = 200);

/// Ratio-table form: costs[p][s] for problem p, solver s (+inf = unsolved).
ProfileResult performance_profile(const std::vector<std::string>& solvers,
                                  const std::vector<std::vector<double>>& costs, Metric metric,
                                  int grid_points = 200);

/// rho_s(tau) read off a step-function curve.
double profile_value(const ProfileCurve& curve, double tau);

void write_records_csv(const std::vector<BenchmarkRecord>& records, std::ostream& out);
void write_profiles_json(const std::vector<ProfileResult>& profiles, std::ostream& out);

}  // namespace gmaos
