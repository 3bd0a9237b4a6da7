#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "gmaos/config.hpp"
#include "gmaos/linesearch.hpp"
#include "gmaos/model_stepsize.hpp"
#include "gmaos/problems.hpp"

namespace gmaos {

enum class SolverStatus { Converged, IterLimit, FevalLimit, LineSearchFail, NumericalError };

std::string_view status_name(SolverStatus s);

/// Histogram slots are indexed by the integer value of Branch. The plain BB
/// baseline reports its BB1 steps in the slot of kBB1Slot.
using BranchHistogram = std::array<long, kBranchCount + 1>;
inline constexpr int kBB1Slot = kBranchCount;

std::string_view histogram_slot_name(int slot);

struct SolverReport {
  SolverStatus status = SolverStatus::NumericalError;
  long n_iter = 0;
  long n_feval = 0;
  long n_geval = 0;
  double final_gnorm_inf = 0.0;
  double final_f = 0.0;
  Vector final_x;
  double wall_time_seconds = 0.0;
  BranchHistogram branch_histogram{};
  std::string message;
};

/// State of one accepted iteration, reported before C/Q are updated.
struct IterationRecord {
  long k = 0;
  double f = 0.0;          // f(x_k)
  double gnorm_inf = 0.0;  // ||g_k||_inf
  double gnorm2 = 0.0;     // ||g_k||^2
  double alpha0 = 0.0;     // initial trial stepsize
  double alpha = 0.0;      // accepted stepsize
  int slot = 0;            // histogram slot of the stepsize rule used
  std::optional<double> mu;
  double c = 0.0;          // C_k
  double q = 1.0;          // Q_k
  double f_next = 0.0;     // f(x_{k+1})
  long nf = 0;             // cumulative counts after the step
  long ng = 0;
};

using IterationObserver = std::function<void(const IterationRecord&)>;

/// First trial stepsize, chosen from the scale of x0, f0 and g0.
double initial_stepsize(const Vector& x0, double f0, const Vector& g0);

/// Offset of the finite-difference curvature probe.
double probe_offset(double alpha_prev, const SolverConfig& cfg);

/// Chooses among the conic model, the quadratic model and the fallbacks,
/// then clamps to [lambda_min, lambda_max].
StepsizeDecision dispatch_stepsize(const Vector& g_cur, double f_cur, const IterateMemory& m,
                                   const SolverConfig& cfg, const GradientProbe& probe);

/// Gradient method with approximately optimal stepsizes.
SolverReport solve(const ObjectiveFunction& fn, const Vector& x0, const SolverConfig& cfg,
                   const IterationObserver& observer = {});

/// Barzilai-Borwein (BB1) baseline with the same line search and stopping rules.
SolverReport solve_bb(const ObjectiveFunction& fn, const Vector& x0, const SolverConfig& cfg,
                      const IterationObserver& observer = {});

}  // namespace gmaos
