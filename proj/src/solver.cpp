#include "gmaos/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace gmaos {

std::string_view status_name(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged: return "Converged";
    case SolverStatus::IterLimit: return "IterLimit";
    case SolverStatus::FevalLimit: return "FevalLimit";
    case SolverStatus::LineSearchFail: return "LineSearchFail";
    case SolverStatus::NumericalError: return "NumericalError";
  }
  return "Unknown";
}

std::string_view histogram_slot_name(int slot) {
  if (slot == kBB1Slot) return "bb1";
  return branch_name(static_cast<Branch>(slot));
}

double initial_stepsize(const Vector& x0, double f0, const Vector& g0) {
  constexpr double tiny = 1e-30;
  const double x_inf = x0.size() ? x0.lpNorm<Eigen::Infinity>() : 0.0;
  const double g_inf = g0.lpNorm<Eigen::Infinity>();
  if (x_inf <= tiny) {
    if (std::abs(f0) <= tiny) return 1.0;
    return 2.0 * std::abs(f0) / g0.norm();
  }
  if (g_inf < 1e7) return std::min(1.0, x_inf / g_inf);
  return std::min(1.0, std::max(1.0, x_inf) / g_inf);
}

double probe_offset(double alpha_prev, const SolverConfig& cfg) {
  const double tau = std::min(cfg.tau_factor * alpha_prev, cfg.tau_cap);
  return std::isfinite(tau) ? std::max(tau, cfg.tau_floor) : cfg.tau_cap;
}

namespace {

double clamp_step(double alpha, const SolverConfig& cfg) {
  if (std::isnan(alpha)) throw NumericalError("stepsize rule produced NaN");
  return std::max(std::min(alpha, cfg.lambda_max), cfg.lambda_min);
}

struct RuleOutput {
  StepsizeDecision decision;
  int slot = 0;
};

// Stepsize rule for k >= 1.
using StepRule = std::function<RuleOutput(const Vector& g, double f, const IterateMemory& m,
                                          const GradientProbe& probe)>;

SolverReport run(const ObjectiveFunction& fn, const Vector& x0, const SolverConfig& cfg,
                 const IterationObserver& observer, const StepRule& rule) {
  validate(cfg);
  if (x0.size() != fn.dim()) throw DimensionError(fn.name() + ": start point has wrong length");

  const auto started = std::chrono::steady_clock::now();
  SolverReport report;
  auto finish = [&](SolverStatus status, const Vector& x, double f, const Vector& g,
                    std::string message = {}) {
    report.status = status;
    report.final_x = x;
    report.final_f = f;
    report.final_gnorm_inf = g.size() ? g.lpNorm<Eigen::Infinity>() : 0.0;
    report.message = std::move(message);
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
  };

  Vector x = x0;
  double f = fn.value(x);
  report.n_feval = 1;
  Vector g = fn.gradient(x);
  report.n_geval = 1;
  if (!std::isfinite(f) || !g.allFinite())
    return finish(SolverStatus::NumericalError, x, f, g, "non-finite value at start point");

  NonmonotoneState state{f, 1.0, cfg.eta_max};
  IterateMemory memory;
  Vector trial(x.size());

  for (long k = 0;; ++k) {
    const double gnorm_inf = g.lpNorm<Eigen::Infinity>();
    if (gnorm_inf <= cfg.epsilon) return finish(SolverStatus::Converged, x, f, g);
    if (k >= cfg.max_iter) return finish(SolverStatus::IterLimit, x, f, g);
    if (report.n_feval > cfg.max_feval) return finish(SolverStatus::FevalLimit, x, f, g);

    RuleOutput step;
    try {
      if (k == 0) {
        step.decision.branch = Branch::Initial;
        step.decision.alpha_raw = initial_stepsize(x, f, g);
        step.decision.alpha = step.decision.alpha_raw;
        step.slot = static_cast<int>(Branch::Initial);
      } else {
        auto probe = [&](double tau) {
          ++report.n_geval;
          return fn.gradient(x - tau * g);
        };
        step = rule(g, f, memory, probe);
      }
    } catch (const NumericalError& e) {
      return finish(SolverStatus::NumericalError, x, f, g, e.what());
    }

    const double gnorm2 = g.squaredNorm();
    auto f_along = [&](double alpha) {
      trial = x - alpha * g;
      return fn.value(trial);
    };
    LineSearchOutcome ls;
    try {
      ls = search(f_along, f, gnorm2, step.decision.alpha, state, cfg.sigma, cfg.max_backtracks);
    } catch (const LineSearchError& e) {
      report.n_feval += e.n_feval();
      return finish(SolverStatus::LineSearchFail, x, f, g, e.what());
    }
    report.n_feval += ls.n_feval;

    Vector x_next = x - ls.alpha_accepted * g;
    Vector g_next = fn.gradient(x_next);
    ++report.n_geval;
    if (!g_next.allFinite())
      return finish(SolverStatus::NumericalError, x, f, g, "non-finite gradient at accepted point");

    if (observer) {
      IterationRecord rec;
      rec.k = k;
      rec.f = f;
      rec.gnorm_inf = gnorm_inf;
      rec.gnorm2 = gnorm2;
      rec.alpha0 = step.decision.alpha;
      rec.alpha = ls.alpha_accepted;
      rec.slot = step.slot;
      rec.mu = step.decision.mu;
      rec.c = state.c;
      rec.q = state.q;
      rec.f_next = ls.f_trial;
      rec.nf = report.n_feval;
      rec.ng = report.n_geval;
      observer(rec);
    }

    state = update_cq(state, ls.f_trial);
    memory.s_prev = x_next - x;
    memory.y_prev = g_next - g;
    memory.f_prev = f;
    memory.g_prev = std::move(g);
    memory.alpha_prev = ls.alpha_accepted;
    memory.mu_prev = step.decision.mu;
    if (k > 0) ++report.branch_histogram[step.slot];
    ++report.n_iter;

    x = std::move(x_next);
    g = std::move(g_next);
    f = ls.f_trial;
  }
}

}  // namespace

StepsizeDecision dispatch_stepsize(const Vector& g_cur, double f_cur, const IterateMemory& m,
                                   const SolverConfig& cfg, const GradientProbe& probe) {
  const double sty = m.s_prev.dot(m.y_prev);
  const auto mu = compute_mu(m.f_prev, f_cur, g_cur, m.s_prev, m.y_prev);

  std::optional<StepsizeDecision> decision;
  const bool near_quadratic = mu && quadratic_like(*mu, m.mu_prev, cfg.c1, cfg.c2);
  if (!near_quadratic) {
    if (const auto params = conic_params(m.f_prev, f_cur, m.g_prev, g_cur, m.s_prev))
      decision = conic_stepsize(g_cur, *params, cfg.xi1, m.s_prev, m.y_prev);
  }
  if (!decision) {
    if (sty > 0.0)
      decision = quadratic_stepsize(g_cur, m, f_cur, cfg.xi2, cfg.eta_bar);
    else
      decision = fallback_stepsize(g_cur, m, probe, probe_offset(m.alpha_prev, cfg), cfg.xi3,
                                   cfg.delta);
  }
  decision->mu = mu;
  decision->alpha = clamp_step(decision->alpha_raw, cfg);
  return *decision;
}

SolverReport solve(const ObjectiveFunction& fn, const Vector& x0, const SolverConfig& cfg,
                   const IterationObserver& observer) {
  auto rule = [&cfg](const Vector& g, double f, const IterateMemory& m, const GradientProbe& probe) {
    RuleOutput out;
    out.decision = dispatch_stepsize(g, f, m, cfg, probe);
    out.slot = static_cast<int>(out.decision.branch);
    return out;
  };
  return run(fn, x0, cfg, observer, rule);
}

SolverReport solve_bb(const ObjectiveFunction& fn, const Vector& x0, const SolverConfig& cfg,
                      const IterationObserver& observer) {
  auto rule = [&cfg](const Vector&, double, const IterateMemory& m, const GradientProbe&) {
    RuleOutput out;
    const double sty = m.s_prev.dot(m.y_prev);
    if (sty > 0.0) {
      out.decision.alpha_raw = m.s_prev.squaredNorm() / sty;
      out.slot = kBB1Slot;
    } else {
      out.decision.branch = Branch::FallbackScaled;
      out.decision.alpha_raw = cfg.delta * m.alpha_prev;
      out.slot = static_cast<int>(Branch::FallbackScaled);
    }
    out.decision.alpha = clamp_step(out.decision.alpha_raw, cfg);
    return out;
  };
  return run(fn, x0, cfg, observer, rule);
}

}  // namespace gmaos
