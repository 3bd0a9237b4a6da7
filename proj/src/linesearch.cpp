#include "gmaos/linesearch.hpp"

#include <cmath>
#include <limits>

namespace gmaos {

bool accept(double f_trial, double c, double sigma, double alpha, double gnorm2) {
  if (!std::isfinite(f_trial)) return false;
  return f_trial <= c - sigma * alpha * gnorm2;
}

std::optional<double> interp_trial(double f0, double gnorm2, double alpha, double f_trial) {
  const double curvature = f_trial - f0 + alpha * gnorm2;
  if (!(curvature > 0.0)) return std::nullopt;
  const double trial = gnorm2 * alpha * alpha / (2.0 * curvature);
  if (!std::isfinite(trial)) return std::nullopt;
  return trial;
}

double backtrack(double alpha, double alpha0, std::optional<double> trial) {
  if (alpha > 0.1 * alpha0 && trial && *trial >= 0.1 * alpha0 && *trial <= 0.9 * alpha)
    return *trial;
  return 0.5 * alpha;
}

NonmonotoneState update_cq(const NonmonotoneState& state, double f_new) {
  NonmonotoneState next = state;
  const double weighted = state.eta * state.q;
  next.q = weighted + 1.0;
  next.c = (weighted * state.c + f_new) / next.q;
  return next;
}

LineSearchOutcome search(const RayObjective& f_along, double f0, double gnorm2, double alpha0,
                         const NonmonotoneState& state, double sigma, int max_backtracks) {
  if (!(alpha0 > 0.0)) throw std::invalid_argument("search: alpha0 must be positive");

  LineSearchOutcome out;
  double alpha = alpha0;
  double best_alpha = alpha0;
  double best_f = std::numeric_limits<double>::infinity();
  for (;;) {
    const double f_trial = f_along(alpha);
    ++out.n_feval;
    if (accept(f_trial, state.c, sigma, alpha, gnorm2)) {
      out.alpha_accepted = alpha;
      out.f_trial = f_trial;
      return out;
    }
    if (f_trial < best_f) {
      best_f = f_trial;
      best_alpha = alpha;
    }
    if (out.n_backtracks >= max_backtracks)
      throw LineSearchError("line search: backtrack limit reached", best_alpha, out.n_feval);
    alpha = backtrack(alpha, alpha0, interp_trial(f0, gnorm2, alpha, f_trial));
    ++out.n_backtracks;
    if (alpha < kAlphaUnderflow)
      throw LineSearchError("line search: stepsize underflow", best_alpha, out.n_feval);
  }
}

LineSearchOutcome search(const ObjectiveFunction& fn, const Vector& x, const Vector& g,
                         double alpha0, const NonmonotoneState& state, double sigma,
                         int max_backtracks) {
  Vector trial(x.size());
  auto f_along = [&](double alpha) {
    trial = x - alpha * g;
    return fn.value(trial);
  };
  return search(f_along, fn.value(x), g.squaredNorm(), alpha0, state, sigma, max_backtracks);
}

}  // namespace gmaos
