#pragma once

// Zhang-Hager nonmonotone line search along -g with safeguarded quadratic
// interpolation backtracking.

#include <functional>
#include <optional>
#include <stdexcept>

#include "gmaos/problems.hpp"

namespace gmaos {

/// Reference value C_k, weight Q_k and averaging parameter eta_k.
struct NonmonotoneState {
  double c = 0.0;
  double q = 1.0;
  double eta = 1.0;
};

struct LineSearchOutcome {
  double alpha_accepted = 0.0;
  double f_trial = 0.0;
  int n_backtracks = 0;
  int n_feval = 0;
};

class LineSearchError : public std::runtime_error {
 public:
  LineSearchError(const std::string& what, double best_alpha, int n_feval)
      : std::runtime_error(what), best_alpha_(best_alpha), n_feval_(n_feval) {}
  double best_alpha() const { return best_alpha_; }
  int n_feval() const { return n_feval_; }

 private:
  double best_alpha_;
  int n_feval_;
};

inline constexpr double kAlphaUnderflow = 1e-30;

/// f_trial <= c - sigma * alpha * gnorm2; false for non-finite f_trial.
bool accept(double f_trial, double c, double sigma, double alpha, double gnorm2);

/// Minimizer of the quadratic through phi(0) = f0, phi'(0) = -gnorm2 and
/// phi(alpha) = f_trial; nullopt when that quadratic is not convex.
std::optional<double> interp_trial(double f0, double gnorm2, double alpha, double f_trial);

/// The interpolated trial if alpha > 0.1 alpha0 and the trial lies in
/// [0.1 alpha0, 0.9 alpha]; otherwise alpha / 2.
double backtrack(double alpha, double alpha0, std::optional<double> trial);

/// Q' = eta Q + 1, C' = (eta Q C + f_new) / Q'.
NonmonotoneState update_cq(const NonmonotoneState& state, double f_new);

/// f along the search ray: returns f(x - alpha g).
using RayObjective = std::function<double(double alpha)>;

/// Backtracks from alpha0 until the nonmonotone acceptance test holds.
/// f0 is f(x_k), used by the interpolation. Throws LineSearchError after
/// max_backtracks rejections or when alpha drops below kAlphaUnderflow.
LineSearchOutcome search(const RayObjective& f_along, double f0, double gnorm2, double alpha0,
                         const NonmonotoneState& state, double sigma, int max_backtracks);

/// Convenience overload evaluating fn at x - alpha g. f(x) is evaluated once
/// more for the interpolation and is not included in n_feval.
LineSearchOutcome search(const ObjectiveFunction& fn, const Vector& x, const Vector& g,
                         double alpha0, const NonmonotoneState& state, double sigma,
                         int max_backtracks);

}  // namespace gmaos
