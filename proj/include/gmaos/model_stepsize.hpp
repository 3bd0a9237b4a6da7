#pragma once

// Approximately optimal stepsizes: each candidate step length is the exact
// minimizer of a cheap one-dimensional model of f(x_k - alpha g_k), built
// from the previous iterate only.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "gmaos/problems.hpp"

namespace gmaos {

/// Raised when an objective or gradient evaluation produces NaN or inf where
/// the method cannot recover from it.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Branch { Initial, Conic, QuadraticBFGS, FallbackFD, FallbackBBlike, FallbackScaled };

inline constexpr int kBranchCount = 6;

std::string_view branch_name(Branch b);

/// One-step history: s = x_k - x_{k-1}, y = g_k - g_{k-1}, plus f, g, alpha
/// and the closeness measure mu at the previous iterate.
struct IterateMemory {
  Vector s_prev;
  Vector y_prev;
  double f_prev = 0.0;
  Vector g_prev;
  double alpha_prev = 1.0;
  std::optional<double> mu_prev;
};

/// Conic-model coefficients after the gamma and b-coefficient clips.
struct ConicParams {
  double delta = 0.0;
  double rho = 0.0;
  double gamma = 1.0;    // in [0.01, 2]
  double b_coeff = 0.0;  // in [-5000, 5000]; b_k = b_coeff * g_{k-1}
  Vector v;              // gamma * s_{k-1}
  Vector r;              // (gamma g_k - g_{k-1} / gamma) / gamma
  double vtr = 0.0;
  double b_dot_g = 0.0;  // b_k^T g_k = b_coeff * g_{k-1}^T g_k
};

struct StepsizeDecision {
  Branch branch = Branch::Initial;
  double alpha_raw = 0.0;  // model minimizer (after BB truncation, before the lambda clamp)
  double alpha = 0.0;      // after the lambda clamp
  std::optional<double> mu;
  int extra_gradient_evals = 0;
};

/// Ingredients of the modified-BFGS quadratic model.
struct QuadraticModel {
  double r_bar = 0.0;     // clipped to [-eta_bar s^T y, eta_bar s^T y]
  double sty = 0.0;       // s^T y
  double sty_bar = 0.0;   // s^T y_bar = s^T y + r_bar
  double curvature = 0.0; // g^T B g
};

/// ||s||^2 / s^T y, or nullopt when s^T y == 0.
std::optional<double> bb1(const Vector& s, const Vector& y);
/// s^T y / ||y||^2, or nullopt when y == 0.
std::optional<double> bb2(const Vector& s, const Vector& y);

/// mu_k = |2 (f_{k-1} - f_k + g_k^T s) / (s^T y) - 1|; nullopt when s^T y == 0.
std::optional<double> compute_mu(double f_prev, double f_cur, const Vector& g_cur,
                                 const Vector& s_prev, const Vector& y_prev);

/// True when mu <= c1, or when mu_prev is known and max(mu, mu_prev) <= c2.
bool quadratic_like(double mu, std::optional<double> mu_prev, double c1, double c2);

/// Conic coefficients, or nullopt when the conic model is unusable
/// (Delta <= 0, undefined gamma, or v^T r <= 0).
std::optional<ConicParams> conic_params(double f_prev, double f_cur, const Vector& g_prev,
                                        const Vector& g_cur, const Vector& s_prev);

/// g^T B g for the generalized-BFGS update of D = xi1 (v^T v / v^T r) I,
/// without forming B. nullopt when v == 0 or v^T r <= 0.
std::optional<double> conic_curvature(const Vector& g_cur, const ConicParams& p, double xi1);

/// Stationary point ||g||^2 / (g^T B g + ||g||^2 b^T g) of the conic model
/// along -g; nullopt when the denominator is not positive.
std::optional<double> conic_stationary_point(const Vector& g_cur, const ConicParams& p,
                                             double xi1);

/// Conic stationary point truncated to [bb2, bb1] when s^T y > 0.
std::optional<StepsizeDecision> conic_stepsize(const Vector& g_cur, const ConicParams& p,
                                               double xi1, const Vector& s_prev,
                                               const Vector& y_prev);

/// Requires s^T y > 0. Throws std::domain_error when s == 0.
QuadraticModel quadratic_model(const Vector& g_cur, const IterateMemory& m, double f_cur,
                               double xi2, double eta_bar);

StepsizeDecision quadratic_stepsize(const Vector& g_cur, const IterateMemory& m, double f_cur,
                                    double xi2, double eta_bar);

/// Returns g(x_k - tau g_k) for the current iterate.
using GradientProbe = std::function<Vector(double tau)>;

/// Stepsize for non-positive curvature along the last step: the s^T y based
/// estimate when consecutive gradients are nearly collinear, a
/// finite-difference curvature probe otherwise, and delta * alpha_prev as
/// the last resort. extra_gradient_evals is 1 only on the FallbackFD branch;
/// a probe that finds zero curvature is not reflected there, so callers
/// count probe calls at the probe itself.
StepsizeDecision fallback_stepsize(const Vector& g_cur, const IterateMemory& m,
                                   const GradientProbe& probe, double tau, double xi3,
                                   double delta);

}  // namespace gmaos
