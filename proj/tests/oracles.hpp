#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Everything here forms matrices explicitly or searches numerically, so it
// shares no arithmetic shortcuts with the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "gmaos/model_stepsize.hpp"

namespace gmaos::oracle {

using Matrix = Eigen::MatrixXd;

// B = D - D v v^T D / (v^T D v) + r r^T / (v^T r), D = d I.
inline Matrix rank_two_update(double d, const Vector& v, const Vector& r) {
  const Eigen::Index n = v.size();
  const Matrix D = d * Matrix::Identity(n, n);
  const Vector Dv = D * v;
  return D - (Dv * Dv.transpose()) / v.dot(Dv) + (r * r.transpose()) / v.dot(r);
}

// Conic-model Hessian rebuilt from gamma alone.
inline Matrix conic_hessian(const ConicParams& p, const Vector& s_prev, const Vector& g_prev,
                            const Vector& g_cur, double xi1) {
  const Vector v = p.gamma * s_prev;
  const Vector r = g_cur - g_prev / (p.gamma * p.gamma);
  return rank_two_update(xi1 * v.dot(v) / v.dot(r), v, r);
}

// Modified-BFGS Hessian of the quadratic model.
inline Matrix quadratic_hessian(const Vector& s, const Vector& y, const Vector& g_prev,
                                const Vector& g_cur, double f_prev, double f_cur, double xi2,
                                double eta_bar) {
  const double sty = s.dot(y);
  double r_bar = 3.0 * (g_cur + g_prev).dot(s) + 6.0 * (f_prev - f_cur);
  r_bar = std::clamp(r_bar, -eta_bar * sty, eta_bar * sty);
  const Vector y_bar = y + (r_bar / s.squaredNorm()) * s;
  return rank_two_update(xi2 * y.squaredNorm() / sty, s, y_bar);
}

// phi1(alpha) - f_k for the conic model along -g.
inline double conic_phi(double alpha, double gg, double gBg, double bg) {
  const double t = 1.0 - alpha * bg;
  return -alpha * gg / t + 0.5 * alpha * alpha * gBg / (t * t);
}

// Dense log grid over [lo, hi], then golden-section refinement between the
// neighbours of the best grid point.
inline double golden_minimize(const std::function<double(double)>& phi, double lo, double hi,
                              int grid = 4000, int iterations = 200) {
  const double log_lo = std::log(lo), log_hi = std::log(hi);
  auto node = [&](int i) { return std::exp(log_lo + (log_hi - log_lo) * i / double(grid)); };
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const double val = phi(node(i));
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  double a = node(std::max(best - 1, 0));
  double b = node(std::min(best + 1, grid));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int it = 0; it < iterations && b - a > 0.0; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = phi(d);
    }
  }
  return 0.5 * (a + b);
}

// Argmin of phi1 over the branch of (0, inf) that starts at zero.
inline double conic_model_minimizer(const ConicParams& p, const Vector& s_prev,
                                    const Vector& g_prev, const Vector& g_cur, double xi1) {
  const Matrix B = conic_hessian(p, s_prev, g_prev, g_cur, xi1);
  const double gg = g_cur.squaredNorm();
  const double gBg = g_cur.dot(B * g_cur);
  const double bg = (p.b_coeff * g_prev).dot(g_cur);
  // Bracket: below the singular point when it is positive, otherwise far out.
  const double guess = gg / gBg;
  double hi = 1e6 * guess;
  if (bg > 0.0) hi = std::min(hi, (1.0 - 1e-12) / bg);
  const double lo = std::min(1e-6 * guess, 1e-3 * hi);
  return golden_minimize([&](double a) { return conic_phi(a, gg, gBg, bg); }, lo, hi);
}

struct ConicInstance {
  double f_prev = 0.0;
  double f_cur = 0.0;
  Vector g_prev, g_cur, s_prev, y_prev;
  ConicParams params;
};

// Random data for which conic_params succeeds and the stationary point exists.
inline ConicInstance random_conic_instance(std::mt19937_64& rng, int n, double xi1) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto vec = [&] {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
  };
  for (;;) {
    ConicInstance inst;
    inst.s_prev = vec();
    inst.g_prev = vec();
    inst.g_cur = vec();
    inst.y_prev = inst.g_cur - inst.g_prev;
    inst.f_prev = normal(rng);
    inst.f_cur = inst.f_prev - 4.0 * unit(rng) * inst.s_prev.norm();
    const auto p = conic_params(inst.f_prev, inst.f_cur, inst.g_prev, inst.g_cur, inst.s_prev);
    if (!p || !conic_stationary_point(inst.g_cur, *p, xi1)) continue;
    inst.params = *p;
    return inst;
  }
}

struct QuadraticInstance {
  IterateMemory memory;
  Vector g_cur;
  double f_cur = 0.0;
};

// Random data with s^T y > 0. f_cur is spread so that r_bar is sometimes
// inside its bounds and sometimes clipped at either end.
inline QuadraticInstance random_quadratic_instance(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto vec = [&] {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
  };
  for (;;) {
    QuadraticInstance inst;
    IterateMemory& m = inst.memory;
    m.s_prev = vec();
    m.g_prev = vec();
    inst.g_cur = vec();
    m.y_prev = inst.g_cur - m.g_prev;
    const double sty = m.s_prev.dot(m.y_prev);
    if (!(sty > 0.0)) continue;
    m.f_prev = normal(rng);
    // Exact-quadratic decrease plus a perturbation of random size and sign.
    const double exact = 0.5 * (inst.g_cur + m.g_prev).dot(m.s_prev);
    const double scale = std::pow(10.0, -8.0 + 9.0 * unit(rng)) * sty;
    inst.f_cur = m.f_prev + exact + scale * normal(rng);
    m.alpha_prev = 0.5 + unit(rng);
    return inst;
  }
}

inline double rel_error(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

}  // namespace gmaos::oracle
