#include "gmaos/model_stepsize.hpp"

#include <algorithm>
#include <cmath>

namespace gmaos {

namespace {

constexpr double kGammaMin = 0.01;
constexpr double kGammaMax = 2.0;
constexpr double kBCoeffBound = 5000.0;

double truncate_to_bb(double alpha, double lo, double hi) { return std::max(std::min(alpha, hi), lo); }

}  // namespace

std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::Initial: return "initial";
    case Branch::Conic: return "conic";
    case Branch::QuadraticBFGS: return "quadratic";
    case Branch::FallbackFD: return "fallback-fd";
    case Branch::FallbackBBlike: return "fallback-bb";
    case Branch::FallbackScaled: return "fallback-scaled";
  }
  return "unknown";
}

std::optional<double> bb1(const Vector& s, const Vector& y) {
  const double sty = s.dot(y);
  if (sty == 0.0) return std::nullopt;
  return s.squaredNorm() / sty;
}

std::optional<double> bb2(const Vector& s, const Vector& y) {
  const double yy = y.squaredNorm();
  if (yy == 0.0) return std::nullopt;
  return s.dot(y) / yy;
}

std::optional<double> compute_mu(double f_prev, double f_cur, const Vector& g_cur,
                                 const Vector& s_prev, const Vector& y_prev) {
  const double sty = s_prev.dot(y_prev);
  if (sty == 0.0) return std::nullopt;
  return std::abs(2.0 * (f_prev - f_cur + g_cur.dot(s_prev)) / sty - 1.0);
}

bool quadratic_like(double mu, std::optional<double> mu_prev, double c1, double c2) {
  if (mu <= c1) return true;
  return mu_prev.has_value() && std::max(mu, *mu_prev) <= c2;
}

std::optional<ConicParams> conic_params(double f_prev, double f_cur, const Vector& g_prev,
                                        const Vector& g_cur, const Vector& s_prev) {
  const double gps = g_prev.dot(s_prev);
  if (gps == 0.0) return std::nullopt;
  const double gcs = g_cur.dot(s_prev);
  const double decrease = f_prev - f_cur;

  ConicParams p;
  p.delta = decrease * decrease - gcs * gps;
  if (!(p.delta > 0.0)) return std::nullopt;
  p.rho = std::sqrt(p.delta);

  const double gamma_den = p.rho + decrease;
  if (gamma_den == 0.0) return std::nullopt;
  p.gamma = std::clamp(-gps / gamma_den, kGammaMin, kGammaMax);
  p.b_coeff = std::clamp((1.0 - p.gamma) / (p.gamma * gps), -kBCoeffBound, kBCoeffBound);

  p.v = p.gamma * s_prev;
  p.r = g_cur - g_prev / (p.gamma * p.gamma);
  p.vtr = p.v.dot(p.r);
  if (!(p.vtr > 0.0)) return std::nullopt;

  p.b_dot_g = p.b_coeff * g_prev.dot(g_cur);
  return p;
}

std::optional<double> conic_curvature(const Vector& g_cur, const ConicParams& p, double xi1) {
  const double vtv = p.v.squaredNorm();
  if (vtv == 0.0 || !(p.vtr > 0.0)) return std::nullopt;
  const double scale = xi1 * vtv / p.vtr;
  const double gg = g_cur.squaredNorm();
  const double vg = p.v.dot(g_cur);
  const double rg = p.r.dot(g_cur);
  return scale * std::max(0.0, gg - vg * vg / vtv) + rg * rg / p.vtr;
}

std::optional<double> conic_stationary_point(const Vector& g_cur, const ConicParams& p,
                                             double xi1) {
  const auto curvature = conic_curvature(g_cur, p, xi1);
  if (!curvature) return std::nullopt;
  const double gg = g_cur.squaredNorm();
  const double denom = *curvature + gg * p.b_dot_g;
  if (!(denom > 0.0)) return std::nullopt;
  return gg / denom;
}

std::optional<StepsizeDecision> conic_stepsize(const Vector& g_cur, const ConicParams& p,
                                               double xi1, const Vector& s_prev,
                                               const Vector& y_prev) {
  const auto stationary = conic_stationary_point(g_cur, p, xi1);
  if (!stationary) return std::nullopt;

  double alpha = *stationary;
  const double sty = s_prev.dot(y_prev);
  if (sty > 0.0) alpha = truncate_to_bb(alpha, sty / y_prev.squaredNorm(), s_prev.squaredNorm() / sty);

  StepsizeDecision d;
  d.branch = Branch::Conic;
  d.alpha_raw = alpha;
  d.alpha = alpha;
  return d;
}

QuadraticModel quadratic_model(const Vector& g_cur, const IterateMemory& m, double f_cur,
                               double xi2, double eta_bar) {
  const Vector& s = m.s_prev;
  const Vector& y = m.y_prev;
  const double ss = s.squaredNorm();
  if (ss == 0.0) throw std::domain_error("quadratic_model: zero step s_{k-1}");

  QuadraticModel q;
  q.sty = s.dot(y);
  if (!(q.sty > 0.0)) throw std::domain_error("quadratic_model: requires s^T y > 0");

  const double bound = eta_bar * q.sty;
  const double r_raw = 3.0 * (g_cur + m.g_prev).dot(s) + 6.0 * (m.f_prev - f_cur);
  q.r_bar = std::min(std::max(r_raw, -bound), bound);
  // The sum can round one ulp below the bound the clip guarantees.
  q.sty_bar = std::max(q.sty + q.r_bar, (1.0 - eta_bar) * q.sty);

  const double scale = xi2 * y.squaredNorm() / q.sty;
  const double gg = g_cur.squaredNorm();
  const double gs = g_cur.dot(s);
  const double ybar_g = y.dot(g_cur) + (q.r_bar / ss) * gs;
  q.curvature = scale * std::max(0.0, gg - gs * gs / ss) + ybar_g * ybar_g / q.sty_bar;
  return q;
}

StepsizeDecision quadratic_stepsize(const Vector& g_cur, const IterateMemory& m, double f_cur,
                                    double xi2, double eta_bar) {
  const QuadraticModel q = quadratic_model(g_cur, m, f_cur, xi2, eta_bar);
  const double alpha_hat = g_cur.squaredNorm() / q.curvature;
  const double hi = m.s_prev.squaredNorm() / q.sty;
  const double lo = q.sty / m.y_prev.squaredNorm();

  StepsizeDecision d;
  d.branch = Branch::QuadraticBFGS;
  d.alpha_raw = truncate_to_bb(alpha_hat, lo, hi);
  d.alpha = d.alpha_raw;
  return d;
}

StepsizeDecision fallback_stepsize(const Vector& g_cur, const IterateMemory& m,
                                   const GradientProbe& probe, double tau, double xi3,
                                   double delta) {
  const double gg = g_cur.squaredNorm();
  const double ratio = m.g_prev.squaredNorm() / gg;
  const double sty = m.s_prev.dot(m.y_prev);

  StepsizeDecision d;
  if (ratio >= xi3 && sty != 0.0) {
    d.branch = Branch::FallbackBBlike;
    d.alpha_raw = gg * m.alpha_prev * m.alpha_prev / std::abs(sty);
  } else if (ratio < xi3) {
    const Vector g_probe = probe(tau);
    if (!g_probe.allFinite()) throw NumericalError("fallback probe: non-finite gradient");
    const double curvature = g_cur.dot(g_probe - g_cur) / tau;
    if (curvature != 0.0) {
      d.branch = Branch::FallbackFD;
      d.alpha_raw = gg / std::abs(curvature);
      d.extra_gradient_evals = 1;
    } else {
      d.branch = Branch::FallbackScaled;
      d.alpha_raw = delta * m.alpha_prev;
    }
  } else {
    d.branch = Branch::FallbackScaled;
    d.alpha_raw = delta * m.alpha_prev;
  }
  d.alpha = d.alpha_raw;
  return d;
}

}  // namespace gmaos
