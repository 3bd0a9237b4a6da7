#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "gmaos/linesearch.hpp"

using namespace gmaos;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ObjectiveFunction half_norm_squared(int n) {
  return {"half-norm", n, [](const Vector& x) { return 0.5 * x.squaredNorm(); },
          [](const Vector& x) -> Vector { return x; }, Vector::Ones(n)};
}

}  // namespace

TEST_CASE("accept") {
  CHECK(accept(0.9, 1.0, 1e-4, 1.0, 1.0));
  CHECK_FALSE(accept(1.0, 1.0, 1e-4, 1.0, 1.0));
  CHECK_FALSE(accept(std::nan(""), 1.0, 1e-4, 1.0, 1.0));
  CHECK_FALSE(accept(kInf, 1.0, 1e-4, 1.0, 1.0));
}

TEST_CASE("interp_trial") {
  CHECK(*interp_trial(1.0, 1.0, 1.0, 1.0) == doctest::Approx(0.5));
  CHECK(*interp_trial(1.0, 1.0, 1.0, 0.5) == doctest::Approx(1.0));
  CHECK_FALSE(interp_trial(1.0, 1.0, 1.0, -0.1).has_value());  // f_trial - f0 + alpha gg = -0.1
}

TEST_CASE("backtrack safeguard") {
  CHECK(backtrack(1.0, 1.0, 0.5) == 0.5);
  CHECK(backtrack(1.0, 1.0, 0.05) == 0.5);
  CHECK(backtrack(0.05, 1.0, 0.04) == 0.025);
  CHECK(backtrack(1.0, 1.0, std::nullopt) == 0.5);
}

TEST_CASE("backtrack always shrinks by at least 0.9") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 2000; ++t) {
    const double alpha0 = std::pow(10.0, 6.0 * unit(rng) - 3.0);
    const double alpha = alpha0 * unit(rng);
    if (alpha <= 0.0) continue;
    std::optional<double> trial;
    if (t % 3) trial = alpha * 2.0 * unit(rng);
    const double next = backtrack(alpha, alpha0, trial);
    CHECK(next > 0.0);
    CHECK(next <= 0.9 * alpha);
  }
}

TEST_CASE("update_cq") {
  auto s = update_cq({10.0, 1.0, 1.0}, 2.0);
  CHECK(s.q == 2.0);
  CHECK(s.c == 6.0);
  s = update_cq({10.0, 5.0, 0.0}, 2.0);
  CHECK(s.q == 1.0);
  CHECK(s.c == 2.0);

  NonmonotoneState st{3.0, 1.0, 1.0};
  st = update_cq(st, 1.0);
  st = update_cq(st, 2.0);
  CHECK(st.c == doctest::Approx(2.0));
}

TEST_CASE("update_cq is a convex combination and keeps q >= 1") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  NonmonotoneState st{normal(rng), 1.0, 0.0};
  for (int t = 0; t < 5000; ++t) {
    st.eta = unit(rng);
    const double f = normal(rng) * 10.0;
    const NonmonotoneState next = update_cq(st, f);
    CHECK(next.q >= 1.0);
    CHECK(next.c >= std::min(st.c, f) - 1e-12 * std::abs(f));
    CHECK(next.c <= std::max(st.c, f) + 1e-12 * std::abs(f));
    st = next;
  }
}

TEST_CASE("with eta = 1, C is the running mean") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int seq = 0; seq < 1000; ++seq) {
    const double f0 = 100.0 + normal(rng);
    NonmonotoneState st{f0, 1.0, 1.0};
    long double sum = f0;
    for (int k = 1; k < 200; ++k) {
      const double f = 100.0 + 10.0 * normal(rng);
      st = update_cq(st, f);
      sum += f;
      const double mean = double(sum / (k + 1));
      worst = std::max(worst, std::abs(st.c - mean) / std::abs(mean));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("search: Cauchy step accepted without backtracking") {
  const auto fn = half_norm_squared(2);
  Vector x(2);
  x << 1.0, 0.0;
  const Vector g = fn.gradient(x);
  const auto out = search(fn, x, g, 1.0, {fn.value(x), 1.0, 1.0}, 1e-4, 60);
  CHECK(out.alpha_accepted == 1.0);
  CHECK(out.n_backtracks == 0);
  CHECK(out.n_feval == 1);
  CHECK(out.f_trial == 0.0);
}

TEST_CASE("search: huge initial step backtracks to an acceptable one") {
  const auto fn = half_norm_squared(3);
  const Vector x = Vector::Ones(3);
  const Vector g = fn.gradient(x);
  const NonmonotoneState st{fn.value(x), 1.0, 1.0};
  const auto out = search(fn, x, g, 1e6, st, 1e-4, 60);
  CHECK(out.n_backtracks >= 1);
  CHECK(out.n_feval == out.n_backtracks + 1);
  CHECK(out.f_trial <= st.c - 1e-4 * out.alpha_accepted * g.squaredNorm());
  CHECK(out.f_trial == fn.value(x - out.alpha_accepted * g));
}

TEST_CASE("search: objective that is always +inf fails") {
  int calls = 0;
  RayObjective f_along = [&](double) {
    ++calls;
    return kInf;
  };
  try {
    search(f_along, 1.0, 1.0, 1.0, {1.0, 1.0, 1.0}, 1e-4, 60);
    FAIL("expected LineSearchError");
  } catch (const LineSearchError& e) {
    CHECK(e.n_feval() == calls);
    CHECK(calls == 61);
  }
}

TEST_CASE("search: alpha underflow fails") {
  RayObjective f_along = [](double) { return 2.0; };
  CHECK_THROWS_AS(search(f_along, 1.0, 1.0, 1e-29, {1.0, 1.0, 1.0}, 1e-4, 1000), LineSearchError);
}
