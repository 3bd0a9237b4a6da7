#include <cmath>
#include <limits>

#include "doctest.h"
#include "gmaos/problems.hpp"

using namespace gmaos;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

ObjectiveFunction half_norm_squared(int n) {
  return {"half-norm", n, [](const Vector& x) { return 0.5 * x.squaredNorm(); },
          [](const Vector& x) -> Vector { return x; }, Vector::Ones(n)};
}

}  // namespace

TEST_CASE("registry holds the fourteen functions in order") {
  const auto& names = problem_names();
  REQUIRE(names.size() == 14);
  const auto fns = registry(10);
  REQUIRE(fns.size() == 14);
  for (std::size_t i = 0; i < fns.size(); ++i) {
    CHECK(fns[i].name() == names[i]);
    CHECK(fns[i].dim() == 10);
    CHECK(fns[i].default_start().size() == 10);
    CHECK(fns[i].gradient(fns[i].default_start()).size() == 10);
  }
  CHECK_THROWS_AS(make_problem("nosuch", 10), std::out_of_range);
}

TEST_CASE("block-structured functions reject incompatible dimensions") {
  for (const char* name : {"ext-rosenbrock", "ext-white-holst", "ext-beale"})
    CHECK_THROWS_AS(make_problem(name, 7), DimensionError);
  CHECK_THROWS_AS(make_problem("dixmaana", 2), DimensionError);
  CHECK_THROWS_AS(make_problem("quadratic", 0), DimensionError);
  CHECK_NOTHROW(make_problem("dixmaana", 1000));
}

TEST_CASE("known minimizers") {
  const auto rosen = make_problem("ext-rosenbrock", 10);
  const Vector ones = Vector::Ones(10);
  CHECK(rosen.value(ones) == 0.0);
  CHECK(rosen.gradient(ones).isZero(0.0));

  const auto quad = make_problem("quadratic", 10);
  const Vector zero = Vector::Zero(10);
  CHECK(quad.value(zero) == 0.0);
  CHECK(quad.gradient(zero).isZero(0.0));
}

// Values from a separate scripted evaluation of the published formulas.
TEST_CASE("default-start values match the independent evaluation") {
  auto f0 = [](const char* name, int n) {
    const auto fn = make_problem(name, n);
    return fn.value(fn.default_start());
  };
  CHECK(f0("ext-beale", 1000) == doctest::Approx(4914.4344999999794).epsilon(1e-14));
  CHECK(f0("ext-beale", 10) == doctest::Approx(49.144345000000001).epsilon(1e-14));
  CHECK(f0("ext-rosenbrock", 10) == doctest::Approx(121.0).epsilon(1e-14));
  CHECK(f0("ext-penalty", 10) == doctest::Approx(148236.5625).epsilon(1e-14));
  CHECK(f0("edensch", 10) == doctest::Approx(169.0).epsilon(1e-14));
  CHECK(f0("dixmaana", 9) == doctest::Approx(86.5).epsilon(1e-14));
  CHECK(f0("dixmaana", 10) == doctest::Approx(90.5).epsilon(1e-14));
}

TEST_CASE("evaluations are bit-identical on repeat") {
  for (const auto& fn : registry(50)) {
    const Vector x = fn.default_start() * 0.9 + Vector::Constant(50, 0.01);
    CHECK(fn.value(x) == fn.value(x));
    CHECK(fn.gradient(x) == fn.gradient(x));
  }
}

TEST_CASE("check_gradient on 1/2 ||x||^2 at (1, 2)") {
  CHECK(check_gradient(half_norm_squared(2), vec({1.0, 2.0}), 1e-6) <= 1e-9);
}

TEST_CASE("check_gradient flags a wrong gradient") {
  const ObjectiveFunction wrong{"wrong", 3, [](const Vector& x) { return 0.5 * x.squaredNorm(); },
                                [](const Vector& x) -> Vector { return 2.0 * x; },
                                Vector::Ones(3)};
  CHECK(check_gradient(wrong, Vector::Ones(3)) > 1e-2);
}

TEST_CASE("check_gradient reports the index of a non-finite value") {
  const ObjectiveFunction bad{"bad", 3, [](const Vector& x) { return x.sum(); },
                              [](const Vector&) {
                                Vector g = Vector::Ones(3);
                                g[1] = std::numeric_limits<double>::quiet_NaN();
                                return g;
                              },
                              Vector::Ones(3)};
  try {
    check_gradient(bad, Vector::Ones(3));
    FAIL("expected GradientCheckError");
  } catch (const GradientCheckError& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("ext-rosenbrock passes the checker at its default start") {
  const auto fn = make_problem("ext-rosenbrock", kDefaultDimension);
  CHECK(check_gradient(fn, fn.default_start()) <= 1e-5);
}

TEST_CASE("perturbed check points are seeded") {
  const auto fn = make_problem("raydan1", 20);
  const auto a = gradient_check_points(fn, 10, kPerturbationSeed);
  const auto b = gradient_check_points(fn, 10, kPerturbationSeed);
  REQUIRE(a.size() == 11);
  CHECK(a[0] == fn.default_start());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(gradient_check_points(fn, 10, kPerturbationSeed + 1)[1] != a[1]);
}

TEST_CASE("diagonal quadratic spans the requested condition number") {
  const auto fn = diagonal_quadratic(5, 1e4);
  const Vector g = fn.gradient(Vector::Ones(5));
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(g[4] == doctest::Approx(1e4));
  CHECK(g.maxCoeff() / g.minCoeff() == doctest::Approx(1e4));
}
