#include "gmaos/problems.hpp"

#include <cmath>
#include <map>
#include <random>
#include <utility>

namespace gmaos {

ObjectiveFunction::ObjectiveFunction(std::string name, int dim, ValueFn value,
                                     GradientFn gradient, Vector default_start, double fd_step)
    : name_(std::move(name)),
      dim_(dim),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      default_start_(std::move(default_start)),
      fd_step_(fd_step) {
  if (dim_ <= 0) throw DimensionError(name_ + ": dimension must be positive");
  if (!(fd_step_ > 0.0)) throw std::invalid_argument(name_ + ": fd_step must be positive");
  if (default_start_.size() != dim_)
    throw DimensionError(name_ + ": default start has wrong length");
}

namespace {

void require_min_dim(const std::string& name, int n, int min_n) {
  if (n < min_n)
    throw DimensionError(name + ": needs dimension >= " + std::to_string(min_n) +
                         ", got " + std::to_string(n));
}

void require_even(const std::string& name, int n) {
  require_min_dim(name, n, 2);
  if (n % 2 != 0)
    throw DimensionError(name + ": two-variable block structure needs even dimension, got " +
                         std::to_string(n));
}

Vector alternating(int n, double odd, double even) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = (i % 2 == 0) ? odd : even;
  return x;
}

// f = 1/2 sum_i i x_i^2, x0 = (1, ..., 1)
ObjectiveFunction convex_quadratic(int n) {
  const std::string name = "quadratic";
  require_min_dim(name, n, 1);
  auto value = [](const Vector& x) {
    double f = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) f += double(i + 1) * x[i] * x[i];
    return 0.5 * f;
  };
  auto gradient = [](const Vector& x) {
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = double(i + 1) * x[i];
    return g;
  };
  return {name, n, value, gradient, Vector::Ones(n)};
}

// f = sum_{blocks} 100 (x_{2i} - x_{2i-1}^2)^2 + (1 - x_{2i-1})^2, x0 = (-1.2, 1, ...)
ObjectiveFunction extended_rosenbrock(int n) {
  const std::string name = "ext-rosenbrock";
  require_even(name, n);
  constexpr double c = 100.0;
  auto value = [](const Vector& x) {
    double f = 0.0;
    for (Eigen::Index i = 0; i < x.size(); i += 2) {
      const double t = x[i + 1] - x[i] * x[i];
      const double u = 1.0 - x[i];
      f += c * t * t + u * u;
    }
    return f;
  };
  auto gradient = [](const Vector& x) {
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); i += 2) {
      const double t = x[i + 1] - x[i] * x[i];
      g[i] = -4.0 * c * x[i] * t - 2.0 * (1.0 - x[i]);
      g[i + 1] = 2.0 * c * t;
    }
    return g;
  };
  return {name, n, value, gradient, alternating(n, -1.2, 1.0)};
}

// f = sum_{blocks} 100 (x_{2i} - x_{2i-1}^3)^2 + (1 - x_{2i-1})^2, x0 = (-1.2, 1, ...)
ObjectiveFunction extended_white_holst(int n) {
  const std::string name = "ext-white-holst";
  require_even(name, n);
  constexpr double c = 100.0;
  auto value = [](const Vector& x) {
    double f = 0.0;
    for (Eigen::Index i = 0; i < x.size(); i += 2) {
      const double t = x[i + 1] - x[i] * x[i] * x[i];
      const double u = 1.0 - x[i];
      f += c * t * t + u * u;
    }
    return f;
  };
  auto gradient = [](const Vector& x) {
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); i += 2) {
      const double t = x[i + 1] - x[i] * x[i] * x[i];
      g[i] = -6.0 * c * x[i] * x[i] * t - 2.0 * (1.0 - x[i]);
      g[i + 1] = 2.0 * c * t;
    }
    return g;
  };
  return {name, n, value, gradient, alternating(n, -1.2, 1.0)};
}

// f = sum_{blocks} (1.5 - a(1-b))^2 + (2.25 - a(1-b^2))^2 + (2.625 - a(1-b^3))^2
// with a = x_{2i-1}, b = x_{2i}; x0 = (1, 0.8, ...)
ObjectiveFunction extended_beale(int n) {
  const std::string name = "ext-beale";
  require_even(name, n);
  auto value = [](const Vector& x) {
    double f = 0.0;
    for (Eigen::Index i = 0; i < x.size(); i += 2) {
      const double a = x[i], b = x[i + 1];
      const double t1 = 1.5 - a * (1.0 - b);
      const double t2 = 2.25 - a * (1.0 - b * b);
      const double t3 = 2.625 - a * (1.0 - b * b * b);
      f += t1 * t1 + t2 * t2 + t3 * t3;
    }
    return f;
  };
  auto gradient = [](const Vector& x) {
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); i += 2) {
      const double a = x[i], b = x[i + 1];
      const double t1 = 1.5 - a * (1.0 - b);
      const double t2 = 2.25 - a * (1.0 - b * b);
      const double t3 = 2.625 - a * (1.0 - b * b * b);
      g[i] = -2.0 * (t1 * (1.0 - b) + t2 * (1.0 - b * b) + t3 * (1.0 - b * b * b));
      g[i + 1] = 2.0 * a * (t1 + 2.0 * b * t2 + 3.0 * b * b * t3);
    }
    return g;
  };
  return {name, n, value, gradient, alternating(n, 1.0, 0.8)};
}

// f = sum_{i<n} (x_i - 1)^2 + (sum_j x_j^2 - 0.25)^2, x0 = (1, 2, ..., n)
ObjectiveFunction extended_penalty(int n) {
  const std::string name = "ext-penalty";
  require_min_dim(name, n, 2);
  auto value = [](const Vector& x) {
    const Eigen::Index m = x.size();
    const double tail = x.squaredNorm() - 0.25;
    return (x.head(m - 1).array() - 1.0).square().sum() + tail * tail;
  };
  auto gradient = [](const Vector& x) {
    const Eigen::Index m = x.size();
    const double tail = x.squaredNorm() - 0.25;
    Vector g = 4.0 * tail * x;
    g.head(m - 1).array() += 2.0 * (x.head(m - 1).array() - 1.0);
    return g;
  };
  // f is O(n^4) at the start; smaller steps are swamped by rounding in f.
  return {name, n, value, gradient, Vector::LinSpaced(n, 1.0, double(n)), 1e-2};
}

// f = sum_i i x_i^2 + (1/100) (sum_i x_i)^2, x0 = (0.5, ..., 0.5)
ObjectiveFunction perturbed_quadratic(int n) {
  const std::string name = "perturbed-quadratic";
  require_min_dim(name, n, 1);
  auto value = [](const Vector& x) {
    double f = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) f += double(i + 1) * x[i] * x[i];
    const double sum = x.sum();
    return f + 0.01 * sum * sum;
  };
  auto gradient = [](const Vector& x) {
    const double sum = x.sum();
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = 2.0 * double(i + 1) * x[i] + 0.02 * sum;
    return g;
  };
  return {name, n, value, gradient, Vector::Constant(n, 0.5)};
}

// f = sum_i (i/10)(exp(x_i) - x_i), x0 = (1, ..., 1)
ObjectiveFunction raydan1(int n) {
  const std::string name = "raydan1";
  require_min_dim(name, n, 1);
  auto value = [](const Vector& x) {
    double f = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      f += double(i + 1) / 10.0 * (std::exp(x[i]) - x[i]);
    return f;
  };
  auto gradient = [](const Vector& x) {
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
      g[i] = double(i + 1) / 10.0 * (std::exp(x[i]) - 1.0);
    return g;
  };
  return {name, n, value, gradient, Vector::Ones(n)};
}

// f = sum_i (exp(x_i) - x_i), x0 = (1, ..., 1)
ObjectiveFunction raydan2(int n) {
  const std::string name = "raydan2";
  require_min_dim(name, n, 1);
  auto value = [](const Vector& x) { return (x.array().exp() - x.array()).sum(); };
  auto gradient = [](const Vector& x) -> Vector { return x.array().exp() - 1.0; };
  return {name, n, value, gradient, Vector::Ones(n)};
}

// f = sum_i (exp(x_i) - i x_i), x0 = (1/n, ..., 1/n)
ObjectiveFunction diagonal1(int n) {
  const std::string name = "diagonal1";
  require_min_dim(name, n, 1);
  auto value = [](const Vector& x) {
    double f = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) f += std::exp(x[i]) - double(i + 1) * x[i];
    return f;
  };
  auto gradient = [](const Vector& x) {
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = std::exp(x[i]) - double(i + 1);
    return g;
  };
  return {name, n, value, gradient, Vector::Constant(n, 1.0 / n)};
}

// f = sum_{i<n} (x_i + x_{i+1} - 3)^2 + (x_i - x_{i+1} + 1)^4, x0 = (2, ..., 2)
ObjectiveFunction generalized_tridiagonal1(int n) {
  const std::string name = "gen-tridiagonal1";
  require_min_dim(name, n, 2);
  auto value = [](const Vector& x) {
    double f = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double u = x[i] + x[i + 1] - 3.0;
      const double w = x[i] - x[i + 1] + 1.0;
      const double w2 = w * w;
      f += u * u + w2 * w2;
    }
    return f;
  };
  auto gradient = [](const Vector& x) {
    Vector g = Vector::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double u = x[i] + x[i + 1] - 3.0;
      const double w = x[i] - x[i + 1] + 1.0;
      const double w3 = 4.0 * w * w * w;
      g[i] += 2.0 * u + w3;
      g[i + 1] += 2.0 * u - w3;
    }
    return g;
  };
  return {name, n, value, gradient, Vector::Constant(n, 2.0)};
}

// f = 16 + sum_{i<n} (x_i - 2)^4 + (x_i x_{i+1} - 2 x_{i+1})^2 + (x_{i+1} + 1)^2, x0 = 0
ObjectiveFunction edensch(int n) {
  const std::string name = "edensch";
  require_min_dim(name, n, 2);
  auto value = [](const Vector& x) {
    double f = 16.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i] - 2.0;
      const double p = x[i + 1] * a;
      const double q = x[i + 1] + 1.0;
      f += a * a * a * a + p * p + q * q;
    }
    return f;
  };
  auto gradient = [](const Vector& x) {
    Vector g = Vector::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i] - 2.0;
      const double p = x[i + 1] * a;
      g[i] += 4.0 * a * a * a + 2.0 * p * x[i + 1];
      g[i + 1] += 2.0 * p * a + 2.0 * (x[i + 1] + 1.0);
    }
    return g;
  };
  return {name, n, value, gradient, Vector::Zero(n)};
}

// f = sum_{i<n} (x_i^2 + x_{i+1}^2)^2 + (3 - 4 x_i), x0 = (2, ..., 2)
ObjectiveFunction engval1(int n) {
  const std::string name = "engval1";
  require_min_dim(name, n, 2);
  auto value = [](const Vector& x) {
    double f = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double q = x[i] * x[i] + x[i + 1] * x[i + 1];
      f += q * q + 3.0 - 4.0 * x[i];
    }
    return f;
  };
  auto gradient = [](const Vector& x) {
    Vector g = Vector::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double q = x[i] * x[i] + x[i + 1] * x[i + 1];
      g[i] += 4.0 * q * x[i] - 4.0;
      g[i + 1] += 4.0 * q * x[i + 1];
    }
    return g;
  };
  return {name, n, value, gradient, Vector::Constant(n, 2.0)};
}

// f = sum_{i<n} 100 (x_{i+1} - x_i + 1 - x_i^2)^2, x0 = 0
ObjectiveFunction fletchcr(int n) {
  const std::string name = "fletchcr";
  require_min_dim(name, n, 2);
  constexpr double c = 100.0;
  auto value = [](const Vector& x) {
    double f = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double t = x[i + 1] - x[i] + 1.0 - x[i] * x[i];
      f += c * t * t;
    }
    return f;
  };
  auto gradient = [](const Vector& x) {
    Vector g = Vector::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double t = 2.0 * c * (x[i + 1] - x[i] + 1.0 - x[i] * x[i]);
      g[i] += t * (-1.0 - 2.0 * x[i]);
      g[i + 1] += t;
    }
    return g;
  };
  return {name, n, value, gradient, Vector::Zero(n), 1e-5};
}

// DIXMAANA (alpha=1, beta=0, gamma=delta=0.125, all exponents 0) with m = floor(n/3):
// f = 1 + sum_i x_i^2 + sum_{i<=2m} 0.125 x_i^2 x_{i+m}^4 + sum_{i<=m} 0.125 x_i x_{i+2m},
// x0 = (2, ..., 2)
ObjectiveFunction dixmaana(int n) {
  const std::string name = "dixmaana";
  require_min_dim(name, n, 3);
  auto value = [](const Vector& x) {
    const Eigen::Index m = x.size() / 3;
    double f = 1.0 + x.squaredNorm();
    for (Eigen::Index i = 0; i < 2 * m; ++i) {
      const double b = x[i + m] * x[i + m];
      f += 0.125 * x[i] * x[i] * b * b;
    }
    for (Eigen::Index i = 0; i < m; ++i) f += 0.125 * x[i] * x[i + 2 * m];
    return f;
  };
  auto gradient = [](const Vector& x) {
    const Eigen::Index m = x.size() / 3;
    Vector g = 2.0 * x;
    for (Eigen::Index i = 0; i < 2 * m; ++i) {
      const double b = x[i + m];
      const double b3 = b * b * b;
      g[i] += 0.25 * x[i] * b3 * b;
      g[i + m] += 0.5 * x[i] * x[i] * b3;
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      g[i] += 0.125 * x[i + 2 * m];
      g[i + 2 * m] += 0.125 * x[i];
    }
    return g;
  };
  return {name, n, value, gradient, Vector::Constant(n, 2.0)};
}

using Factory = ObjectiveFunction (*)(int);

const std::vector<std::pair<std::string, Factory>>& factories() {
  static const std::vector<std::pair<std::string, Factory>> table = {
      {"quadratic", convex_quadratic},
      {"ext-rosenbrock", extended_rosenbrock},
      {"ext-white-holst", extended_white_holst},
      {"ext-beale", extended_beale},
      {"ext-penalty", extended_penalty},
      {"perturbed-quadratic", perturbed_quadratic},
      {"raydan1", raydan1},
      {"raydan2", raydan2},
      {"diagonal1", diagonal1},
      {"gen-tridiagonal1", generalized_tridiagonal1},
      {"edensch", edensch},
      {"engval1", engval1},
      {"fletchcr", fletchcr},
      {"dixmaana", dixmaana},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, factory] : factories()) out.push_back(name);
    return out;
  }();
  return names;
}

ObjectiveFunction make_problem(const std::string& name, int n) {
  for (const auto& [key, factory] : factories())
    if (key == name) return factory(n);
  throw std::out_of_range("unknown problem '" + name + "'");
}

std::vector<ObjectiveFunction> registry(int n) {
  std::vector<ObjectiveFunction> out;
  out.reserve(factories().size());
  for (const auto& [name, factory] : factories()) out.push_back(factory(n));
  return out;
}

ObjectiveFunction diagonal_quadratic(int n, double cond) {
  if (n < 1) throw DimensionError("diag-quadratic: dimension must be positive");
  if (!(cond >= 1.0)) throw std::invalid_argument("diag-quadratic: condition number must be >= 1");
  Vector lambda(n);
  for (int i = 0; i < n; ++i)
    lambda[i] = n == 1 ? 1.0 : std::pow(cond, double(i) / double(n - 1));
  auto value = [lambda](const Vector& x) { return 0.5 * (lambda.array() * x.array().square()).sum(); };
  auto gradient = [lambda](const Vector& x) -> Vector { return lambda.array() * x.array(); };
  return {"diag-quadratic", n, value, gradient, Vector::Ones(n)};
}

double check_gradient(const ObjectiveFunction& fn, const Vector& x, std::optional<double> step) {
  const double h = step.value_or(fn.fd_step());
  if (!(h > 0.0)) throw std::invalid_argument("check_gradient: h must be positive");
  if (x.size() != fn.dim()) throw DimensionError("check_gradient: point has wrong length");

  const Vector g = fn.gradient(x);
  if (g.size() != fn.dim()) throw DimensionError(fn.name() + ": gradient has wrong length");

  Vector probe = x;
  double worst = 0.0;
  for (int i = 0; i < fn.dim(); ++i) {
    if (!std::isfinite(g[i]))
      throw GradientCheckError(fn.name() + ": non-finite gradient component", i);
    const double step = h * (1.0 + std::abs(x[i]));
    probe[i] = x[i] + step;
    const double f_plus = fn.value(probe);
    probe[i] = x[i] - step;
    const double f_minus = fn.value(probe);
    probe[i] = x[i];
    if (!std::isfinite(f_plus) || !std::isfinite(f_minus))
      throw GradientCheckError(fn.name() + ": non-finite function value", i);
    const double fd = (f_plus - f_minus) / (2.0 * step);
    worst = std::max(worst, std::abs(fd - g[i]) / (1.0 + std::abs(g[i])));
  }
  return worst;
}

std::vector<Vector> gradient_check_points(const ObjectiveFunction& fn, int count,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Vector> points{fn.default_start()};
  for (int p = 0; p < count; ++p) {
    Vector x = fn.default_start();
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] += 0.1 * (1.0 + std::abs(x[i])) * unit(rng);
    points.push_back(std::move(x));
  }
  return points;
}

}  // namespace gmaos
