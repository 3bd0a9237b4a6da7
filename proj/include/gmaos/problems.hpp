#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gmaos {

using Vector = Eigen::VectorXd;

/// A smooth objective with an analytic gradient and a default starting point.
///
/// Instances are immutable after construction; the stored callables must be
/// pure so that one instance can be evaluated from several threads at once.
class ObjectiveFunction {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  ObjectiveFunction(std::string name, int dim, ValueFn value, GradientFn gradient,
                    Vector default_start, double fd_step = kDefaultFdStep);

  static constexpr double kDefaultFdStep = 1e-6;

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Vector& default_start() const { return default_start_; }
  /// Relative central-difference step suited to this function's scale.
  double fd_step() const { return fd_step_; }

  double value(const Vector& x) const { return value_(x); }
  Vector gradient(const Vector& x) const { return gradient_(x); }

 private:
  std::string name_;
  int dim_;
  ValueFn value_;
  GradientFn gradient_;
  Vector default_start_;
  double fd_step_;
};

/// Thrown when a dimension does not fit a function's block structure.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by check_gradient when f or g is not finite.
class GradientCheckError : public std::runtime_error {
 public:
  GradientCheckError(const std::string& what, int index)
      : std::runtime_error(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

inline constexpr int kDefaultDimension = 1000;

/// Names of every registered function, in registry order.
const std::vector<std::string>& problem_names();

/// Builds one registered function at dimension n. Throws std::out_of_range
/// for unknown names and DimensionError for incompatible n.
ObjectiveFunction make_problem(const std::string& name, int n = kDefaultDimension);

/// All registered functions at dimension n.
std::vector<ObjectiveFunction> registry(int n = kDefaultDimension);

/// f(x) = 0.5 * sum_i lambda_i x_i^2 with lambda log-spaced on [1, cond].
/// Minimizer is the origin; default start is all ones.
ObjectiveFunction diagonal_quadratic(int n, double cond);

/// Max over i of |central difference - g_i| / (1 + |g_i|). The step for
/// coordinate i is h * (1 + |x_i|); h defaults to fn.fd_step().
double check_gradient(const ObjectiveFunction& fn, const Vector& x,
                      std::optional<double> h = std::nullopt);

/// Default start plus `count` seeded perturbations of it.
std::vector<Vector> gradient_check_points(const ObjectiveFunction& fn, int count,
                                          std::uint64_t seed);

inline constexpr std::uint64_t kPerturbationSeed = 20190417;

}  // namespace gmaos
