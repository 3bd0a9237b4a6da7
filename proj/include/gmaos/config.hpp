#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

namespace gmaos {

/// Every tunable constant of the gradient method, the line search and the
/// stopping rules. Defaults are the published experimental settings.
struct SolverConfig {
  // stopping
  double epsilon = 1e-6;  // on ||g||_inf
  long max_iter = 140000;
  long max_feval = 50000;

  // stepsize clamp
  double lambda_min = 1e-30;
  double lambda_max = 1e30;

  // line search
  double sigma = 1e-4;
  double eta_min = 1.0;
  double eta_max = 1.0;
  int max_backtracks = 60;

  // stepsize models
  double delta = 10.0;
  double xi1 = 2.15;
  double xi2 = 1.07;
  double xi3 = 0.9;
  double eta_bar = 5.0 / 3.0 * 1e-5;
  double c1 = 1e-8;
  double c2 = 0.07;

  // finite-difference probe offset: max(min(tau_factor * alpha_prev, tau_cap), tau_floor)
  double tau_factor = 0.1;
  double tau_cap = 0.01;
  double tau_floor = 1e-12;

  bool operator==(const SolverConfig&) const = default;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws ConfigError when a value is out of its admissible range.
void validate(const SolverConfig& cfg);

/// Sets one field by key. Throws ConfigError for unknown keys or unparsable values.
void set_config_value(SolverConfig& cfg, const std::string& key, const std::string& value);

/// Flat `key=value` text; blank lines and lines starting with '#' are ignored.
void apply_config_text(SolverConfig& cfg, std::istream& in);
void apply_config_file(SolverConfig& cfg, const std::string& path);

/// Writes every field as `key=value`, one per line, with round-trip precision.
void dump_config(const SolverConfig& cfg, std::ostream& out);

}  // namespace gmaos
