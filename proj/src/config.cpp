#include "gmaos/config.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

namespace gmaos {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (in.fail() || !(in >> std::ws).eof())
    throw ConfigError("config: cannot parse value '" + text + "' for key '" + key + "'");
  return value;
}

struct Field {
  std::string key;
  std::function<void(SolverConfig&, const std::string&)> set;
  std::function<std::string(const SolverConfig&)> get;
};

template <typename T>
Field make_field(std::string key, T SolverConfig::*member) {
  return Field{key,
               [key, member](SolverConfig& c, const std::string& v) {
                 c.*member = parse_number<T>(key, v);
               },
               [member](const SolverConfig& c) {
                 std::ostringstream out;
                 out << std::setprecision(17) << c.*member;
                 return out.str();
               }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      make_field("epsilon", &SolverConfig::epsilon),
      make_field("max_iter", &SolverConfig::max_iter),
      make_field("max_feval", &SolverConfig::max_feval),
      make_field("lambda_min", &SolverConfig::lambda_min),
      make_field("lambda_max", &SolverConfig::lambda_max),
      make_field("sigma", &SolverConfig::sigma),
      make_field("eta_min", &SolverConfig::eta_min),
      make_field("eta_max", &SolverConfig::eta_max),
      make_field("max_backtracks", &SolverConfig::max_backtracks),
      make_field("delta", &SolverConfig::delta),
      make_field("xi1", &SolverConfig::xi1),
      make_field("xi2", &SolverConfig::xi2),
      make_field("xi3", &SolverConfig::xi3),
      make_field("eta_bar", &SolverConfig::eta_bar),
      make_field("c1", &SolverConfig::c1),
      make_field("c2", &SolverConfig::c2),
      make_field("tau_factor", &SolverConfig::tau_factor),
      make_field("tau_cap", &SolverConfig::tau_cap),
      make_field("tau_floor", &SolverConfig::tau_floor),
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError("config: " + message);
}

}  // namespace

void validate(const SolverConfig& c) {
  require(c.epsilon > 0, "epsilon must be positive");
  require(c.max_iter >= 0, "max_iter must be nonnegative");
  require(c.max_feval >= 1, "max_feval must be positive");
  require(c.lambda_min > 0 && c.lambda_min < c.lambda_max, "need 0 < lambda_min < lambda_max");
  require(c.sigma > 0 && c.sigma < 1, "sigma must lie in (0, 1)");
  require(c.eta_min >= 0 && c.eta_min <= c.eta_max && c.eta_max <= 1,
          "need 0 <= eta_min <= eta_max <= 1");
  require(c.max_backtracks >= 1, "max_backtracks must be positive");
  require(c.delta > 0, "delta must be positive");
  require(c.xi1 >= 1, "xi1 must be >= 1");
  require(c.xi2 >= 1, "xi2 must be >= 1");
  require(c.xi3 > 0, "xi3 must be positive");
  require(c.eta_bar > 0 && c.eta_bar < 0.1, "eta_bar must lie in (0, 0.1)");
  require(c.c1 > 0 && c.c1 < c.c2, "need 0 < c1 < c2");
  require(c.tau_factor > 0 && c.tau_cap > 0 && c.tau_floor > 0, "tau rule constants must be positive");
}

void set_config_value(SolverConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& field : fields()) {
    if (field.key == key) {
      field.set(cfg, value);
      return;
    }
  }
  throw ConfigError("config: unknown key '" + key + "'");
}

void apply_config_text(SolverConfig& cfg, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value");
    set_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_config_file(SolverConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  apply_config_text(cfg, in);
}

void dump_config(const SolverConfig& cfg, std::ostream& out) {
  for (const auto& field : fields()) out << field.key << '=' << field.get(cfg) << '\n';
}

}  // namespace gmaos
