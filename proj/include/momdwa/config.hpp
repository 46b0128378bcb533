#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "momdwa/errors.hpp"
#include "momdwa/optimizer.hpp"
#include "momdwa/quantum/problems.hpp"
#include "momdwa/topsis.hpp"

namespace momdwa {

enum class ProblemKind { Q1, Q2, Q3, Schaffer, Fonseca };

inline std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Q1: return "q1";
    case ProblemKind::Q2: return "q2";
    case ProblemKind::Q3: return "q3";
    case ProblemKind::Schaffer: return "schaffer";
    case ProblemKind::Fonseca: return "fonseca";
  }
  throw InternalError("unknown problem kind");
}

inline ProblemKind problem_from_string(const std::string& name) {
  if (name == "q1") return ProblemKind::Q1;
  if (name == "q2") return ProblemKind::Q2;
  if (name == "q3") return ProblemKind::Q3;
  if (name == "schaffer") return ProblemKind::Schaffer;
  if (name == "fonseca") return ProblemKind::Fonseca;
  throw ConfigError("unknown problem '" + name + "' (expected q1|q2|q3|schaffer|fonseca)");
}

inline bool is_quantum(ProblemKind kind) {
  return kind == ProblemKind::Q1 || kind == ProblemKind::Q2 || kind == ProblemKind::Q3;
}

/// Physical constants and horizon shared by the problem builders. Values the
/// source material leaves open carry the documented defaults.
struct PhysicsConfig {
  double total_time = 1.0;
  double control_lower = -5.0;
  double control_upper = 5.0;
  quantum::MatrixNorm matrix_norm = quantum::MatrixNorm::Frobenius;
  double q1_epsilon = 0.1;
  double q1_theta0 = 0.0;
  std::array<double, 5> q2_theta{1.0, 1.0, 1.0, 1.0, 1.0};
  double q3_omega_a1 = 1.0;
  double q3_omega_a2 = 1.0;
  double q3_omega_r = 1.0;
  double q3_coupling_12 = 0.1;
  double q3_coupling_21 = 0.1;
  double q3_nu1 = 0.1;
  double q3_nu2 = 0.1;
};

struct RunConfig {
  std::optional<ProblemKind> problem;
  int objectives = 2;
  std::optional<std::uint64_t> seed;
  MomdwaParams optimizer;
  int alpha = 30;
  double epsilon_fidelity = 0.995;
  std::vector<double> topsis_weights;  // empty = defaulted by objective count
  PhysicsConfig physics;
  std::filesystem::path output_dir;  // empty = derived from problem and seed

  std::size_t topsis_columns() const {
    return is_quantum(*problem) ? static_cast<std::size_t>(objectives) : 2u;
  }

  /// Fill derived defaults and check every invariant; throws ConfigError
  /// naming the offending setting.
  void finalize_and_validate() {
    if (!problem.has_value())
      throw ConfigError("run.problem is required (q1|q2|q3|schaffer|fonseca)");
    if (!seed.has_value())
      throw ConfigError("run.seed is required; runs are never seeded from the clock");
    if (objectives != 2 && objectives != 3)
      throw ConfigError("run.objectives must be 2 or 3");
    if (!is_quantum(*problem) && objectives != 2)
      throw ConfigError("run.objectives: benchmark problems are two-objective");
    if (alpha < 1) throw ConfigError("run.alpha must be >= 1");
    if (!(epsilon_fidelity >= 0.0 && epsilon_fidelity <= 1.0))
      throw ConfigError("run.epsilon_fidelity must lie in [0, 1]");
    optimizer.validate();
    if (!(physics.total_time > 0.0)) throw ConfigError("problem.T must be positive");
    if (!(physics.control_lower <= physics.control_upper))
      throw ConfigError("problem.control_lower must not exceed problem.control_upper");

    if (topsis_weights.empty()) {
      topsis_weights = topsis_columns() == 2 ? std::vector<double>{0.7, 0.3}
                                             : std::vector<double>{0.6, 0.2, 0.2};
    }
    TopsisWeights{topsis_weights}.validate(topsis_columns());

    if (output_dir.empty())
      output_dir = std::filesystem::path("runs") /
                   (to_string(*problem) + "-seed" + std::to_string(*seed));
  }
};

namespace detail {

inline std::string trim(const std::string& text) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

/// Flat key-value document with [section] headers, # or ; comments.
/// Returns "section.key" -> value.
inline std::map<std::string, std::string> parse_key_values(const std::filesystem::path& path) {
  std::ifstream input(path);
  if (!input) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::map<std::string, std::string> entries;
  std::string line, section;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (const auto hash = line.find_first_of("#;"); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_number) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto equals = line.find('=');
    if (equals == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, equals));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_number) + ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (entries.count(full))
      throw ConfigError("config: duplicate key '" + full + "'");
    entries[full] = trim(line.substr(equals + 1));
  }
  return entries;
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
}

inline long long parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  }
}

inline std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t parsed = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value +
                      "' as an unsigned 64-bit integer");
  }
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::istringstream stream(value);
  std::vector<double> numbers;
  std::string token;
  while (stream >> token) numbers.push_back(parse_double(key, token));
  if (numbers.empty())
    throw ConfigError("config key '" + key + "': expected at least one number");
  return numbers;
}

}  // namespace detail

/// Parse a config file into a RunConfig. Unknown keys are an error; callers
/// apply command-line overrides afterwards and then finalize_and_validate().
inline RunConfig load_config(const std::filesystem::path& path) {
  auto entries = detail::parse_key_values(path);
  RunConfig config;

  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    std::string value = it->second;
    entries.erase(it);
    return value;
  };

  if (auto v = take("run.problem")) config.problem = problem_from_string(*v);
  if (auto v = take("run.objectives"))
    config.objectives = static_cast<int>(detail::parse_integer("run.objectives", *v));
  if (auto v = take("run.seed")) config.seed = detail::parse_seed("run.seed", *v);
  if (auto v = take("run.out")) config.output_dir = *v;
  if (auto v = take("run.alpha"))
    config.alpha = static_cast<int>(detail::parse_integer("run.alpha", *v));
  if (auto v = take("run.epsilon_fidelity"))
    config.epsilon_fidelity = detail::parse_double("run.epsilon_fidelity", *v);

  auto take_size = [&](const char* key, std::size_t& out) {
    if (auto v = take(key)) {
      const long long parsed = detail::parse_integer(key, *v);
      if (parsed < 0) throw ConfigError(std::string("config key '") + key + "': must be >= 0");
      out = static_cast<std::size_t>(parsed);
    }
  };
  auto take_double = [&](const char* key, double& out) {
    if (auto v = take(key)) out = detail::parse_double(key, *v);
  };

  take_size("optimizer.population", config.optimizer.population_size);
  take_size("optimizer.generations", config.optimizer.max_generations);
  take_size("optimizer.capacity", config.optimizer.repository_capacity);
  take_double("optimizer.threshold", config.optimizer.threshold);
  take_double("optimizer.bb_low", config.optimizer.bb_low);
  take_double("optimizer.bb_high", config.optimizer.bb_high);
  take_double("optimizer.gg_low", config.optimizer.gg_low);
  take_double("optimizer.gg_high", config.optimizer.gg_high);
  take_double("optimizer.amplitude", config.optimizer.amplitude_a);
  take_double("optimizer.decay_base", config.optimizer.decay_base);

  if (auto v = take("topsis.weights"))
    config.topsis_weights = detail::parse_double_list("topsis.weights", *v);

  take_double("problem.T", config.physics.total_time);
  take_double("problem.control_lower", config.physics.control_lower);
  take_double("problem.control_upper", config.physics.control_upper);
  if (auto v = take("problem.matrix_norm")) {
    if (*v == "frobenius")
      config.physics.matrix_norm = quantum::MatrixNorm::Frobenius;
    else if (*v == "spectral")
      config.physics.matrix_norm = quantum::MatrixNorm::Spectral;
    else
      throw ConfigError("config key 'problem.matrix_norm': expected frobenius or spectral");
  }
  take_double("problem.q1_epsilon", config.physics.q1_epsilon);
  take_double("problem.q1_theta0", config.physics.q1_theta0);
  if (auto v = take("problem.q2_theta")) {
    const auto numbers = detail::parse_double_list("problem.q2_theta", *v);
    if (numbers.size() != 5)
      throw ConfigError("config key 'problem.q2_theta': expected 5 numbers");
    std::copy(numbers.begin(), numbers.end(), config.physics.q2_theta.begin());
  }
  take_double("problem.q3_omega_a1", config.physics.q3_omega_a1);
  take_double("problem.q3_omega_a2", config.physics.q3_omega_a2);
  take_double("problem.q3_omega_r", config.physics.q3_omega_r);
  take_double("problem.q3_coupling_12", config.physics.q3_coupling_12);
  take_double("problem.q3_coupling_21", config.physics.q3_coupling_21);
  take_double("problem.q3_nu1", config.physics.q3_nu1);
  take_double("problem.q3_nu2", config.physics.q3_nu2);

  if (!entries.empty())
    throw ConfigError("config: unknown key '" + entries.begin()->first + "'");
  return config;
}

/// Instantiate the configured quantum control problem.
inline quantum::ControlProblem build_problem(const RunConfig& config) {
  const PhysicsConfig& ph = config.physics;
  switch (*config.problem) {
    case ProblemKind::Q1:
      return quantum::build_q1({ph.total_time, ph.control_lower, ph.control_upper,
                                ph.q1_epsilon, ph.q1_theta0, ph.matrix_norm});
    case ProblemKind::Q2:
      return quantum::build_q2(
          {ph.total_time, ph.control_lower, ph.control_upper, ph.q2_theta, ph.matrix_norm});
    case ProblemKind::Q3:
      return quantum::build_q3({ph.total_time, ph.control_lower, ph.control_upper,
                                ph.q3_omega_a1, ph.q3_omega_a2, ph.q3_omega_r,
                                ph.q3_coupling_12, ph.q3_coupling_21, ph.q3_nu1, ph.q3_nu2,
                                ph.matrix_norm});
    default:
      throw InternalError("build_problem: not a quantum problem");
  }
}

}  // namespace momdwa
