#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "momdwa/benchmarks.hpp"
#include "momdwa/config.hpp"
#include "momdwa/errors.hpp"
#include "momdwa/objectives.hpp"
#include "momdwa/optimizer.hpp"
#include "momdwa/topsis.hpp"

namespace momdwa {

/// Full decimal precision so files round-trip and reruns compare byte-equal.
inline std::string format_value(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

inline std::vector<std::string> objective_names(const RunConfig& config) {
  if (!is_quantum(*config.problem)) return {"f1", "f2"};
  if (config.objectives == 2) return {"deviation", "energy"};
  return {"deviation", "energy", "smoothness"};
}

struct RunSummary {
  RunConfig config;
  std::size_t repository_size = 0;
  Particle selected;
  DecisionReport report;
  std::size_t selected_repository_row = 0;
  std::vector<HistoryRow> history;
  double duration_seconds = 0.0;
  std::filesystem::path output_dir;
};

namespace detail {

constexpr char k_column_separator = '\t';

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

inline void write_row(std::ofstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << k_column_separator;
    out << cells[i];
  }
  out << '\n';
}

inline void write_pareto_front(const std::filesystem::path& path, const Repository& repository,
                               const std::vector<std::string>& names) {
  auto out = open_output(path);
  std::vector<std::string> header = names;
  header.push_back("fidelity");
  write_row(out, header);
  for (const auto& member : repository.members()) {
    std::vector<std::string> row;
    for (double v : member.objectives) row.push_back(format_value(v));
    row.push_back(format_value(member.fidelity));
    write_row(out, row);
  }
}

inline void write_pareto_set(const std::filesystem::path& path, const Repository& repository) {
  auto out = open_output(path);
  const std::size_t dimension =
      repository.empty() ? 0 : repository.members().front().position.size();
  std::vector<std::string> header;
  for (std::size_t j = 0; j < dimension; ++j) header.push_back("x_" + std::to_string(j));
  write_row(out, header);
  for (const auto& member : repository.members()) {
    std::vector<std::string> row;
    for (double v : member.position) row.push_back(format_value(v));
    write_row(out, row);
  }
}

inline void write_history(const std::filesystem::path& path,
                          const std::vector<HistoryRow>& history,
                          const std::vector<std::string>& names) {
  auto out = open_output(path);
  std::vector<std::string> header{"generation", "repository_size"};
  for (const auto& name : names) header.push_back("min_" + name);
  header.push_back("best_fidelity");
  write_row(out, header);
  for (const auto& row : history) {
    std::vector<std::string> cells{std::to_string(row.generation),
                                   std::to_string(row.repository_size)};
    for (double v : row.objective_min) cells.push_back(format_value(v));
    cells.push_back(format_value(row.best_fidelity));
    write_row(out, cells);
  }
}

inline void write_best_controls(const std::filesystem::path& path,
                                const quantum::ControlProblem& problem,
                                const quantum::FineControls& fine) {
  auto out = open_output(path);
  std::vector<std::string> header{"t"};
  for (int m = 1; m <= problem.num_controls; ++m) header.push_back("u_" + std::to_string(m));
  for (int m = 1; m <= problem.num_controls; ++m) header.push_back("U_" + std::to_string(m));
  write_row(out, header);
  for (std::size_t k = 0; k < fine.points(); ++k) {
    std::vector<std::string> row{format_value(fine.times[k])};
    for (int m = 0; m < problem.num_controls; ++m)
      row.push_back(format_value(fine.values[m][k]));
    for (int m = 0; m < problem.num_controls; ++m)
      row.push_back(format_value(std::abs(fine.values[m][k]) * problem.control_norms[m]));
    write_row(out, row);
  }
}

inline void write_trajectory(const std::filesystem::path& path,
                             const quantum::Trajectory& euler,
                             const quantum::Trajectory& oracle) {
  auto out = open_output(path);
  const auto dimension = euler.states.front().size();
  std::vector<std::string> header{"t"};
  for (Eigen::Index i = 0; i < dimension; ++i) {
    header.push_back("euler_re_" + std::to_string(i));
    header.push_back("euler_im_" + std::to_string(i));
  }
  for (Eigen::Index i = 0; i < dimension; ++i) {
    header.push_back("oracle_re_" + std::to_string(i));
    header.push_back("oracle_im_" + std::to_string(i));
  }
  write_row(out, header);
  for (std::size_t k = 0; k < euler.times.size(); ++k) {
    std::vector<std::string> row{format_value(euler.times[k])};
    for (Eigen::Index i = 0; i < dimension; ++i) {
      row.push_back(format_value(euler.states[k](i).real()));
      row.push_back(format_value(euler.states[k](i).imag()));
    }
    for (Eigen::Index i = 0; i < dimension; ++i) {
      row.push_back(format_value(oracle.states[k](i).real()));
      row.push_back(format_value(oracle.states[k](i).imag()));
    }
    write_row(out, row);
  }
}

inline void write_summary(const std::filesystem::path& path, const RunSummary& summary) {
  auto out = open_output(path);
  const RunConfig& config = summary.config;
  auto emit = [&](const std::string& key, const std::string& value) {
    out << key << " = " << value << '\n';
  };

  emit("problem", to_string(*config.problem));
  emit("objectives", std::to_string(config.objectives));
  emit("seed", std::to_string(*config.seed));
  emit("alpha", std::to_string(config.alpha));
  emit("epsilon_fidelity", format_value(config.epsilon_fidelity));
  {
    std::string weights;
    for (std::size_t i = 0; i < config.topsis_weights.size(); ++i)
      weights += (i ? " " : "") + format_value(config.topsis_weights[i]);
    emit("topsis_weights", weights);
  }
  emit("population", std::to_string(config.optimizer.population_size));
  emit("generations", std::to_string(config.optimizer.max_generations));
  emit("capacity", std::to_string(config.optimizer.repository_capacity));
  emit("threshold", format_value(config.optimizer.threshold));
  emit("bb_low", format_value(config.optimizer.bb_low));
  emit("bb_high", format_value(config.optimizer.bb_high));
  emit("gg_low", format_value(config.optimizer.gg_low));
  emit("gg_high", format_value(config.optimizer.gg_high));
  emit("amplitude", format_value(config.optimizer.amplitude_a));
  emit("decay_base", format_value(config.optimizer.decay_base));

  if (is_quantum(*config.problem)) {
    emit("T", format_value(config.physics.total_time));
    emit("control_lower", format_value(config.physics.control_lower));
    emit("control_upper", format_value(config.physics.control_upper));
    emit("matrix_norm",
         config.physics.matrix_norm == quantum::MatrixNorm::Frobenius ? "frobenius"
                                                                      : "spectral");
    if (*config.problem == ProblemKind::Q1) {
      emit("q1_epsilon", format_value(config.physics.q1_epsilon));
      emit("q1_theta0", format_value(config.physics.q1_theta0));
    } else if (*config.problem == ProblemKind::Q2) {
      std::string theta;
      for (std::size_t i = 0; i < config.physics.q2_theta.size(); ++i)
        theta += (i ? " " : "") + format_value(config.physics.q2_theta[i]);
      emit("q2_theta", theta);
    } else {
      emit("q3_omega_a1", format_value(config.physics.q3_omega_a1));
      emit("q3_omega_a2", format_value(config.physics.q3_omega_a2));
      emit("q3_omega_r", format_value(config.physics.q3_omega_r));
      emit("q3_coupling_12", format_value(config.physics.q3_coupling_12));
      emit("q3_coupling_21", format_value(config.physics.q3_coupling_21));
      emit("q3_nu1", format_value(config.physics.q3_nu1));
      emit("q3_nu2", format_value(config.physics.q3_nu2));
    }
  }

  emit("repository_size", std::to_string(summary.repository_size));
  emit("screened_count", std::to_string(summary.report.screened_count));
  {
    std::string scores;
    for (std::size_t i = 0; i < summary.report.scores.size(); ++i)
      scores += (i ? " " : "") + format_value(summary.report.scores[i]);
    emit("topsis_scores", scores);
  }
  emit("selected_index", std::to_string(summary.report.selected_index));
  emit("selected_repository_row", std::to_string(summary.selected_repository_row));
  const auto names = objective_names(config);
  for (std::size_t k = 0; k < names.size(); ++k)
    emit("selected_" + names[k], format_value(summary.selected.objectives[k]));
  emit("selected_fidelity", format_value(summary.selected.fidelity));
  // Kept last: the only line that differs between identical reruns.
  emit("duration_seconds", format_value(summary.duration_seconds));
}

}  // namespace detail

/// Execute one configured run end to end: optimize, decide, and write the
/// result files (pareto_front, pareto_set, history, summary, and for quantum
/// problems best_controls and trajectory). Partial outputs are removed when
/// anything fails.
inline RunSummary run(const RunConfig& config_in) {
  RunConfig config = config_in;
  config.finalize_and_validate();

  const auto started = std::chrono::steady_clock::now();

  std::optional<QuantumBundle> bundle;
  OptimizeResult result = [&] {
    switch (*config.problem) {
      case ProblemKind::Schaffer:
        return optimize(SchafferProblem{}, config.optimizer, *config.seed);
      case ProblemKind::Fonseca:
        return optimize(FonsecaProblem{}, config.optimizer, *config.seed);
      default:
        bundle.emplace(build_problem(config), config.objectives, config.alpha);
        return optimize(*bundle, config.optimizer, *config.seed);
    }
  }();

  const Selection selection =
      select_best(result.repository, TopsisWeights{config.topsis_weights},
                  config.epsilon_fidelity);

  RunSummary summary;
  summary.config = config;
  summary.repository_size = result.repository.size();
  summary.selected = selection.particle;
  summary.report = selection.report;
  summary.selected_repository_row = selection.repository_index;
  summary.history = std::move(result.history);
  summary.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  summary.output_dir = config.output_dir;

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + config.output_dir.string() + "'");

  std::vector<std::filesystem::path> written;
  auto track = [&](const char* name) {
    written.push_back(config.output_dir / name);
    return written.back();
  };
  try {
    const auto names = objective_names(config);
    detail::write_pareto_front(track("pareto_front.tsv"), result.repository, names);
    detail::write_pareto_set(track("pareto_set.tsv"), result.repository);
    detail::write_history(track("history.tsv"), summary.history, names);
    if (bundle.has_value()) {
      const auto fine = quantum::upsample_controls(
          bundle->problem(), selection.particle.position, config.alpha);
      detail::write_best_controls(track("best_controls.tsv"), bundle->problem(), fine);
      const auto euler = quantum::propagate_euler(bundle->problem(), fine);
      const auto oracle = quantum::propagate_expm_oracle(bundle->problem(), fine);
      detail::write_trajectory(track("trajectory.tsv"), euler, oracle);
    }
    detail::write_summary(track("summary.txt"), summary);
  } catch (...) {
    for (const auto& path : written) std::filesystem::remove(path, ec);
    throw;
  }

  return summary;
}

/// Parse a summary.txt back into key -> value.
inline std::map<std::string, std::string> read_summary(const std::filesystem::path& run_dir) {
  const auto path = run_dir / "summary.txt";
  std::ifstream input(path);
  if (!input) throw IoError("report: cannot open '" + path.string() + "'");
  std::map<std::string, std::string> values;
  std::string line;
  while (std::getline(input, line)) {
    const auto equals = line.find('=');
    if (equals == std::string::npos) continue;
    values[detail::trim(line.substr(0, equals))] = detail::trim(line.substr(equals + 1));
  }
  return values;
}

namespace detail {

struct PaperReference {
  const char* fidelity;
  const char* energy;
  const char* smoothness;  // nullptr for bi-objective rows
};

inline std::optional<PaperReference> paper_reference(ProblemKind kind, int objectives) {
  if (kind == ProblemKind::Q1 && objectives == 2)
    return PaperReference{"9.99977E-01", "2.98414E+00", nullptr};
  if (kind == ProblemKind::Q2 && objectives == 2)
    return PaperReference{"9.99902E-01", "5.44407E+00", nullptr};
  if (kind == ProblemKind::Q3 && objectives == 2)
    return PaperReference{"9.99241E-01", "8.51772E+01", nullptr};
  if (kind == ProblemKind::Q1 && objectives == 3)
    return PaperReference{"9.99690E-01", "4.14350E+00", "7.56408E+00"};
  if (kind == ProblemKind::Q2 && objectives == 3)
    return PaperReference{"9.99573E-01", "5.58225E+00", "1.94418E+01"};
  if (kind == ProblemKind::Q3 && objectives == 3)
    return PaperReference{"9.98809E-01", "5.05166E+01", "8.87840E+01"};
  return std::nullopt;
}

}  // namespace detail

/// Print the TOPSIS-selected solution of a completed run, next to the
/// published reference values for the same problem where they exist.
inline void report(const std::filesystem::path& run_dir, std::ostream& out) {
  const auto summary = read_summary(run_dir);
  auto required = [&](const std::string& key) -> const std::string& {
    auto it = summary.find(key);
    if (it == summary.end())
      throw IoError("report: summary is missing key '" + key + "'");
    return it->second;
  };

  const ProblemKind kind = problem_from_string(required("problem"));
  const int objectives = std::stoi(required("objectives"));
  const auto reference = detail::paper_reference(kind, objectives);

  out << "run: " << required("problem") << "  objectives: " << objectives
      << "  seed: " << required("seed") << '\n';
  char line[160];
  if (reference.has_value()) {
    std::snprintf(line, sizeof(line), "%-12s %-26s %s\n", "quantity", "this run",
                  "paper reference (non-binding)");
    out << line;
    auto print = [&](const char* name, const std::string& mine, const char* ref) {
      std::snprintf(line, sizeof(line), "%-12s %-26s %s\n", name, mine.c_str(), ref);
      out << line;
    };
    print("fidelity", required("selected_fidelity"), reference->fidelity);
    print("energy", required("selected_energy"), reference->energy);
    if (objectives == 3)
      print("smoothness", required("selected_smoothness"), reference->smoothness);
    out << "deviation    " << required("selected_deviation") << '\n';
  } else {
    std::snprintf(line, sizeof(line), "%-12s %s\n", "quantity", "this run");
    out << line;
    std::snprintf(line, sizeof(line), "%-12s %s\n", "f1", required("selected_f1").c_str());
    out << line;
    std::snprintf(line, sizeof(line), "%-12s %s\n", "f2", required("selected_f2").c_str());
    out << line;
  }
  out << "repository_size: " << required("repository_size")
      << "  screened: " << required("screened_count") << '\n';
}

}  // namespace momdwa
