#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "momdwa/benchmarks.hpp"
#include "momdwa/config.hpp"
#include "momdwa/objectives.hpp"
#include "momdwa/run.hpp"

using namespace momdwa;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name)
      : path(fs::temp_directory_path() / ("momdwa_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  return path;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string strip_duration_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("duration_seconds", 0) != 0) out += line + "\n";
  return out;
}

std::vector<std::vector<double>> read_table(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::vector<double> row;
    double value;
    while (cells >> value) row.push_back(value);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("config loading") {
  ScratchDir scratch("config");

  SECTION("empty file plus a problem override yields the documented defaults") {
    const auto path = write_file(scratch.path / "empty.ini", "");
    RunConfig config = load_config(path);
    config.problem = ProblemKind::Q1;
    config.seed = 7;
    config.finalize_and_validate();
    REQUIRE(config.optimizer.population_size == 100);
    REQUIRE(config.optimizer.repository_capacity == 100);
    REQUIRE(config.optimizer.max_generations == 500);
    REQUIRE(config.alpha == 30);
    REQUIRE(config.epsilon_fidelity == 0.995);
    REQUIRE(config.topsis_weights == std::vector<double>{0.7, 0.3});
    const QuantumBundle bundle(build_problem(config), config.objectives, config.alpha);
    REQUIRE(bundle.dimension() == 40);
  }

  SECTION("three objectives default to the three-way weights") {
    const auto path = write_file(scratch.path / "tri.ini",
                                 "[run]\nproblem = q2\nobjectives = 3\nseed = 1\n");
    RunConfig config = load_config(path);
    config.finalize_and_validate();
    REQUIRE(config.topsis_weights == std::vector<double>{0.6, 0.2, 0.2});
  }

  SECTION("mismatched weight count is a configuration error") {
    const auto path = write_file(
        scratch.path / "badweights.ini",
        "[run]\nproblem = q1\nobjectives = 3\nseed = 1\n[topsis]\nweights = 0.7 0.3\n");
    RunConfig config = load_config(path);
    REQUIRE_THROWS_AS(config.finalize_and_validate(), ConfigError);
  }

  SECTION("a missing seed is a configuration error") {
    const auto path = write_file(scratch.path / "noseed.ini", "[run]\nproblem = q1\n");
    RunConfig config = load_config(path);
    REQUIRE_THROWS_AS(config.finalize_and_validate(), ConfigError);
  }

  SECTION("unknown keys are rejected by name") {
    const auto path = write_file(scratch.path / "typo.ini",
                                 "[optimizer]\npopulaton = 50\n");
    try {
      load_config(path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& error) {
      REQUIRE(std::string(error.what()).find("optimizer.populaton") != std::string::npos);
    }
  }

  SECTION("sections, comments and vector values parse") {
    const auto path = write_file(scratch.path / "full.ini",
                                 "# comment\n"
                                 "[run]\n"
                                 "problem = q2\n"
                                 "seed = 42      ; inline comment\n"
                                 "[optimizer]\n"
                                 "population = 64\n"
                                 "threshold = 0.05\n"
                                 "[problem]\n"
                                 "q2_theta = 1 0.9 1.1 1 1\n");
    RunConfig config = load_config(path);
    config.finalize_and_validate();
    REQUIRE(config.optimizer.population_size == 64);
    REQUIRE(config.optimizer.threshold == 0.05);
    REQUIRE(config.physics.q2_theta[1] == 0.9);
    REQUIRE(*config.seed == 42);
  }

  SECTION("benchmarks reject three objectives") {
    const auto path = write_file(scratch.path / "bench3.ini",
                                 "[run]\nproblem = schaffer\nobjectives = 3\nseed = 1\n");
    RunConfig config = load_config(path);
    REQUIRE_THROWS_AS(config.finalize_and_validate(), ConfigError);
  }
}

TEST_CASE("benchmark run writes coherent outputs") {
  ScratchDir scratch("run_schaffer");
  RunConfig config;
  config.problem = ProblemKind::Schaffer;
  config.seed = 11;
  config.optimizer.population_size = 30;
  config.optimizer.max_generations = 40;
  config.optimizer.repository_capacity = 50;
  config.output_dir = scratch.path / "out";

  const RunSummary summary = run(config);
  REQUIRE(fs::exists(config.output_dir / "pareto_front.tsv"));
  REQUIRE(fs::exists(config.output_dir / "pareto_set.tsv"));
  REQUIRE(fs::exists(config.output_dir / "history.tsv"));
  REQUIRE(fs::exists(config.output_dir / "summary.txt"));
  REQUIRE_FALSE(fs::exists(config.output_dir / "best_controls.tsv"));
  REQUIRE_FALSE(fs::exists(config.output_dir / "trajectory.tsv"));

  const auto front = read_table(config.output_dir / "pareto_front.tsv");
  const auto positions = read_table(config.output_dir / "pareto_set.tsv");
  REQUIRE(front.size() == summary.repository_size);
  REQUIRE(positions.size() == front.size());

  SECTION("round trip: re-evaluating pareto_set reproduces pareto_front") {
    const SchafferProblem problem;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      const Evaluation evaluation = problem.evaluate(positions[i]);
      REQUIRE(evaluation.objectives[0] == Catch::Approx(front[i][0]).margin(1e-9));
      REQUIRE(evaluation.objectives[1] == Catch::Approx(front[i][1]).margin(1e-9));
    }
  }

  SECTION("the selected solution appears in the front file") {
    bool found = false;
    for (const auto& row : front)
      found = found || (row[0] == summary.selected.objectives[0] &&
                        row[1] == summary.selected.objectives[1]);
    REQUIRE(found);
    REQUIRE(summary.selected_repository_row < front.size());
  }

  SECTION("history minima never increase") {
    const auto history = read_table(config.output_dir / "history.tsv");
    REQUIRE(history.size() == config.optimizer.max_generations + 1);
    for (std::size_t row = 1; row < history.size(); ++row) {
      REQUIRE(history[row][2] <= history[row - 1][2] + 1e-12);
      REQUIRE(history[row][3] <= history[row - 1][3] + 1e-12);
    }
  }

  SECTION("rerunning the same config is byte-identical") {
    RunConfig again = config;
    again.output_dir = scratch.path / "out2";
    run(again);
    REQUIRE(read_file(config.output_dir / "pareto_front.tsv") ==
            read_file(again.output_dir / "pareto_front.tsv"));
    REQUIRE(read_file(config.output_dir / "pareto_set.tsv") ==
            read_file(again.output_dir / "pareto_set.tsv"));
    REQUIRE(strip_duration_line(read_file(config.output_dir / "summary.txt")) ==
            strip_duration_line(read_file(again.output_dir / "summary.txt")));
  }
}

TEST_CASE("quantum run writes control and trajectory files") {
  ScratchDir scratch("run_q1");
  RunConfig config;
  config.problem = ProblemKind::Q1;
  config.seed = 3;
  config.optimizer.population_size = 16;
  config.optimizer.max_generations = 5;
  config.optimizer.repository_capacity = 30;
  config.alpha = 10;
  config.output_dir = scratch.path / "out";

  const RunSummary summary = run(config);
  REQUIRE(fs::exists(config.output_dir / "best_controls.tsv"));
  REQUIRE(fs::exists(config.output_dir / "trajectory.tsv"));

  const auto controls = read_table(config.output_dir / "best_controls.tsv");
  REQUIRE(controls.size() == 101);           // alpha*N + 1 rows
  REQUIRE(controls.front().size() == 9);     // t + 4 controls + 4 weighted controls
  const auto trajectory = read_table(config.output_dir / "trajectory.tsv");
  REQUIRE(trajectory.size() == 101);
  REQUIRE(trajectory.front().size() == 13);  // t + 2*3 euler + 2*3 oracle columns

  SECTION("round trip through evaluate_quantum") {
    const auto front = read_table(config.output_dir / "pareto_front.tsv");
    const auto positions = read_table(config.output_dir / "pareto_set.tsv");
    const auto problem = build_problem(config);
    for (std::size_t i = 0; i < positions.size(); ++i) {
      const auto record = evaluate_quantum(positions[i], problem, 2, config.alpha);
      REQUIRE(record.objectives[0] == Catch::Approx(front[i][0]).margin(1e-9));
      REQUIRE(record.objectives[1] == Catch::Approx(front[i][1]).margin(1e-9));
      REQUIRE(record.fidelity == Catch::Approx(front[i][2]).margin(1e-9));
    }
  }
}

TEST_CASE("zero-generation run archives the initial rank-1 set") {
  ScratchDir scratch("run_gen0");
  RunConfig config;
  config.problem = ProblemKind::Q1;
  config.seed = 5;
  config.optimizer.population_size = 12;
  config.optimizer.max_generations = 0;
  config.alpha = 5;
  config.output_dir = scratch.path / "out";
  const RunSummary summary = run(config);

  const auto front = read_table(config.output_dir / "pareto_front.tsv");
  REQUIRE(front.size() == summary.repository_size);
  REQUIRE(summary.history.size() == 1);

  // Oracle: replay the init stream and reduce by brute force.
  const QuantumBundle bundle(build_problem(config), 2, config.alpha);
  SeedStreams streams(*config.seed);
  auto population = initialize_population(bundle.bounds(), 12, streams.init);
  std::vector<ObjectiveVector> objectives;
  for (auto& p : population) objectives.push_back(bundle.evaluate(p.position).objectives);
  REQUIRE(front.size() == non_dominated_subset(objectives).size());
}

TEST_CASE("report output") {
  ScratchDir scratch("report");

  SECTION("quantum runs cite the reference values as non-binding") {
    RunConfig config;
    config.problem = ProblemKind::Q1;
    config.seed = 2;
    config.optimizer.population_size = 10;
    config.optimizer.max_generations = 3;
    config.alpha = 5;
    config.output_dir = scratch.path / "q1";
    run(config);

    std::ostringstream out;
    report(config.output_dir, out);
    const std::string text = out.str();
    REQUIRE(text.find("paper reference (non-binding)") != std::string::npos);
    REQUIRE(text.find("9.99977E-01") != std::string::npos);
    REQUIRE(text.find("2.98414E+00") != std::string::npos);
  }

  SECTION("benchmark runs omit the reference column") {
    RunConfig config;
    config.problem = ProblemKind::Schaffer;
    config.seed = 2;
    config.optimizer.population_size = 10;
    config.optimizer.max_generations = 3;
    config.output_dir = scratch.path / "schaffer";
    run(config);

    std::ostringstream out;
    report(config.output_dir, out);
    REQUIRE(out.str().find("paper reference") == std::string::npos);
  }

  SECTION("a missing run directory is an io error") {
    REQUIRE_THROWS_AS(report(scratch.path / "missing", std::cout), IoError);
  }
}
