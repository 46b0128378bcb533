#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "momdwa/random.hpp"
#include "momdwa/topsis.hpp"

using namespace momdwa;

namespace {

Particle make_member(ObjectiveVector objectives, double fidelity) {
  Particle p;
  p.position = {0.0};
  p.objectives = std::move(objectives);
  p.fidelity = fidelity;
  return p;
}

Repository make_repository(std::vector<Particle> members, std::size_t capacity = 64) {
  Repository repository(capacity);
  repository.update(members);
  return repository;
}

}  // namespace

TEST_CASE("fidelity screening") {
  SECTION("members clearing the threshold are kept") {
    const auto repository = make_repository(
        {make_member({1.0, 2.0}, 0.999), make_member({2.0, 1.0}, 0.990)});
    const auto kept = screen_by_fidelity(repository, 0.995);
    REQUIRE(kept == std::vector<std::size_t>{0});
  }

  SECTION("fallback keeps the single best-fidelity member") {
    const auto repository = make_repository(
        {make_member({1.0, 2.0}, 0.4), make_member({2.0, 1.0}, 0.7),
         make_member({3.0, 0.5}, 0.6)});
    const auto kept = screen_by_fidelity(repository, 0.995);
    REQUIRE(kept == std::vector<std::size_t>{1});
  }

  SECTION("epsilon zero keeps the whole repository") {
    const auto repository = make_repository(
        {make_member({1.0, 2.0}, 0.1), make_member({2.0, 1.0}, 0.0)});
    REQUIRE(screen_by_fidelity(repository, 0.0).size() == repository.size());
  }

  SECTION("empty repository is a decision error") {
    Repository empty(4);
    REQUIRE_THROWS_AS(screen_by_fidelity(empty, 0.5), DecisionError);
  }
}

TEST_CASE("positivize") {
  SECTION("column becomes max-minus-value") {
    const auto out = positivize({{1.0}, {3.0}, {2.0}});
    REQUIRE(out[0][0] == 2.0);
    REQUIRE(out[1][0] == 0.0);
    REQUIRE(out[2][0] == 1.0);
  }

  SECTION("constant column collapses to zeros") {
    const auto out = positivize({{4.0, 7.0}, {4.0, 7.0}});
    for (const auto& row : out)
      for (double v : row) REQUIRE(v == 0.0);
  }

  SECTION("output column max equals the input column range, min is zero") {
    const auto out = positivize({{1.0}, {3.0}, {2.0}});
    double max = out[0][0], min = out[0][0];
    for (const auto& row : out) {
      max = std::max(max, row[0]);
      min = std::min(min, row[0]);
    }
    REQUIRE(max == 3.0 - 1.0);
    REQUIRE(min == 0.0);
  }
}

TEST_CASE("topsis scores") {
  const TopsisWeights weights{{0.7, 0.3}};

  SECTION("hand-computed two-row case") {
    // Positivized rows (1,0) and (0,1). D+ and D- reduce to sqrt(w2) and
    // sqrt(w1) for the first row, reversed for the second.
    const auto scores = topsis_scores({{1.0, 0.0}, {0.0, 1.0}}, weights);
    const double s0 = std::sqrt(0.7) / (std::sqrt(0.7) + std::sqrt(0.3));
    const double s1 = std::sqrt(0.3) / (std::sqrt(0.7) + std::sqrt(0.3));
    REQUIRE(scores[0] == Catch::Approx(s0).margin(1e-9));
    REQUIRE(scores[1] == Catch::Approx(s1).margin(1e-9));
    REQUIRE(scores[0] == Catch::Approx(0.604).margin(5e-4));
    REQUIRE(scores[0] > scores[1]);
  }

  SECTION("identical rows score equally") {
    const auto scores = topsis_scores({{2.0, 5.0}, {2.0, 5.0}, {2.0, 5.0}}, weights);
    for (double s : scores) REQUIRE(s == Catch::Approx(1.0 / 3.0).margin(1e-12));
  }

  SECTION("equal weights on symmetric rows score equally") {
    const auto scores = topsis_scores({{1.0, 0.0}, {0.0, 1.0}}, TopsisWeights{{0.5, 0.5}});
    REQUIRE(scores[0] == Catch::Approx(scores[1]).margin(1e-12));
  }

  SECTION("single row normalizes to exactly one") {
    const auto scores = topsis_scores({{3.0, 4.0}}, weights);
    REQUIRE(scores.size() == 1);
    REQUIRE(scores[0] == 1.0);
  }

  SECTION("scores are non-negative and sum to one") {
    RandomStream rng(42);
    for (int trial = 0; trial < 200; ++trial) {
      DecisionMatrix matrix(5, std::vector<double>(2));
      for (auto& row : matrix)
        for (double& v : row) v = rng.uniform(0.0, 9.0);
      const auto scores = topsis_scores(positivize(matrix), weights);
      double total = 0.0;
      for (double s : scores) {
        REQUIRE(s >= 0.0);
        total += s;
      }
      REQUIRE(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("select best") {
  const TopsisWeights weights{{0.7, 0.3}};

  SECTION("singleton repository selects its member with score one") {
    const auto repository = make_repository({make_member({1.5, 2.5}, 0.999)});
    const auto selection = select_best(repository, weights, 0.995);
    REQUIRE(selection.report.screened_count == 1);
    REQUIRE(selection.report.scores == std::vector<double>{1.0});
    REQUIRE(selection.repository_index == 0);
  }

  SECTION("two-member continuation of the hand example") {
    // Stored objectives (0,1) and (1,0) positivize to (1,0) and (0,1); the
    // first row wins under weights (0.7, 0.3).
    const auto repository = make_repository(
        {make_member({0.0, 1.0}, 1.0), make_member({1.0, 0.0}, 1.0)});
    const auto selection = select_best(repository, weights, 0.0);
    REQUIRE(selection.report.selected_index == 0);
    REQUIRE(selection.particle.objectives == ObjectiveVector{0.0, 1.0});
  }

  SECTION("argmax is invariant under uniform weight scaling") {
    RandomStream rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Particle> members;
      for (int i = 0; i < 6; ++i)
        members.push_back(
            make_member({rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)},
                        1.0));
      const auto repository = make_repository(members);
      const auto base = select_best(repository, TopsisWeights{{0.6, 0.2, 0.2}}, 0.0);
      const auto scaled = select_best(repository, TopsisWeights{{3.0, 1.0, 1.0}}, 0.0);
      REQUIRE(base.repository_index == scaled.repository_index);
    }
  }

  SECTION("duplicating a non-selected row never changes the selected row") {
    RandomStream rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      DecisionMatrix matrix(5, std::vector<double>(3));
      for (auto& row : matrix)
        for (double& v : row) v = rng.uniform(0.0, 5.0);
      const TopsisWeights w{{0.6, 0.2, 0.2}};
      const auto scores = topsis_scores(positivize(matrix), w);
      std::size_t best = 0;
      for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = i;

      DecisionMatrix duplicated = matrix;
      duplicated.push_back(matrix[best == 0 ? 1 : 0]);  // copy a losing row
      const auto rescored = topsis_scores(positivize(duplicated), w);
      std::size_t best_after = 0;
      for (std::size_t i = 1; i < rescored.size(); ++i)
        if (rescored[i] > rescored[best_after]) best_after = i;
      REQUIRE(duplicated[best_after] == matrix[best]);
    }
  }
}
