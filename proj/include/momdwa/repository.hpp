#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "momdwa/errors.hpp"
#include "momdwa/pareto.hpp"
#include "momdwa/random.hpp"

namespace momdwa {

/// Bounded archive of mutually non-dominated particles. Updating merges the
/// current members with a candidate batch, keeps the non-dominated subset of
/// the union, then drops minimum-crowding members one at a time (recomputing
/// distances after each removal, ties broken by lowest index) until the
/// archive fits its capacity.
class Repository {
 public:
  explicit Repository(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw ConfigError("repository capacity must be positive");
  }

  void update(const std::vector<Particle>& candidates) {
    std::vector<Particle> pool = std::move(members_);
    for (const auto& candidate : candidates)
      if (candidate.finite_objectives()) pool.push_back(candidate);

    std::vector<ObjectiveVector> objectives;
    objectives.reserve(pool.size());
    for (const auto& p : pool) objectives.push_back(p.objectives);

    members_.clear();
    for (std::size_t i : non_dominated_subset(objectives))
      members_.push_back(std::move(pool[i]));

    while (members_.size() > capacity_) {
      std::vector<ObjectiveVector> front;
      front.reserve(members_.size());
      for (const auto& p : members_) front.push_back(p.objectives);
      const std::vector<double> distance = crowding_distance(front);
      std::size_t worst = 0;
      for (std::size_t i = 1; i < distance.size(); ++i)
        if (distance[i] < distance[worst]) worst = i;
      members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(worst));
    }
  }

  const std::vector<Particle>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return members_.empty(); }

 private:
  std::size_t capacity_;
  std::vector<Particle> members_;
};

/// Uniformly random repository member, used as the movement leader.
inline const Particle& select_leader(const Repository& repository, RandomStream& rng) {
  if (repository.empty())
    throw InternalError("select_leader: repository is empty");
  return repository.members()[rng.index(repository.size())];
}

}  // namespace momdwa
