#pragma once

// Internal walking machinery shared by the island, frog-model and block
// simulations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "frogcert/analytic.hpp"
#include "frogcert/local_tree.hpp"
#include "frogcert/sim.hpp"

namespace frogcert::sim::detail {

using tree::LocalTree;
using Id = LocalTree::Id;

enum class WalkEnd { alive, killed_radius, killed_time };

/// A walker inside the materialized radius sits on `node` with excess 0. Past
/// it, only the distance matters until it comes back through the same gate
/// node, so the excursion is tracked as a one-dimensional walk.
struct Walker {
  Id node = LocalTree::root();
  int excess = 0;
  std::int64_t age = 0;
  CounterRng rng{0};

  int distance(const LocalTree& t) const { return t.distance(node) + excess; }
};

struct Limits {
  int materialize_radius;
  int r_kill;
  std::int64_t t_max;
};

struct StepResult {
  Id arrived = LocalTree::kNone;  // materialized node entered, if any
  WalkEnd end = WalkEnd::alive;
};

inline StepResult step(LocalTree& tree, Walker& w, const Limits& lim) {
  StepResult r;
  const int d = tree.params().d;
  if (w.excess > 0) {
    const bool toward = w.rng.below(static_cast<std::uint64_t>(d) + 1) == 0;
    ++w.age;
    if (toward) {
      if (--w.excess == 0) r.arrived = w.node;
    } else if (lim.materialize_radius + ++w.excess > lim.r_kill) {
      r.end = WalkEnd::killed_radius;
      return r;
    }
  } else {
    const int slot = tree.random_slot(w.node, w.rng);
    ++w.age;
    const int dist = tree.distance(w.node);
    if (dist >= lim.materialize_radius && slot != tree.toward_root_slot(w.node)) {
      if (dist + 1 > lim.r_kill) {
        r.end = WalkEnd::killed_radius;
        return r;
      }
      w.excess = 1;
    } else {
      w.node = tree.neighbor(w.node, slot);
      r.arrived = w.node;
    }
  }
  if (w.age >= lim.t_max) r.end = WalkEnd::killed_time;
  return r;
}

inline double pow_lambda(double lambda, int level) { return std::pow(lambda, level); }

/// Sorted vertices of materialized nodes passing `keep`.
template <typename Keep>
std::vector<tree::Vertex> collect_vertices(const LocalTree& tree, Keep keep) {
  std::vector<tree::Vertex> out;
  for (Id id = 0; id < static_cast<Id>(tree.size()); ++id) {
    if (keep(id)) out.push_back(tree.vertex(id));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Per-replica site state for block and frog simulations: every site within
/// r_kill is materialized and remembers whether it has been visited.
class SiteEngine {
public:
  SiteEngine(const SimConfig& config, std::uint64_t replica)
      : config_(config),
        streams_{config.seed, replica},
        tree_(config.tree, config.population_cap),
        limits_{config.r_kill, config.r_kill, config.t_max} {
    visited_.assign(1, 0);
  }

  LocalTree& tree() { return tree_; }
  const LocalTree& tree() const { return tree_; }
  const ReplicaStreams& streams() const { return streams_; }
  const SimConfig& config() const { return config_; }

  bool visited(Id id) const { return static_cast<std::size_t>(id) < visited_.size() && visited_[id] != 0; }
  void mark(Id id) {
    if (static_cast<std::size_t>(id) >= visited_.size()) visited_.resize(tree_.size(), 0);
    visited_[id] = 1;
  }

  /// Particles launched from `site` at time zero (root start rule applied).
  laws::Count launch_count(Id site, const laws::ParticleLaw& law) const {
    if (site == LocalTree::root() && config_.root == RootStart::single_active) return 1;
    auto rng = streams_.site(tree_.key(site));
    return law.sample(rng);
  }
  std::uint64_t launch_index(Id site, laws::Count i) const {
    if (site == LocalTree::root() && config_.root == RootStart::single_active) return kInitialWalker;
    return static_cast<std::uint64_t>(i);
  }

  Walker make_walker(Id site, std::uint64_t index) const {
    return Walker{site, 0, 0, streams_.walker(tree_.key(site), index)};
  }

  /// Walks one particle until it dies; on_fresh(id) fires for every arrival at
  /// a site not yet visited (which is then marked).
  template <typename OnFresh>
  void walk(Walker w, OnFresh on_fresh) {
    for (;;) {
      const auto r = step(tree_, w, limits_);
      if (r.arrived != LocalTree::kNone && !visited(r.arrived)) {
        mark(r.arrived);
        on_fresh(r.arrived);
      }
      if (r.end == WalkEnd::killed_radius) {
        ++killed_radius_;
        return;
      }
      if (r.end == WalkEnd::killed_time) {
        killed_time_distances_.push_back(w.distance(tree_));
        return;
      }
    }
  }

  std::int64_t killed_radius() const { return killed_radius_; }
  const std::vector<int>& killed_time_distances() const { return killed_time_distances_; }

  /// Two-type cascade: the given walkers run, and every fresh site wakes its
  /// one type-1 particle, which joins the cascade. Fresh sites are appended
  /// to `fresh` in discovery order.
  void cascade(std::vector<Walker> queue, std::vector<Id>& fresh) {
    while (!queue.empty()) {
      const Walker w = queue.back();
      queue.pop_back();
      walk(w, [&](Id x) {
        fresh.push_back(x);
        queue.push_back(make_walker(x, kTypeOneWalker));
      });
    }
  }

private:
  const SimConfig& config_;
  ReplicaStreams streams_;
  LocalTree tree_;
  Limits limits_;
  std::vector<char> visited_;
  std::int64_t killed_radius_ = 0;
  std::vector<int> killed_time_distances_;
};

/// Truncation bound for walks launched from arbitrary sites of the regular
/// tree. Plain walks hit a vertex at distance k with probability d^{-k}; the
/// two-type cascade is dominated by the branching walk, which hits it with
/// probability at most C (4/(d+1))^k = C d^{-beta k}.
struct BiasModel {
  bool certified = false;
  double beta = 1.0;
  double c_hit = 1.0;
  double decay = 0.5;  // per-unit-distance hitting factor
  double ball = 0.0;   // weight of the recorded ball

  static BiasModel plain(const SimConfig& c) {
    BiasModel m;
    const int d = c.tree.d;
    m.decay = 1.0 / d;
    m.certified = c.tree.mode == tree::Mode::regular && !analytic::divergence_reason(d, c.lambda, 1.0);
    if (m.certified) m.ball = analytic::ball_weight(c.r_record, d, c.lambda);
    return m;
  }

  static BiasModel two_type(const SimConfig& c) {
    BiasModel m;
    const int d = c.tree.d;
    if (c.tree.mode != tree::Mode::regular || d < 6) return m;
    m.beta = analytic::two_type_beta(d);
    m.c_hit = analytic::two_type_c_hit(d);
    m.decay = 4.0 / (d + 1.0);
    m.certified = !analytic::divergence_reason(d, c.lambda, m.beta);
    if (m.certified) m.ball = analytic::ball_weight(c.r_record, d, c.lambda);
    return m;
  }

  /// Weight beyond r_record reachable by n particles launched at a site.
  double launch(const SimConfig& c, const LocalTree& t, Id site, double n) const {
    if (!certified || n <= 0) return 0.0;
    return std::pow(c.lambda, t.level(site)) *
           analytic::tail_weight(c.r_record - t.distance(site), c.tree.d, c.lambda, beta, c_hit, n);
  }

  /// Ball weight a particle stopped at distance `dist` could still have added.
  double stopped(const SimConfig& c, int dist) const {
    if (!certified) return 0.0;
    const int gap = std::max(0, dist - c.r_record);
    return ball * std::min(1.0, c_hit * std::pow(decay, gap));
  }

  /// Bias from the engine's killed walkers.
  template <typename Engine>
  double killed(const SimConfig& c, const Engine& e) const {
    double b = static_cast<double>(e.killed_radius()) * stopped(c, c.r_kill + 1);
    for (const int dist : e.killed_time_distances()) b += stopped(c, dist);
    return b;
  }
};

}  // namespace frogcert::sim::detail
