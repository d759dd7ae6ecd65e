#include "frogcert/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "engine.hpp"
#include "frogcert/analytic.hpp"
#include "frogcert/numeric.hpp"
#include "frogcert/parallel.hpp"

namespace frogcert::sim {

using detail::Id;
using tree::LocalTree;

void SimConfig::validate() const {
  tree.validate();
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("sim: lambda must lie in (0, 1)");
  if (r_record < 1) throw std::invalid_argument("sim: r_record must be >= 1");
  if (r_kill <= r_record) throw std::invalid_argument("sim: r_kill must exceed r_record");
  if (r_kill > 100000) throw std::invalid_argument("sim: r_kill too large");
  if (t_max < 1) throw std::invalid_argument("sim: t_max must be >= 1");
  if (replicas < 0) throw std::invalid_argument("sim: replicas must be >= 0");
  if (population_cap < 1) throw std::invalid_argument("sim: population cap must be positive");
}

SimConfig SimConfig::standard(int d, laws::ParticleLaw law) {
  SimConfig c;
  c.tree.d = d;
  c.law = std::move(law);
  c.lambda = 1.0 / std::sqrt(static_cast<double>(d));
  return c;
}

double VisitSet::recompute_weight(double lambda) const {
  CompensatedSum s;
  for (const auto& v : vertices) s += std::pow(lambda, v.level());
  return s.value();
}

namespace {

// Hitting-bound prefactor for walks from the root: 1 on the regular tree; on
// the d-ary tree each of the d/(d-1) expected root visits starts an excursion
// that hits a depth-k vertex with probability at most d^{-k}.
double root_hit_prefactor(const SimConfig& c) {
  return c.tree.mode == tree::Mode::regular ? 1.0 : c.tree.d / (c.tree.d - 1.0);
}

// Bound on the weight a walker killed by the step horizon at distance `dist`
// could still have added inside the recorded ball.
double time_kill_bias(const SimConfig& c, int dist, double ball) {
  const int beyond = std::max(0, dist - c.r_record);
  return ball * std::pow(static_cast<double>(c.tree.d), -beyond);
}

struct IslandRun {
  LocalTree tree;
  VisitSet set;
};

IslandRun run_island(const SimConfig& config, std::int64_t n_walkers, std::uint64_t replica, bool keep_vertices) {
  config.validate();
  if (n_walkers < 0) throw std::invalid_argument("island: negative walker count");
  IslandRun run{LocalTree(config.tree, config.population_cap), {}};
  auto& out = run.set;
  out.walkers = n_walkers;
  if (n_walkers == 0) return run;

  const ReplicaStreams streams{config.seed, replica};
  const detail::Limits limits{config.r_record, config.r_kill, config.t_max};
  const auto root_key = run.tree.key(LocalTree::root());
  const bool certified = !analytic::divergence_reason(config.tree.d, config.lambda, 1.0);
  const double ball = certified ? analytic::ball_weight(config.r_record, config.tree.d, config.lambda) : 0.0;
  double time_bias = 0.0;
  try {
    for (std::int64_t i = 0; i < n_walkers; ++i) {
      detail::Walker w{LocalTree::root(), 0, 0, streams.walker(root_key, static_cast<std::uint64_t>(i))};
      for (;;) {
        const auto r = detail::step(run.tree, w, limits);
        if (r.end == detail::WalkEnd::killed_radius) {
          ++out.killed;
          break;
        }
        if (r.end == detail::WalkEnd::killed_time) {
          out.truncated = true;
          time_bias += time_kill_bias(config, w.distance(run.tree), ball);
          break;
        }
      }
    }
  } catch (const GuardError&) {
    out.truncated = true;
    out.bias_certified = false;
  }
  if (out.killed > 0) out.truncated = true;

  // Every materialized node was entered by some walker.
  CompensatedSum weight;
  for (Id id = 0; id < static_cast<Id>(run.tree.size()); ++id) weight += std::pow(config.lambda, run.tree.level(id));
  out.weight = weight.value();
  if (keep_vertices) out.vertices = detail::collect_vertices(run.tree, [](Id) { return true; });
  if (certified && out.bias_certified) {
    out.bias_bound = island_bias_bound(config, n_walkers) + time_bias;
  } else {
    out.bias_certified = false;
    out.bias_bound = 0.0;
  }
  return run;
}

}  // namespace

double island_bias_bound(const SimConfig& config, std::int64_t n_walkers) {
  if (n_walkers <= 0) return 0.0;
  const int d = config.tree.d;
  const double n = static_cast<double>(n_walkers);
  const double tail = analytic::tail_weight(config.r_record, d, config.lambda, 1.0, root_hit_prefactor(config), n);
  const double reentry = n * analytic::ball_weight(config.r_record, d, config.lambda) *
                         std::pow(static_cast<double>(d), -(config.r_kill - config.r_record));
  return tail + reentry;
}

VisitSet island_visit_set(const SimConfig& config, std::int64_t n_walkers, std::uint64_t replica) {
  return run_island(config, n_walkers, replica, true).set;
}

FrogRun frog_model(const SimConfig& config, std::uint64_t replica) {
  config.validate();
  detail::SiteEngine engine(config, replica);
  auto& tree = engine.tree();
  const detail::Limits limits{config.r_kill, config.r_kill, config.t_max};
  FrogRun run;
  auto& stats = run.stats;

  std::vector<detail::Walker> walkers;
  const Id root = LocalTree::root();
  engine.mark(root);
  const auto root_count = engine.launch_count(root, config.law);
  for (laws::Count i = 0; i < root_count; ++i) walkers.push_back(engine.make_walker(root, engine.launch_index(root, i)));

  std::vector<Id> arrivals;
  try {
    while (!walkers.empty()) {
      arrivals.clear();
      std::size_t alive = 0;
      for (auto& w : walkers) {
        const auto r = detail::step(tree, w, limits);
        if (r.arrived != LocalTree::kNone) {
          arrivals.push_back(r.arrived);
          if (r.arrived == root) ++stats.root_visits;
        }
        if (r.end == detail::WalkEnd::alive) {
          walkers[alive++] = w;
        } else {
          stats.truncated = true;
        }
      }
      walkers.resize(alive);
      for (const Id site : arrivals) {
        if (engine.visited(site)) continue;
        engine.mark(site);
        const auto count = engine.launch_count(site, config.law);
        stats.awakened += count;
        for (laws::Count i = 0; i < count; ++i) walkers.push_back(engine.make_walker(site, static_cast<std::uint64_t>(i)));
      }
      if (walkers.size() > config.population_cap) throw GuardError("frog model: population cap exceeded");
    }
  } catch (const GuardError&) {
    stats.truncated = true;
  }

  for (Id id = 0; id < static_cast<Id>(tree.size()); ++id) {
    if (!engine.visited(id)) continue;
    ++stats.sites_visited;
    stats.max_level = std::max(stats.max_level, tree.level(id));
    stats.min_level = std::min(stats.min_level, tree.level(id));
  }
  run.visited = detail::collect_vertices(tree, [&](Id id) { return engine.visited(id); });
  return run;
}

VisitSet two_type_block_step(const SimConfig& config, const std::vector<tree::Vertex>& sites,
                             const std::unordered_set<tree::Vertex>& exclusion, std::uint64_t replica) {
  config.validate();
  const auto* inner = config.law.inner();
  if (inner == nullptr) throw std::invalid_argument("two_type_block_step: the site law must be plus_one");
  detail::SiteEngine engine(config, replica);
  auto& tree = engine.tree();
  VisitSet out;
  std::vector<Id> fresh;
  const auto model = detail::BiasModel::two_type(config);
  CompensatedSum bias;
  bool guarded = false;
  try {
    for (const auto& v : exclusion) engine.mark(tree.materialize(v));
    std::vector<detail::Walker> queue;
    for (const auto& v : sites) {
      const Id site = tree.materialize(v);
      const auto count = engine.launch_count(site, *inner);
      for (laws::Count i = 0; i < count; ++i) queue.push_back(engine.make_walker(site, engine.launch_index(site, i)));
      out.walkers += count;
      bias += model.launch(config, tree, site, static_cast<double>(count));
    }
    engine.cascade(std::move(queue), fresh);
  } catch (const GuardError&) {
    out.truncated = true;
    guarded = true;
  }
  out.killed = engine.killed_radius();
  if (out.killed > 0 || !engine.killed_time_distances().empty()) out.truncated = true;
  CompensatedSum weight;
  for (const Id x : fresh) {
    if (tree.distance(x) <= config.r_record) {
      out.vertices.push_back(tree.vertex(x));
      weight += std::pow(config.lambda, tree.level(x));
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.weight = weight.value();
  bias += model.killed(config, engine);
  out.bias_certified = model.certified && !guarded;
  out.bias_bound = out.bias_certified ? bias.value() : 0.0;
  return out;
}

CouplingTrace coupled_domination_trace(const SimConfig& config, int horizon, std::uint64_t replica) {
  config.validate();
  if (config.law.pmf() != std::vector<std::pair<std::int64_t, double>>{{1, 1.0}}) {
    throw std::invalid_argument("coupling: law must place exactly one frog per site");
  }
  if (horizon < 0 || horizon > 200) throw std::invalid_argument("coupling: horizon must lie in [0, 200]");
  const int d = config.tree.d;
  const ReplicaStreams streams{config.seed, replica};
  LocalTree tree(config.tree, config.population_cap);

  struct Mover {
    Id node;
    CounterRng rng;
  };
  // Per-node scratch, grown with the tree.
  std::vector<char> visited(1, 1);
  std::vector<std::int64_t> frogs_at, walk_at;
  std::vector<std::int32_t> woken_slot;
  auto grow = [&] {
    const auto n = tree.size();
    if (visited.size() < n) visited.resize(n, 0);
    if (frogs_at.size() < n) frogs_at.resize(n, 0);
    if (walk_at.size() < n) walk_at.resize(n, 0);
    if (woken_slot.size() < n) woken_slot.resize(n, -1);
  };
  auto alive = [&](Id id) { return tree.distance(id) <= config.r_kill; };

  const auto root_key = tree.key(LocalTree::root());
  std::vector<Mover> frogs{{LocalTree::root(), streams.walker(root_key, kInitialWalker)}};
  std::vector<Mover> tethered{{LocalTree::root(), streams.walker(root_key, kInitialWalker)}};
  std::vector<Mover> woken;
  // Untethered walk particles matter only through their number; their
  // distances evolve exactly as the projected walk.
  std::vector<long long> free_by_distance(static_cast<std::size_t>(config.r_kill) + 2, 0);
  auto free_rng = streams.misc(static_cast<std::uint64_t>(StreamTag::brw));
  const double p_toward = 1.0 / (d + 1.0);

  CouplingTrace trace;
  for (int t = 1; t <= horizon; ++t) {
    // Frog dynamics. Frogs beyond r_kill die before they can wake anyone.
    std::vector<Mover> next_frogs;
    next_frogs.reserve(frogs.size());
    for (auto& f : frogs) {
      f.node = tree.neighbor(f.node, tree.random_slot(f.node, f.rng));
      if (alive(f.node)) next_frogs.push_back(f);
    }
    frogs = std::move(next_frogs);
    grow();
    woken.clear();
    const std::size_t moved = frogs.size();
    for (std::size_t i = 0; i < moved; ++i) {
      const Id site = frogs[i].node;
      if (visited[site]) continue;
      visited[site] = 1;
      Mover fresh{site, streams.walker(tree.key(site), 0)};
      frogs.push_back(fresh);
      woken_slot[site] = static_cast<std::int32_t>(woken.size());
      woken.push_back(fresh);
    }

    // Projected evolution of the free particles present before this step.
    std::vector<long long> next(free_by_distance.size(), 0);
    for (std::size_t k = 0; k + 1 < free_by_distance.size(); ++k) {
      const long long c = free_by_distance[k];
      if (c == 0) continue;
      if (k == 0) {
        next[1] += 2 * c;
        continue;
      }
      std::binomial_distribution<long long> toward(c, p_toward);
      const long long back = toward(free_rng);
      next[k - 1] += back;
      next[k + 1] += 2 * (c - back);
    }
    next.back() = 0;
    free_by_distance = std::move(next);

    // Dominating walk: one offspring toward the root, two otherwise.
    std::vector<Mover> next_walk;
    next_walk.reserve(tethered.size() + woken.size());
    for (auto& p : tethered) {
      const int slot = tree.random_slot(p.node, p.rng);
      const bool toward_root = slot == tree.toward_root_slot(p.node);
      p.node = tree.neighbor(p.node, slot);
      if (!alive(p.node)) continue;
      next_walk.push_back(p);
      if (toward_root) continue;
      grow();
      if (auto& w = woken_slot[p.node]; w >= 0) {
        next_walk.push_back(woken[static_cast<std::size_t>(w)]);
        w = -1;
      } else {
        ++free_by_distance[static_cast<std::size_t>(tree.distance(p.node))];
      }
    }
    tethered = std::move(next_walk);
    grow();
    for (const auto& f : woken) woken_slot[f.node] = -1;

    // Multiset containment of frog positions in walk positions.
    for (const auto& f : frogs) ++frogs_at[f.node];
    for (const auto& p : tethered) ++walk_at[p.node];
    bool ok = true;
    for (const auto& f : frogs) ok = ok && frogs_at[f.node] <= walk_at[f.node];
    for (const auto& f : frogs) frogs_at[f.node] = 0;
    for (const auto& p : tethered) walk_at[p.node] = 0;

    double total = static_cast<double>(tethered.size());
    for (const auto c : free_by_distance) total += static_cast<double>(c);
    trace.frog_counts.push_back(static_cast<std::int64_t>(frogs.size()));
    trace.brw_counts.push_back(total);
    trace.steps = t;
    if (!ok) {
      trace.contained = false;
      break;
    }
  }
  return trace;
}

bool coupled_domination_run(const SimConfig& config, int horizon, std::uint64_t replica) {
  return coupled_domination_trace(config, horizon, replica).contained;
}

namespace {

double expected_island_bias(const SimConfig& config) {
  if (analytic::divergence_reason(config.tree.d, config.lambda, 1.0)) return 0.0;
  if (const auto* mix = std::get_if<laws::Mixture>(&config.law.variant())) {
    // The bound is subadditive in the walker count.
    CompensatedSum s;
    for (const auto& t : mix->components) s += t.mu / static_cast<double>(t.n) * island_bias_bound(config, t.n);
    return s.value();
  }
  if (config.root == RootStart::single_active) return island_bias_bound(config, 1);
  CompensatedSum s;
  for (const auto& [count, prob] : config.law.pmf()) s += prob * island_bias_bound(config, count);
  return s.value();
}

}  // namespace

IslandSummary estimate_island(const SimConfig& config, int workers) {
  config.validate();
  const auto root_key = tree::spine_key(0);
  IslandSummary summary;
  summary.replicas = run_indexed(config.replicas, workers, [&](std::int64_t i) {
    const ReplicaStreams streams{config.seed, static_cast<std::uint64_t>(i)};
    std::int64_t n = 1;
    if (config.root == RootStart::sampled) {
      auto rng = streams.site(root_key);
      n = config.law.sample(rng);
    }
    const auto run = run_island(config, n, static_cast<std::uint64_t>(i), false);
    return IslandReplica{n, static_cast<std::int64_t>(n > 0 ? run.tree.size() : 0), run.set.weight,
                         run.set.bias_bound, run.set.truncated};
  });
  RunningStats weights;
  CompensatedSum bias, total;
  double top = 0.0;
  for (const auto& r : summary.replicas) {
    weights.add(r.weight);
    bias += r.bias_bound;
    total += r.weight;
    top = std::max(top, r.weight);
  }
  summary.weight = Estimate{weights.mean(), weights.stderr_mean(), weights.count()};
  summary.mean_bias_bound = config.replicas > 0 ? bias.value() / static_cast<double>(config.replicas) : 0.0;
  summary.expected_bias_bound = expected_island_bias(config);
  summary.top_replica_share = total.value() > 0.0 ? top / total.value() : 0.0;
  return summary;
}

Estimate estimate_hit_probability(const SimConfig& config, const tree::Vertex& target, int workers) {
  config.validate();
  if (!tree::is_canonical(target, config.tree)) throw std::invalid_argument("hit: non-canonical target");
  if (target.distance() > config.r_record) throw std::invalid_argument("hit: target outside the recorded ball");
  const auto hits = run_indexed(config.replicas, workers, [&](std::int64_t i) {
    const auto run = run_island(config, 1, static_cast<std::uint64_t>(i), false);
    return run.tree.find(target) != LocalTree::kNone ? 1.0 : 0.0;
  });
  RunningStats s;
  for (double h : hits) s.add(h);
  return Estimate{s.mean(), s.stderr_mean(), s.count()};
}

}  // namespace frogcert::sim
