#pragma once

// Random-walk and frog-model dynamics on the implicit tree.
//
// Randomness is keyed, not sequential: the sleeping count at a site is drawn
// from a stream keyed by (seed, replica, site address), and every particle
// walks on its own stream keyed by (seed, replica, home site, index). A
// particle's path therefore does not depend on when it is woken or in which
// order the simulation visits it, which is what lets the block recursion and
// the direct frog run be compared on identical randomness.
//
// Truncation uses two radii. Sites are recorded up to r_record; walkers die
// once they step beyond r_kill (or after t_max of their own steps). The
// expected weight this neglects is bounded analytically and returned as
// `bias_bound`.

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "frogcert/laws.hpp"
#include "frogcert/local_tree.hpp"
#include "frogcert/rng.hpp"
#include "frogcert/tree.hpp"

namespace frogcert::sim {

/// How the root is populated: one active particle (the frog model), or a
/// count drawn from the site law like every other site.
enum class RootStart { single_active, sampled };

struct SimConfig {
  tree::TreeParams tree;
  laws::ParticleLaw law = laws::ParticleLaw::constant(0);
  double lambda = 0.7071067811865476;
  int r_record = 20;
  int r_kill = 40;
  std::int64_t t_max = 1'000'000;
  std::uint64_t seed = 1;
  std::int64_t replicas = 1;
  RootStart root = RootStart::single_active;
  /// Active-walker and materialized-site guard.
  std::size_t population_cap = std::size_t{1} << 25;

  /// Throws std::invalid_argument.
  void validate() const;

  /// Config with lambda = 1/sqrt(d).
  static SimConfig standard(int d, laws::ParticleLaw law);
};

/// Index of the initial active particle at the root (single_active start).
inline constexpr std::uint64_t kInitialWalker = ~std::uint64_t{0};
/// Index of the guaranteed (type-1) particle at a site in the two-type model.
inline constexpr std::uint64_t kTypeOneWalker = ~std::uint64_t{0} - 1;

/// Streams of one replica.
struct ReplicaStreams {
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;

  CounterRng site(std::uint64_t site_key) const {
    return CounterRng(stream_key(seed, replica, StreamTag::site_count, site_key));
  }
  CounterRng walker(std::uint64_t site_key, std::uint64_t index) const {
    return CounterRng(stream_key(seed, replica, StreamTag::walker, site_key, index));
  }
  CounterRng misc(std::uint64_t tag) const { return CounterRng(stream_key(seed, replica, StreamTag::misc, tag)); }
};

struct VisitSet {
  std::vector<tree::Vertex> vertices;  // sorted
  double weight = 0.0;
  double bias_bound = 0.0;
  /// False when no analytic truncation bound applies (then bias_bound is 0).
  bool bias_certified = true;
  bool truncated = false;
  std::int64_t walkers = 0;
  std::int64_t killed = 0;

  double recompute_weight(double lambda) const;
};

struct FrogRunStats {
  std::int64_t root_visits = 0;
  std::int64_t sites_visited = 0;
  int max_level = 0;
  int min_level = 0;
  std::int64_t awakened = 0;
  bool truncated = false;
};

struct FrogRun {
  FrogRunStats stats;
  /// Every visited site (all radii up to r_kill), sorted.
  std::vector<tree::Vertex> visited;
};

/// Visited set of n_walkers independent walks started at the root.
VisitSet island_visit_set(const SimConfig& config, std::int64_t n_walkers, std::uint64_t replica);

/// Truncation bound for island_visit_set with n walkers that all die at r_kill:
/// analytic tail beyond r_record plus the re-entry term
/// n * ball_weight(r_record) * d^{-(r_kill - r_record)}.
double island_bias_bound(const SimConfig& config, std::int64_t n_walkers);

/// Discrete-time frog model from the root. Walkers step synchronously; sites
/// reached in a step are activated after all moves of that step.
FrogRun frog_model(const SimConfig& config, std::uint64_t replica);

/// Launches the type-2 particles of each site in `sites` (counts from the inner
/// law of a PlusOne config law); every site reached that is neither excluded
/// nor already reached wakes its single type-1 particle. Returns the newly
/// visited sites within r_record.
VisitSet two_type_block_step(const SimConfig& config, const std::vector<tree::Vertex>& sites,
                             const std::unordered_set<tree::Vertex>& exclusion, std::uint64_t replica);

struct CouplingTrace {
  bool contained = true;
  int steps = 0;
  std::vector<std::int64_t> frog_counts;  // active frogs after each step
  std::vector<double> brw_counts;         // all branching-walk particles after each step
};

/// Frog model with one sleeping frog per site driven jointly with the
/// dominating branching walk: every frog is tethered to a walk particle that
/// takes the same steps; a particle stepping away from the root places its
/// second offspring on a frog woken at that site if one is unclaimed.
/// Needs the constant law 1; particles of either process die past r_kill.
CouplingTrace coupled_domination_trace(const SimConfig& config, int horizon, std::uint64_t replica);

/// True iff frog positions stay contained in walk positions for every step.
bool coupled_domination_run(const SimConfig& config, int horizon, std::uint64_t replica);

// ---------------------------------------------------------------------------
// Replica estimators. Replicas run on `workers` threads; reductions are in
// replica order.

struct Estimate {
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::int64_t samples = 0;
};

struct IslandReplica {
  std::int64_t walkers = 0;
  std::int64_t sites = 0;
  double weight = 0.0;
  double bias_bound = 0.0;
  bool truncated = false;
};

struct IslandSummary {
  std::vector<IslandReplica> replicas;
  Estimate weight;
  /// Mean of the per-replica bias bounds.
  double mean_bias_bound = 0.0;
  /// Expectation of the bias bound under the site law (computed, not sampled).
  double expected_bias_bound = 0.0;
  /// Share of the weight sum carried by the largest replica.
  double top_replica_share = 0.0;
};

/// Replica i draws the island size from the law on its root stream and records
/// w_lambda of the visited set.
IslandSummary estimate_island(const SimConfig& config, int workers);

/// Empirical probability that one walker from the root ever visits `target`.
Estimate estimate_hit_probability(const SimConfig& config, const tree::Vertex& target, int workers);

}  // namespace frogcert::sim
