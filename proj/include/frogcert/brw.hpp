#pragma once

// The dominating branching random walk on T_d (one offspring when a particle
// steps toward the root, two otherwise) and projection of nearest-neighbor
// offspring rules to the integers.

#include <cstdint>
#include <map>
#include <vector>

#include "frogcert/analytic.hpp"
#include "frogcert/rng.hpp"
#include "frogcert/tree.hpp"

namespace frogcert::brw {

/// Particles aggregated by position. Weight of a particle at distance k is
/// e^{-theta k}.
class BrwPopulation {
public:
  BrwPopulation(int d, double theta, std::int64_t cap = std::int64_t{1} << 30);

  /// One particle at the root.
  static BrwPopulation at_root(int d, double theta);

  void add(const tree::Vertex& v, std::int64_t count = 1);

  int d() const { return d_; }
  double theta() const { return theta_; }
  int generation() const { return generation_; }
  std::int64_t cap() const { return cap_; }
  std::int64_t size() const { return size_; }
  double weight() const { return weight_; }
  const std::map<tree::Vertex, std::int64_t>& particles() const { return particles_; }

  /// Sum of e^{-theta dist} recomputed from the particles.
  double recompute_weight() const;
  double particle_weight(const tree::Vertex& v) const;

private:
  friend BrwPopulation step_dominating_brw(const BrwPopulation&, CounterRng&);

  int d_;
  double theta_;
  std::int64_t cap_;
  int generation_ = 0;
  std::int64_t size_ = 0;
  double weight_ = 0.0;
  std::map<tree::Vertex, std::int64_t> particles_;
};

/// Next generation: every particle moves to a uniform neighbor and leaves one
/// offspring there if the neighbor is closer to the root, two otherwise.
/// Throws GuardError when the offspring count exceeds the cap.
BrwPopulation step_dominating_brw(const BrwPopulation& pop, CounterRng& rng);

/// W_0..W_n for the dominating walk started from one particle at the root.
/// The weight depends on positions only through distances, so the process is
/// run on its distance profile (exact in law).
std::vector<double> dominating_weight_path(int d, double theta, int n, CounterRng& rng);

struct VisitedCountCheck {
  double estimate = 0.0;  // mean number of distance-k vertices visited (censored)
  double stderr_mean = 0.0;
  double bound = 0.0;     // brw_visited_bound(d, k)
  std::int64_t replicas = 0;
  int horizon = 0;
  int r_kill = 0;
  bool censored = true;   // always: finite horizon and kill radius
  bool capped = false;    // some replica hit the population cap
};

/// Monte Carlo estimate of E X_k, censored at `horizon` generations and at
/// particles beyond distance r_kill (default k + 4). Censoring only removes
/// visits, so the estimate is a lower estimate of the uncensored mean.
VisitedCountCheck visited_count_bound_check(int d, int k, std::int64_t replicas, std::uint64_t seed,
                                            int horizon = 50, int r_kill = -1);

/// Expected offspring placed on each neighbor of a vertex: index 0 is the
/// lower-level neighbor, 1..d the children. Mass at the vertex itself or at
/// non-neighbors makes the rule non-nearest-neighbor.
struct TreeOffspringRule {
  int d = 2;
  std::vector<double> per_neighbor;
  double stay = 0.0;
  double non_neighbor = 0.0;

  /// Plain random walk: one offspring at a uniform neighbor.
  static TreeOffspringRule random_walk(int d);
  /// The dominating walk: 1 toward the lower neighbor, 2 toward each child,
  /// each with probability 1/(d+1).
  static TreeOffspringRule dominating(int d);
};

/// Level projection {(-1, lower), (+1, sum of children)}. Throws
/// std::invalid_argument for non-nearest-neighbor rules or children with
/// different expected counts.
std::vector<analytic::Offspring> project_to_Z(const TreeOffspringRule& rule);

}  // namespace frogcert::brw
