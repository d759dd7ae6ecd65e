#pragma once

// Block recursion: B_0 = {root}; B_{n+1} is the set of sites outside
// B_0..B_n reached by the particles launched from B_n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frogcert/analytic.hpp"
#include "frogcert/sim.hpp"

namespace frogcert::blocks {

enum class Variant { plain, two_type };
std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);

struct BlockSequence {
  /// B_0..B_{n_max}, each restricted to distance <= r_record.
  std::vector<sim::VisitSet> blocks;
  std::vector<double> weights;
  /// Per-block truncation bound. First-order: it covers the weight the
  /// launches of B_{n-1} lose to truncation, not what lost sites would have
  /// launched in turn.
  std::vector<double> bias_bounds;
  bool bias_certified = true;
  /// Expected island weight for the run's law; absent when the sums diverge.
  std::optional<double> alpha_ref;
  bool truncated = false;
  /// Every site reached at any radius (sorted), for comparison with frog_model.
  std::vector<tree::Vertex> all_visited;
};

/// Runs the recursion up to n_max on the replica's streams. Blocks after
/// extinction are empty. The two-type variant needs a PlusOne law: launches
/// use the inner count and every fresh site wakes exactly its type-1 particle.
BlockSequence run_blocks(const sim::SimConfig& config, int n_max, Variant variant, std::uint64_t replica);

/// analytic alpha matching run_blocks (plain: the site law with beta = 1;
/// two-type: the inner law with the branching-walk beta and C_hit).
std::optional<double> alpha_reference(const sim::SimConfig& config, Variant variant);

struct CertifyRequest {
  analytic::Method method = analytic::Method::two_point;
  int d = 2;
  double mu = 10.0;
  /// Defaults to 1/sqrt(d). The two-type pipeline always uses 1/sqrt(d).
  std::optional<double> lambda;
  /// Mixture only.
  int n_max = 20;
};

/// Negative results are certificates too (transient_certified = false with a
/// reason). Throws std::invalid_argument for invalid inputs.
analytic::Certificate certify(const CertifyRequest& request);

}  // namespace frogcert::blocks
