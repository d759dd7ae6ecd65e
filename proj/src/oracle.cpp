#include "frogcert/oracle.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "frogcert/analytic.hpp"
#include "frogcert/numeric.hpp"
#include "frogcert/sim.hpp"
#include "frogcert/tree.hpp"

namespace frogcert::oracle {

int max_ball_radius(int d) {
  const tree::TreeParams params{d, tree::Mode::regular};
  params.validate();
  int r = 0;
  while (tree::ball_size(r + 1, params) <= tree::kMaxBallVertices) ++r;
  return r;
}

OracleResult phi_vs_bfs(int d, int radius) {
  const tree::TreeParams params{d, tree::Mode::regular};
  params.validate();
  if (radius < 0 || radius > max_ball_radius(d)) {
    throw std::invalid_argument("oracle phi: R must lie in [0, " + std::to_string(max_ball_radius(d)) + "]");
  }
  std::map<std::pair<int, int>, std::uint64_t> cells;
  for (const auto& v : tree::enumerate_ball(radius, params)) ++cells[{v.level(), v.distance()}];
  OracleResult r{"phi", true, 0.0, 0.0, 0.0, ""};
  int checked = 0;
  for (int k = 0; k <= radius; ++k) {
    for (int j = -k; j <= k; ++j) {
      ++checked;
      const auto it = cells.find({j, k});
      const std::uint64_t bfs = it == cells.end() ? 0 : it->second;
      if (bfs != tree::phi(j, k, d)) {
        r.observed += 1.0;
        if (r.detail.empty()) r.detail = "first mismatch at j=" + std::to_string(j) + " k=" + std::to_string(k);
      }
    }
  }
  r.pass = r.observed == 0.0;
  if (r.pass) r.detail = std::to_string(checked) + " cells match";
  return r;
}

OracleResult hit_frequency(int d, int k, std::int64_t replicas, std::uint64_t seed, int workers) {
  if (k < 1 || k > 12) throw std::invalid_argument("oracle hit: k must lie in [1, 12]");
  if (replicas < 1 || replicas > 100'000'000) throw std::invalid_argument("oracle hit: replicas out of range");
  auto config = sim::SimConfig::standard(d, laws::ParticleLaw::constant(0));
  config.r_record = k;
  config.r_kill = k + 20;
  config.seed = seed;
  config.replicas = replicas;
  const tree::Vertex target{0, std::vector<std::uint8_t>(static_cast<std::size_t>(k), 1)};
  const auto est = sim::estimate_hit_probability(config, target, workers);
  const double p = analytic::hit_prob_single(d, k);
  OracleResult r{"hit", false, est.mean, p, 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(replicas)), ""};
  r.pass = std::abs(r.observed - r.expected) <= r.tolerance;
  r.detail = "stderr " + std::to_string(est.stderr_mean);
  return r;
}

OracleResult ball_bound(int d, int m, double mu) {
  const auto p = analytic::BoundParams::standard(d, mu, m);
  p.validate();
  if (m > 30) throw std::invalid_argument("oracle ball-bound: m must be <= 30");
  const int radius = max_ball_radius(d);
  const double dd = d;
  const double n = std::pow(dd, m);
  CompensatedSum s;
  for (const auto& v : tree::enumerate_ball(radius, tree::TreeParams{d, tree::Mode::regular})) {
    s += std::pow(p.lambda, v.level()) * std::min(std::pow(dd, -v.distance()), 1.0 / n);
  }
  // min(1, n d^{-k}) / n = min(d^{-k}, d^{-m}).
  s += analytic::tail_weight(radius, d, p.lambda, 1.0, 1.0, n) / n;
  const double total = analytic::total_bound(p).total;
  OracleResult r{"ball-bound", false, mu * s.value(), mu * total, 1e-6, ""};
  r.pass = std::abs(r.observed - r.expected) <= r.tolerance * std::max(1.0, std::abs(r.expected));
  r.detail = "ball radius " + std::to_string(radius);
  return r;
}

}  // namespace frogcert::oracle
