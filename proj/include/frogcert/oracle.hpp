#pragma once

// Brute-force checks behind `frogcert oracle`.

#include <cstdint>
#include <string>

namespace frogcert::oracle {

struct OracleResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// phi(j, k) against BFS cell counts of the ball of radius R, every |j| <= k <= R.
/// `observed` is the number of mismatching cells.
OracleResult phi_vs_bfs(int d, int radius);

/// Empirical probability that a walker from the root visits a fixed
/// distance-k vertex, against d^{-k}, tolerance 3 standard errors.
OracleResult hit_frequency(int d, int k, std::int64_t replicas, std::uint64_t seed, int workers);

/// total_bound (numeric) against mu * sum over an enumerated ball of
/// lambda^level * min(d^{-dist}, d^{-m}) plus the summed tail beyond the ball.
/// The ball is the largest the enumeration guard allows.
OracleResult ball_bound(int d, int m, double mu = 1.0);

/// Largest radius enumerate_ball accepts for the regular tree of degree d+1.
int max_ball_radius(int d);

}  // namespace frogcert::oracle
