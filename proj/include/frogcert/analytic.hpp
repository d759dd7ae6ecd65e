#pragma once

// Closed-form and exactly-summed bounds for the visited-set weight of one
// island, the dominating branching random walk, and the certificates built
// from them.
//
// Cells of the lattice S = Z x {0,1,...} are indexed by (j, i): vertices at
// level j and distance |j| + 2i from the root. The bound for one island of
// N = d^m walkers is
//     alpha = mu * sum_{(j,i)} e(j,i),
//     e(j,i) = lambda^j * phi(j, |j|+2i) * min(C_hit * d^{-beta(|j|+2i)}, d^{-m}).
// Infinite tails are summed with exact geometric closed forms, never cut off.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frogcert/laws.hpp"

namespace frogcert::analytic {

struct BoundParams {
  int d = 2;
  double mu = 1.0;
  int m = 1;
  double lambda = 0.0;
  double beta = 1.0;
  double c_hit = 1.0;

  /// lambda = 1/sqrt(d), beta = 1, C_hit = 1.
  static BoundParams standard(int d, double mu, int m);

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

enum class Region { s1_plus, s2_plus, s3_plus, s1_minus, s2_minus, s3_minus };
inline constexpr std::array<Region, 6> kRegions{Region::s1_plus,  Region::s2_plus,  Region::s3_plus,
                                                Region::s1_minus, Region::s2_minus, Region::s3_minus};
std::string_view region_name(Region r);
Region parse_region(std::string_view name);

enum class SumMode { closed_form, numeric };
enum class Method { two_point, infinite_mean, two_type };
std::string_view method_name(Method m);

struct BoundReport {
  std::array<double, 6> region_sums{};
  double total = 0.0;
  double alpha = 0.0;
  Method method = Method::two_point;
  bool transient_certified = false;
};

double hit_prob_single(int d, int k);

/// min(1, n * C_hit * d^{-beta k}).
double hit_prob_union(int d, int k, double n, double beta = 1.0, double c_hit = 1.0);

/// Convergence of every cell sum for (d, lambda, beta): requires beta > 1/2,
/// lambda d^{1-beta} < 1 and lambda d^beta > 1. Returns an explanation when not.
std::optional<std::string> divergence_reason(int d, double lambda, double beta);

double e_term(int j, int i, const BoundParams& p);

/// Throws std::invalid_argument for closed_form outside lambda = 1/sqrt(d),
/// beta = 1, C_hit = 1, and for divergent parameters.
double region_sum(Region region, const BoundParams& p, SumMode mode = SumMode::numeric);

BoundReport total_bound(const BoundParams& p, SumMode mode = SumMode::numeric,
                        Method method = Method::two_point);

/// Upper bound on the expected lambda-weight of vertices at distance > R (R may
/// be negative: everything) visited by n walkers started at the root, using
/// the per-vertex hitting bound min(1, n C_hit d^{-beta k}).
double tail_weight(int R, int d, double lambda, double beta, double c_hit, double n_walkers);

/// Total lambda-weight of the ball of radius R in the regular tree.
double ball_weight(int R, int d, double lambda);

/// Upper bound on E w_lambda(A) for one island whose size is drawn from `law`:
/// sum over atoms n of P(n) * tail_weight(-1, ..., n). Two-type callers pass the
/// inner (type-2) law with the branching-walk beta and C_hit.
double alpha_for_law(const laws::ParticleLaw& law, int d, double lambda, double beta = 1.0,
                     double c_hit = 1.0);

// ---------------------------------------------------------------------------
// Certificates

struct Certificate {
  Method method = Method::two_point;
  int d = 2;
  double mu = 0.0;
  double lambda = 0.0;
  double beta = 1.0;
  double c_hit = 1.0;
  std::vector<int> m;                      // one entry, or one per mixture component
  std::vector<std::uint64_t> n;            // N = d^m, same shape as m
  std::vector<double> component_alpha;     // mixture only
  std::optional<double> alpha;             // absent when no certificate exists
  std::optional<std::array<double, 6>> region_sums;
  double remainder_bound = 0.0;
  bool transient_certified = false;
  std::string reason;
};

struct MinMResult {
  std::optional<int> m;
  std::optional<BoundReport> report;
  Certificate certificate;
  std::vector<std::pair<int, double>> scan;  // (m, alpha) for every m tried
};

inline constexpr int kMaxM = 64;

/// Smallest m in [1, cap] with alpha(m) < target, by increasing scan. Candidates
/// with d^m beyond the particle-count range end the scan. No certificate (not an
/// exception) when the scan fails or the sums diverge.
MinMResult find_min_m(int d, double mu, double lambda, double beta = 1.0, double c_hit = 1.0,
                      double target = 1.0, int cap = kMaxM, Method method = Method::two_point);

// ---------------------------------------------------------------------------
// Dominating branching random walk

/// One-step growth factor e^theta/(d+1) + 2d e^{-theta}/(d+1).
double brw_m(int d, double theta);

struct BrwConstants {
  double theta_star = 0.0;  // ln(2d)/2
  double m_theta = 0.0;     // brw_m at the supplied theta (theta_star if none)
  double m_star = 0.0;      // sqrt(8d)/(d+1)
  bool subcritical = false; // m_star < 1
};
BrwConstants brw_constants(int d, std::optional<double> theta = std::nullopt);

/// ((d+1)/(d+1-sqrt(8d))) * (4/(d+1))^k. Throws std::invalid_argument for d < 6.
double brw_hit_bound(int d, int k);
/// ln((d+1)/4) / ln d: the hitting exponent implied by brw_hit_bound.
double two_type_beta(int d);
/// (d+1)/(d+1-sqrt(8d)). Throws std::invalid_argument for d < 6.
double two_type_c_hit(int d);

/// Closed-form bound on the expected number of distance-k vertices ever
/// visited by the dominating walk: (4d/(d+1))^k / (1 - m_star).
double brw_visited_bound(int d, int k);

// ---------------------------------------------------------------------------
// Biggins criterion on the integers

struct Offspring {
  int displacement = 0;
  double expected = 0.0;
};

/// m(lambda) = sum expected * exp(-lambda * displacement). Throws on an empty spec.
double biggins_m(const std::vector<Offspring>& spec, double lambda);

enum class BigginsClass { transient_plus, transient_minus, recurrent_at_grid };
std::string_view biggins_class_name(BigginsClass c);

struct BigginsResult {
  BigginsClass verdict = BigginsClass::recurrent_at_grid;
  double lambda_plus = 0.0;   // minimizer over lambda > 0 of m(lambda)
  double inf_plus = 0.0;
  double lambda_minus = 0.0;  // same for the mirrored process
  double inf_minus = 0.0;
};

/// Scans lambda over (0, lambda_max] and refines the minimum by golden section,
/// for the process and its mirror image.
BigginsResult biggins_classify(const std::vector<Offspring>& spec, double lambda_max = 20.0,
                               int grid = 400);

// ---------------------------------------------------------------------------
// Infinite-mean mixture

struct MixtureBuild {
  laws::ParticleLaw law;
  Certificate certificate;
};

/// Picks N_n = d^{m_n} with alpha_n < 2^{-n} for n = 1..n_max. Throws
/// std::runtime_error when some target is unreachable under the scan cap.
MixtureBuild build_infinite_mean_mixture(int d, double lambda, double mu_per_component, int n_max);

/// Two-type pipeline: PlusOne(TwoPoint(d^m, mu)) with beta = two_type_beta(d),
/// C_hit = two_type_c_hit(d). No certificate when beta <= 1/2 or d < 6.
MinMResult certify_two_type(int d, double mu);

}  // namespace frogcert::analytic
