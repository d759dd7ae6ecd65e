#include "frogcert/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "frogcert/numeric.hpp"
#include "frogcert/tree.hpp"

namespace frogcert::analytic {

namespace {

constexpr double kLambdaTol = 1e-12;
// Largest N = d^m we hand to a particle law.
constexpr double kMaxN = 4611686018427387904.0;  // 2^62

// Cells lambda^j * phi(j, |j|+2i) * min(cap, hit * d^{-beta k}), summed exactly.
// All values are formed in log space so that intermediate powers never overflow.
class CellSum {
public:
  CellSum(int d, double lambda, double beta, double log_cap, double log_hit)
      : d_(d),
        ln_d_(std::log(static_cast<double>(d))),
        ln_lambda_(std::log(lambda)),
        beta_(beta),
        log_cap_(log_cap),
        log_hit_(log_hit) {
    // Hitting branch is the smaller one for every k >= k_switch_.
    const double x = (log_hit_ - log_cap_) / (beta_ * ln_d_);
    k_switch_ = x <= 0.0 ? 0 : static_cast<int>(std::ceil(x - 1e-12));
    ln_r_ = (1.0 - 2.0 * beta_) * ln_d_;
    ln_q_ = ln_lambda_ + (1.0 - beta_) * ln_d_;
    ln_p_ = -ln_lambda_ - beta_ * ln_d_;
  }

  int k_switch() const { return k_switch_; }

  double cell(int j, int i) const {
    const int k = std::abs(j) + 2 * i;
    const double branch = std::min(log_cap_, log_hit_ - beta_ * k * ln_d_);
    return std::exp(j * ln_lambda_ + log_phi(j, i) + branch);
  }

  /// Sum over i in [lo, hi] of cell(j, i); hi < 0 means unbounded.
  double column(int j, int lo, int hi) const {
    CompensatedSum s;
    if (hi >= 0) {
      for (int i = lo; i <= hi; ++i) s += cell(j, i);
      return s.value();
    }
    const int aj = std::abs(j);
    const int first_hit = std::max(0, (k_switch_ - aj + 1) / 2);
    const int start = std::max({lo, 1, first_hit});
    for (int i = lo; i < start; ++i) s += cell(j, i);
    // Geometric i-tail in the hitting branch, i >= start >= 1.
    const int jp = std::max(j, 0);
    const double ln_head = j * ln_lambda_ + std::log(d_ - 1.0) + (jp - 1) * ln_d_ + log_hit_ - beta_ * aj * ln_d_;
    s += std::exp(ln_head + start * ln_r_) / (1.0 - std::exp(ln_r_));
    return s.value();
  }

  /// Sum of full columns over levels j >= from (sign +1) or j <= -from (sign -1).
  /// Requires from >= max(1, k_switch) so every cell is in the hitting branch.
  double level_tail(int from, int sign) const {
    const double ln_ratio = sign > 0 ? ln_q_ : ln_p_;
    const double r = std::exp(ln_r_);
    const double column_factor = 1.0 + (d_ - 1.0) / d_ * r / (1.0 - r);
    return std::exp(log_hit_ + from * ln_ratio) * column_factor / (1.0 - std::exp(ln_ratio));
  }

private:
  double log_phi(int j, int i) const {
    if (j >= 1) return i == 0 ? j * ln_d_ : std::log(d_ - 1.0) + (j + i - 1) * ln_d_;
    return i == 0 ? 0.0 : std::log(d_ - 1.0) + (i - 1) * ln_d_;
  }

  int d_;
  double ln_d_, ln_lambda_, beta_, log_cap_, log_hit_;
  double ln_r_, ln_q_, ln_p_;
  int k_switch_ = 0;
};

CellSum island_cells(const BoundParams& p) {
  const double ln_d = std::log(static_cast<double>(p.d));
  return CellSum(p.d, p.lambda, p.beta, -p.m * ln_d, std::log(p.c_hit));
}

bool is_standard(const BoundParams& p) {
  return std::abs(p.lambda - 1.0 / std::sqrt(static_cast<double>(p.d))) <= kLambdaTol && p.beta == 1.0 &&
         p.c_hit == 1.0;
}

double numeric_region(Region region, const BoundParams& p) {
  const auto cells = island_cells(p);
  const int m = p.m;
  CompensatedSum s;
  switch (region) {
    case Region::s1_plus:
      for (int j = 1; j <= m; ++j) s += cells.column(j, 0, (m - j) / 2);
      break;
    case Region::s2_plus:
      for (int j = 1; j <= m; ++j) s += cells.column(j, (m - j) / 2 + 1, -1);
      break;
    case Region::s3_plus: {
      const int last = std::max(m + 1, cells.k_switch());
      for (int j = m + 1; j < last; ++j) s += cells.column(j, 0, -1);
      s += cells.level_tail(last, +1);
      break;
    }
    case Region::s1_minus:
      for (int t = 0; t <= m; ++t) s += cells.column(-t, 0, (m - t) / 2);
      break;
    case Region::s2_minus:
      for (int t = 0; t <= m; ++t) s += cells.column(-t, (m - t) / 2 + 1, -1);
      break;
    case Region::s3_minus: {
      const int last = std::max(m + 1, cells.k_switch());
      for (int t = m + 1; t < last; ++t) s += cells.column(-t, 0, -1);
      s += cells.level_tail(last, -1);
      break;
    }
  }
  return s.value();
}

// Exact geometric sums for lambda = d^{-1/2}, beta = C_hit = 1. With e = m - j
// (or m - t), a column of S1 collapses to d^{-m/2} or d^{-(m+1)/2} by parity,
// a column of S2 to d^{-m/2-1} or d^{-(m+1)/2}, and a column of S3 to
// (1 + 1/d) d^{-j/2}.
double closed_form_region(Region region, const BoundParams& p) {
  const double d = p.d;
  const int m = p.m;
  const double base = std::pow(d, -0.5 * m);
  const double root_inv = 1.0 / std::sqrt(d);
  const double even_pos = (m + 1) / 2;  // j in [1, m] with m - j even
  const double odd_pos = m / 2;
  const double even_neg = m / 2 + 1;    // t in [0, m] with m - t even
  const double odd_neg = (m + 1) / 2;
  switch (region) {
    case Region::s1_plus:
      return base * (even_pos + odd_pos * root_inv);
    case Region::s2_plus:
      return base * (even_pos / d + odd_pos * root_inv);
    case Region::s1_minus:
      return base * (even_neg + odd_neg * root_inv);
    case Region::s2_minus:
      return base * (even_neg / d + odd_neg * root_inv);
    case Region::s3_plus:
    case Region::s3_minus:
      return (1.0 + 1.0 / d) * std::pow(d, -0.5 * (m + 1)) / (1.0 - root_inv);
  }
  return 0.0;
}

std::uint64_t power_u64(int d, int m) {
  std::uint64_t n = 1;
  for (int i = 0; i < m; ++i) n *= static_cast<std::uint64_t>(d);
  return n;
}

}  // namespace

BoundParams BoundParams::standard(int d, double mu, int m) {
  return BoundParams{d, mu, m, 1.0 / std::sqrt(static_cast<double>(d)), 1.0, 1.0};
}

void BoundParams::validate() const {
  if (d < 2 || d > 255) throw std::invalid_argument("bound: d must lie in [2, 255]");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("bound: mu must be positive");
  if (m < 1) throw std::invalid_argument("bound: m must be >= 1");
  if (!(lambda > 1.0 / d && lambda < 1.0)) throw std::invalid_argument("bound: lambda must lie in (1/d, 1)");
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("bound: beta must lie in (0, 1]");
  if (!(c_hit >= 1.0) || !std::isfinite(c_hit)) throw std::invalid_argument("bound: C_hit must be >= 1");
}

std::string_view region_name(Region r) {
  switch (r) {
    case Region::s1_plus: return "S1+";
    case Region::s2_plus: return "S2+";
    case Region::s3_plus: return "S3+";
    case Region::s1_minus: return "S1-";
    case Region::s2_minus: return "S2-";
    case Region::s3_minus: return "S3-";
  }
  return "?";
}

Region parse_region(std::string_view name) {
  for (auto r : kRegions) {
    if (region_name(r) == name) return r;
  }
  throw std::invalid_argument("unknown region '" + std::string(name) + "'");
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::two_point: return "two_point";
    case Method::infinite_mean: return "infinite_mean";
    case Method::two_type: return "two_type";
  }
  return "?";
}

double hit_prob_single(int d, int k) {
  if (k < 0) throw std::invalid_argument("hit_prob_single: negative distance");
  return std::pow(static_cast<double>(d), -k);
}

double hit_prob_union(int d, int k, double n, double beta, double c_hit) {
  if (!(n >= 1.0)) throw std::invalid_argument("hit_prob_union: N must be >= 1");
  if (k < 0) throw std::invalid_argument("hit_prob_union: negative distance");
  return std::min(1.0, n * c_hit * std::pow(static_cast<double>(d), -beta * k));
}

std::optional<std::string> divergence_reason(int d, double lambda, double beta) {
  const double dd = d;
  if (!(beta > 0.5)) return "beta <= 1/2: the sums over i diverge";
  if (!(lambda * std::pow(dd, 1.0 - beta) < 1.0)) return "lambda * d^(1-beta) >= 1: positive-level sums diverge";
  if (!(lambda * std::pow(dd, beta) > 1.0)) return "lambda * d^beta <= 1: negative-level sums diverge";
  return std::nullopt;
}

double e_term(int j, int i, const BoundParams& p) {
  if (i < 0) throw std::invalid_argument("e_term: i must be >= 0");
  return island_cells(p).cell(j, i);
}

double region_sum(Region region, const BoundParams& p, SumMode mode) {
  p.validate();
  if (auto why = divergence_reason(p.d, p.lambda, p.beta)) throw std::invalid_argument("region_sum: " + *why);
  if (mode == SumMode::closed_form) {
    if (!is_standard(p)) {
      throw std::invalid_argument("region_sum: closed form requires lambda = 1/sqrt(d), beta = 1, C_hit = 1");
    }
    return closed_form_region(region, p);
  }
  return numeric_region(region, p);
}

BoundReport total_bound(const BoundParams& p, SumMode mode, Method method) {
  BoundReport r;
  r.method = method;
  CompensatedSum total;
  for (std::size_t k = 0; k < kRegions.size(); ++k) {
    r.region_sums[k] = region_sum(kRegions[k], p, mode);
    total += r.region_sums[k];
  }
  r.total = total.value();
  r.alpha = p.mu * r.total;
  r.transient_certified = r.alpha < 1.0;
  return r;
}

double tail_weight(int R, int d, double lambda, double beta, double c_hit, double n_walkers) {
  if (n_walkers < 0.0) throw std::invalid_argument("tail_weight: negative walker count");
  if (n_walkers == 0.0) return 0.0;
  if (auto why = divergence_reason(d, lambda, beta)) throw std::invalid_argument("tail_weight: " + *why);
  const CellSum cells(d, lambda, beta, 0.0, std::log(n_walkers * c_hit));
  const int last = std::max({R + 1, cells.k_switch(), 1});
  CompensatedSum s;
  for (int j = -(last - 1); j <= last - 1; ++j) {
    const int aj = std::abs(j);
    const int lo = aj > R ? 0 : (R - aj) / 2 + 1;
    s += cells.column(j, lo, -1);
  }
  s += cells.level_tail(last, +1);
  s += cells.level_tail(last, -1);
  return s.value();
}

double ball_weight(int R, int d, double lambda) {
  CompensatedSum s;
  for (int k = 0; k <= R; ++k) {
    for (int j = -k; j <= k; j += 2) {
      s += std::exp(j * std::log(lambda) + std::log(tree::phi_real(j, k, d)));
    }
  }
  return s.value();
}

double alpha_for_law(const laws::ParticleLaw& law, int d, double lambda, double beta, double c_hit) {
  if (const auto* mix = std::get_if<laws::Mixture>(&law.variant())) {
    // Union of independent islands: the bounds add.
    CompensatedSum s;
    for (const auto& t : mix->components) {
      s += t.mu / static_cast<double>(t.n) * tail_weight(-1, d, lambda, beta, c_hit, static_cast<double>(t.n));
    }
    return s.value();
  }
  CompensatedSum s;
  for (const auto& [count, prob] : law.pmf()) {
    if (count > 0 && prob > 0.0) s += prob * tail_weight(-1, d, lambda, beta, c_hit, static_cast<double>(count));
  }
  return s.value();
}

MinMResult find_min_m(int d, double mu, double lambda, double beta, double c_hit, double target, int cap,
                      Method method) {
  MinMResult out;
  auto& cert = out.certificate;
  cert.method = method;
  cert.d = d;
  cert.mu = mu;
  cert.lambda = lambda;
  cert.beta = beta;
  cert.c_hit = c_hit;
  BoundParams p{d, mu, 1, lambda, beta, c_hit};
  p.validate();
  if (auto why = divergence_reason(d, lambda, beta)) {
    cert.reason = *why;
    return out;
  }
  for (int m = 1; m <= cap; ++m) {
    if (std::pow(static_cast<double>(d), m) > kMaxN) {
      cert.reason = "no m <= " + std::to_string(m - 1) + " reaches the target; d^" + std::to_string(m) +
                    " exceeds the particle-count range";
      return out;
    }
    p.m = m;
    auto report = total_bound(p, SumMode::numeric, method);
    out.scan.emplace_back(m, report.alpha);
    if (report.alpha < target) {
      out.m = m;
      cert.m = {m};
      cert.n = {power_u64(d, m)};
      cert.alpha = report.alpha;
      cert.region_sums = report.region_sums;
      cert.transient_certified = report.alpha < 1.0;
      cert.reason = cert.transient_certified ? "alpha < 1" : "alpha below target but not below 1";
      out.report = report;
      return out;
    }
  }
  cert.reason = "scan cap m <= " + std::to_string(cap) + " exceeded";
  return out;
}

double brw_m(int d, double theta) {
  const double dd = d;
  return std::exp(theta) / (dd + 1.0) + 2.0 * dd / (dd + 1.0) * std::exp(-theta);
}

BrwConstants brw_constants(int d, std::optional<double> theta) {
  if (d < 2) throw std::invalid_argument("brw_constants: d must be >= 2");
  BrwConstants c;
  c.theta_star = std::log(2.0 * d) / 2.0;
  c.m_theta = brw_m(d, theta.value_or(c.theta_star));
  c.m_star = std::sqrt(8.0 * d) / (d + 1.0);
  c.subcritical = c.m_star < 1.0;
  return c;
}

double two_type_c_hit(int d) {
  if (d < 6) throw std::invalid_argument("brw hitting bound requires d >= 6");
  return (d + 1.0) / (d + 1.0 - std::sqrt(8.0 * d));
}

double two_type_beta(int d) {
  if (d < 2) throw std::invalid_argument("two_type_beta: d must be >= 2");
  return std::log((d + 1.0) / 4.0) / std::log(static_cast<double>(d));
}

double brw_hit_bound(int d, int k) {
  if (k < 0) throw std::invalid_argument("brw_hit_bound: negative distance");
  return two_type_c_hit(d) * std::pow(4.0 / (d + 1.0), k);
}

double brw_visited_bound(int d, int k) {
  const auto c = brw_constants(d);
  if (!c.subcritical) throw std::invalid_argument("brw_visited_bound: requires m* < 1 (d >= 6)");
  return std::pow(4.0 * d / (d + 1.0), k) / (1.0 - c.m_star);
}

double biggins_m(const std::vector<Offspring>& spec, double lambda) {
  if (spec.empty()) throw std::invalid_argument("biggins_m: empty offspring spec");
  CompensatedSum s;
  for (const auto& o : spec) {
    if (!(o.expected >= 0.0) || !std::isfinite(o.expected)) {
      throw std::invalid_argument("biggins_m: expected counts must be finite and >= 0");
    }
    s += o.expected * std::exp(-lambda * o.displacement);
  }
  return s.value();
}

std::string_view biggins_class_name(BigginsClass c) {
  switch (c) {
    case BigginsClass::transient_plus: return "transient+";
    case BigginsClass::transient_minus: return "transient-";
    case BigginsClass::recurrent_at_grid: return "recurrent-at-grid";
  }
  return "?";
}

namespace {

std::pair<double, double> minimize_on_grid(const std::vector<Offspring>& spec, double lambda_max, int grid) {
  const double h = lambda_max / grid;
  int best = 1;
  double best_value = biggins_m(spec, h);
  for (int g = 2; g <= grid; ++g) {
    const double v = biggins_m(spec, g * h);
    if (v < best_value) {
      best_value = v;
      best = g;
    }
  }
  // Golden-section refinement on the bracketing grid cells, kept inside [h, lambda_max].
  double a = std::max(h, (best - 1) * h);
  double b = std::min(lambda_max, (best + 1) * h);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = biggins_m(spec, x1);
  double f2 = biggins_m(spec, x2);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = biggins_m(spec, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = biggins_m(spec, x2);
    }
  }
  const double x = (a + b) / 2.0;
  const double fx = biggins_m(spec, x);
  if (fx < best_value) return {x, fx};
  return {best * h, best_value};
}

}  // namespace

BigginsResult biggins_classify(const std::vector<Offspring>& spec, double lambda_max, int grid) {
  if (spec.empty()) throw std::invalid_argument("biggins_classify: empty offspring spec");
  if (!(lambda_max > 0.0) || grid < 2) throw std::invalid_argument("biggins_classify: bad grid");
  BigginsResult r;
  std::tie(r.lambda_plus, r.inf_plus) = minimize_on_grid(spec, lambda_max, grid);
  auto mirrored = spec;
  for (auto& o : mirrored) o.displacement = -o.displacement;
  std::tie(r.lambda_minus, r.inf_minus) = minimize_on_grid(mirrored, lambda_max, grid);
  if (r.inf_plus <= 1.0) {
    r.verdict = BigginsClass::transient_plus;
  } else if (r.inf_minus <= 1.0) {
    r.verdict = BigginsClass::transient_minus;
  } else {
    r.verdict = BigginsClass::recurrent_at_grid;
  }
  return r;
}

MixtureBuild build_infinite_mean_mixture(int d, double lambda, double mu_per_component, int n_max) {
  if (n_max < 1) throw std::invalid_argument("mixture: n_max must be >= 1");
  laws::Mixture mix;
  Certificate cert;
  cert.method = Method::infinite_mean;
  cert.d = d;
  cert.mu = mu_per_component;
  cert.lambda = lambda;
  CompensatedSum alpha;
  for (int n = 1; n <= n_max; ++n) {
    const double target = std::ldexp(1.0, -n);
    auto found = find_min_m(d, mu_per_component, lambda, 1.0, 1.0, target, kMaxM, Method::infinite_mean);
    if (!found.m) {
      throw std::runtime_error("mixture: component " + std::to_string(n) + " cannot reach 2^-" +
                               std::to_string(n) + ": " + found.certificate.reason);
    }
    cert.m.push_back(*found.m);
    cert.n.push_back(found.certificate.n.front());
    cert.component_alpha.push_back(found.report->alpha);
    alpha += found.report->alpha;
    mix.components.push_back(
        laws::TwoPoint{static_cast<laws::Count>(found.certificate.n.front()), mu_per_component});
  }
  mix.remainder_bound = std::ldexp(1.0, -n_max);
  alpha += mix.remainder_bound;
  cert.remainder_bound = mix.remainder_bound;
  cert.alpha = alpha.value();
  cert.transient_certified = *cert.alpha < 1.0;
  cert.reason = cert.transient_certified ? "sum of component alphas plus remainder < 1"
                                         : "sum of component alphas plus remainder >= 1";
  return MixtureBuild{laws::ParticleLaw(std::move(mix)), std::move(cert)};
}

MinMResult certify_two_type(int d, double mu) {
  const double lambda = 1.0 / std::sqrt(static_cast<double>(d));
  if (d < 6) {
    MinMResult out;
    out.certificate.method = Method::two_type;
    out.certificate.d = d;
    out.certificate.mu = mu;
    out.certificate.lambda = lambda;
    out.certificate.reason = "d < 6: the dominating branching walk is not subcritical";
    return out;
  }
  const double beta = two_type_beta(d);
  const double c_hit = two_type_c_hit(d);
  if (!(beta > 0.5)) {
    MinMResult out;
    out.certificate.method = Method::two_type;
    out.certificate.d = d;
    out.certificate.mu = mu;
    out.certificate.lambda = lambda;
    out.certificate.beta = beta;
    out.certificate.c_hit = c_hit;
    out.certificate.reason = "beta <= 1/2";
    return out;
  }
  return find_min_m(d, mu, lambda, beta, c_hit, 1.0, kMaxM, Method::two_type);
}

}  // namespace frogcert::analytic
