#include "frogcert/brw.hpp"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "frogcert/numeric.hpp"

namespace frogcert::brw {

BrwPopulation::BrwPopulation(int d, double theta, std::int64_t cap) : d_(d), theta_(theta), cap_(cap) {
  tree::TreeParams{d, tree::Mode::regular}.validate();
  if (!std::isfinite(theta)) throw std::invalid_argument("brw: theta must be finite");
  if (cap < 1) throw std::invalid_argument("brw: cap must be positive");
}

BrwPopulation BrwPopulation::at_root(int d, double theta) {
  BrwPopulation p(d, theta);
  p.add(tree::root());
  return p;
}

double BrwPopulation::particle_weight(const tree::Vertex& v) const { return std::exp(-theta_ * v.distance()); }

void BrwPopulation::add(const tree::Vertex& v, std::int64_t count) {
  if (count < 0) throw std::invalid_argument("brw: negative count");
  if (count == 0) return;
  if (size_ + count > cap_) throw GuardError("brw: population cap exceeded");
  particles_[v] += count;
  size_ += count;
  weight_ += static_cast<double>(count) * particle_weight(v);
}

double BrwPopulation::recompute_weight() const {
  CompensatedSum s;
  for (const auto& [v, c] : particles_) s += static_cast<double>(c) * particle_weight(v);
  return s.value();
}

BrwPopulation step_dominating_brw(const BrwPopulation& pop, CounterRng& rng) {
  BrwPopulation next(pop.d_, pop.theta_, pop.cap_);
  next.generation_ = pop.generation_ + 1;
  const tree::TreeParams params{pop.d_, tree::Mode::regular};
  const int slots = pop.d_ + 1;
  CompensatedSum weight;
  for (const auto& [v, count] : pop.particles_) {
    // Multinomial split of `count` particles over the d+1 neighbors.
    std::int64_t left = count;
    for (int slot = 0; slot < slots && left > 0; ++slot) {
      std::int64_t here = left;
      if (slot + 1 < slots) {
        std::binomial_distribution<std::int64_t> pick(left, 1.0 / (slots - slot));
        here = pick(rng);
      }
      left -= here;
      if (here == 0) continue;
      const auto u = tree::neighbor(v, slot, params);
      const std::int64_t offspring = u.distance() < v.distance() ? here : 2 * here;
      if (next.size_ + offspring > next.cap_) throw GuardError("brw: population cap exceeded");
      next.particles_[u] += offspring;
      next.size_ += offspring;
      weight += static_cast<double>(offspring) * next.particle_weight(u);
    }
  }
  next.weight_ = weight.value();
  return next;
}

std::vector<double> dominating_weight_path(int d, double theta, int n, CounterRng& rng) {
  if (d < 2) throw std::invalid_argument("brw: d must be >= 2");
  if (n < 0 || n > 62) throw std::invalid_argument("brw: path length must lie in [0, 62]");
  std::vector<std::int64_t> profile(static_cast<std::size_t>(n) + 2, 0);
  profile[0] = 1;
  std::vector<double> path{1.0};
  const double toward = 1.0 / (d + 1.0);
  for (int t = 1; t <= n; ++t) {
    std::vector<std::int64_t> next(profile.size(), 0);
    for (std::size_t k = 0; k + 1 < profile.size(); ++k) {
      const auto c = profile[k];
      if (c == 0) continue;
      if (k == 0) {
        next[1] += 2 * c;
        continue;
      }
      std::binomial_distribution<std::int64_t> back(c, toward);
      const auto b = back(rng);
      next[k - 1] += b;
      next[k + 1] += 2 * (c - b);
    }
    profile = std::move(next);
    CompensatedSum w;
    for (std::size_t k = 0; k < profile.size(); ++k) {
      if (profile[k] > 0) w += static_cast<double>(profile[k]) * std::exp(-theta * static_cast<double>(k));
    }
    path.push_back(w.value());
  }
  return path;
}

VisitedCountCheck visited_count_bound_check(int d, int k, std::int64_t replicas, std::uint64_t seed, int horizon,
                                            int r_kill) {
  if (d < 6) throw std::invalid_argument("visited_count_bound_check: requires d >= 6");
  if (k < 0 || k > 6) throw std::invalid_argument("visited_count_bound_check: k must lie in [0, 6]");
  if (replicas < 1) throw std::invalid_argument("visited_count_bound_check: replicas must be >= 1");
  if (horizon < 0) throw std::invalid_argument("visited_count_bound_check: negative horizon");
  if (r_kill < 0) r_kill = k + 4;
  if (r_kill < k) throw std::invalid_argument("visited_count_bound_check: r_kill below k");
  VisitedCountCheck out;
  out.bound = analytic::brw_visited_bound(d, k);
  out.replicas = replicas;
  out.horizon = horizon;
  out.r_kill = r_kill;
  const double theta = analytic::brw_constants(d).theta_star;
  RunningStats stats;
  for (std::int64_t r = 0; r < replicas; ++r) {
    CounterRng rng(stream_key(seed, r, StreamTag::brw));
    auto pop = BrwPopulation::at_root(d, theta);
    std::set<tree::Vertex> seen;
    if (k == 0) seen.insert(tree::root());
    try {
      for (int t = 1; t <= horizon && pop.size() > 0; ++t) {
        auto next = step_dominating_brw(pop, rng);
        BrwPopulation kept(d, theta, pop.cap());
        for (const auto& [v, c] : next.particles()) {
          if (v.distance() == k) seen.insert(v);
          if (v.distance() <= r_kill) kept.add(v, c);
        }
        pop = std::move(kept);
      }
    } catch (const GuardError&) {
      out.capped = true;
    }
    stats.add(static_cast<double>(seen.size()));
  }
  out.estimate = stats.mean();
  out.stderr_mean = stats.stderr_mean();
  return out;
}

TreeOffspringRule TreeOffspringRule::random_walk(int d) {
  return TreeOffspringRule{d, std::vector<double>(static_cast<std::size_t>(d) + 1, 1.0 / (d + 1.0)), 0.0, 0.0};
}

TreeOffspringRule TreeOffspringRule::dominating(int d) {
  TreeOffspringRule r{d, std::vector<double>(static_cast<std::size_t>(d) + 1, 2.0 / (d + 1.0)), 0.0, 0.0};
  r.per_neighbor[0] = 1.0 / (d + 1.0);
  return r;
}

std::vector<analytic::Offspring> project_to_Z(const TreeOffspringRule& rule) {
  tree::TreeParams{rule.d, tree::Mode::regular}.validate();
  if (rule.per_neighbor.size() != static_cast<std::size_t>(rule.d) + 1) {
    throw std::invalid_argument("project_to_Z: need one expected count per neighbor (d+1)");
  }
  if (rule.stay != 0.0 || rule.non_neighbor != 0.0) {
    throw std::invalid_argument("project_to_Z: rule is not nearest-neighbor");
  }
  for (const double e : rule.per_neighbor) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw std::invalid_argument("project_to_Z: expected counts must be >= 0");
  }
  CompensatedSum up;
  for (int i = 1; i <= rule.d; ++i) {
    if (std::abs(rule.per_neighbor[i] - rule.per_neighbor[1]) > 1e-12 * std::max(1.0, rule.per_neighbor[1])) {
      throw std::invalid_argument("project_to_Z: children must be treated alike");
    }
    up += rule.per_neighbor[i];
  }
  return {{-1, rule.per_neighbor[0]}, {+1, up.value()}};
}

}  // namespace frogcert::brw
