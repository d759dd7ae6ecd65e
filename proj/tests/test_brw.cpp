#include <doctest.h>

#include <cmath>

#include "frogcert/analytic.hpp"
#include "frogcert/brw.hpp"
#include "frogcert/numeric.hpp"

using namespace frogcert;
using brw::BrwPopulation;

namespace {

tree::Vertex at_distance(int k, bool up) {
  tree::Vertex v;
  if (up) {
    v.up = static_cast<std::uint32_t>(k);
  } else {
    v.word.assign(static_cast<std::size_t>(k), 1);
  }
  return v;
}

}  // namespace

TEST_CASE("root particle branches deterministically") {
  const int d = 6;
  const double theta = analytic::brw_constants(d).theta_star;
  for (std::uint64_t s = 0; s < 50; ++s) {
    CounterRng rng(stream_key(s, StreamTag::brw));
    const auto next = brw::step_dominating_brw(BrwPopulation::at_root(d, theta), rng);
    CHECK(next.size() == 2);
    CHECK(next.particles().size() == 1);
    CHECK(next.generation() == 1);
    CHECK(next.weight() == doctest::Approx(2.0 * std::exp(-theta)).epsilon(1e-14));
  }
}

TEST_CASE("one-step weight ratio is m(theta) off the root") {
  const int d = 6;
  const auto k = analytic::brw_constants(d);
  for (const bool up : {false, true}) {
    for (int dist : {1, 3}) {
      RunningStats ratio;
      for (std::uint64_t s = 0; s < 10000; ++s) {
        BrwPopulation pop(d, k.theta_star);
        pop.add(at_distance(dist, up));
        CounterRng rng(stream_key(s, dist, up, StreamTag::brw));
        const auto next = brw::step_dominating_brw(pop, rng);
        ratio.add(next.weight() / pop.weight());
      }
      CHECK(std::abs(ratio.mean() - k.m_theta) <= 3.0 * ratio.stderr_mean());
    }
  }
  // At the root the ratio is 2e^{-theta}, below m.
  CHECK(2.0 * std::exp(-k.theta_star) < k.m_theta);
}

TEST_CASE("E W_n stays under m^n") {
  const int d = 6;
  const auto k = analytic::brw_constants(d);
  const int n = 20;
  std::vector<RunningStats> w(n + 1);
  for (std::uint64_t s = 0; s < 4000; ++s) {
    CounterRng rng(stream_key(s, StreamTag::brw));
    const auto path = brw::dominating_weight_path(d, k.theta_star, n, rng);
    REQUIRE(path.size() == static_cast<std::size_t>(n + 1));
    CHECK(path[0] == 1.0);
    for (int i = 0; i <= n; ++i) w[i].add(path[i]);
  }
  for (int i = 0; i <= n; ++i) {
    CHECK(w[i].mean() <= std::pow(k.m_theta, i) + 3.0 * w[i].stderr_mean());
  }
}

TEST_CASE("population and distance-profile walks agree") {
  const int d = 6;
  const double theta = analytic::brw_constants(d).theta_star;
  const int n = 7;
  RunningStats full, profile;
  for (std::uint64_t s = 0; s < 3000; ++s) {
    CounterRng a(stream_key(s, 1, StreamTag::brw));
    auto pop = BrwPopulation::at_root(d, theta);
    for (int i = 0; i < n; ++i) {
      pop = brw::step_dominating_brw(pop, a);
      CHECK(pop.size() >= 1);
      CHECK(pop.size() <= (std::int64_t{1} << (i + 1)));
      CHECK(pop.generation() == i + 1);
    }
    CHECK(pop.weight() == doctest::Approx(pop.recompute_weight()).epsilon(1e-9));
    for (const auto& [v, c] : pop.particles()) {
      CHECK(pop.particle_weight(v) == std::exp(-theta * v.distance()));
      CHECK(c >= 1);
    }
    full.add(pop.weight());
    CounterRng b(stream_key(s, 2, StreamTag::brw));
    profile.add(brw::dominating_weight_path(d, theta, n, b).back());
  }
  const double se = std::hypot(full.stderr_mean(), profile.stderr_mean());
  CHECK(std::abs(full.mean() - profile.mean()) <= 4.0 * se);
}

TEST_CASE("population cap") {
  BrwPopulation pop(2, 0.5, 8);
  pop.add(tree::root());
  CounterRng rng(stream_key(3, StreamTag::brw));
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 10; ++i) pop = brw::step_dominating_brw(pop, rng);
      }(),
      GuardError);
  CHECK_THROWS_AS(pop.add(tree::root(), 100), GuardError);
}

TEST_CASE("visited-count check") {
  const auto zero = brw::visited_count_bound_check(6, 0, 100, 1);
  CHECK(zero.estimate == 1.0);
  CHECK(zero.stderr_mean == 0.0);
  CHECK(zero.estimate <= zero.bound);
  CHECK(zero.censored);

  const auto two = brw::visited_count_bound_check(6, 2, 400, 7);
  const double m = std::sqrt(48.0) / 7.0;
  CHECK(two.bound == doctest::Approx(std::pow(24.0 / 7.0, 2) / (1.0 - m)).epsilon(1e-12));
  CHECK(two.estimate > 0.0);
  CHECK(two.estimate <= two.bound);
  CHECK_FALSE(two.capped);

  for (int d : {6, 9, 30}) {
    const double r = analytic::brw_visited_bound(d, 4) / analytic::brw_visited_bound(d, 3);
    CHECK(r == doctest::Approx(4.0 * d / (d + 1.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(brw::visited_count_bound_check(5, 1, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(brw::visited_count_bound_check(6, 7, 10, 1), std::invalid_argument);
}

TEST_CASE("projection to the integers") {
  for (int d : {2, 6, 11}) {
    const auto dom = brw::project_to_Z(brw::TreeOffspringRule::dominating(d));
    REQUIRE(dom.size() == 2);
    CHECK(dom[0].displacement == -1);
    CHECK(dom[0].expected == doctest::Approx(1.0 / (d + 1.0)).epsilon(1e-15));
    CHECK(dom[1].displacement == 1);
    CHECK(dom[1].expected == doctest::Approx(2.0 * d / (d + 1.0)).epsilon(1e-15));

    const auto rw = brw::project_to_Z(brw::TreeOffspringRule::random_walk(d));
    CHECK(rw[0].expected == doctest::Approx(1.0 / (d + 1.0)).epsilon(1e-15));
    CHECK(rw[1].expected == doctest::Approx(d / (d + 1.0)).epsilon(1e-15));

    const auto k = analytic::brw_constants(d);
    CHECK(analytic::biggins_m(dom, k.theta_star) == doctest::Approx(k.m_star).epsilon(1e-12));
  }

  auto lazy = brw::TreeOffspringRule::random_walk(3);
  lazy.stay = 0.1;
  CHECK_THROWS_AS(brw::project_to_Z(lazy), std::invalid_argument);
  auto far = brw::TreeOffspringRule::random_walk(3);
  far.non_neighbor = 0.2;
  CHECK_THROWS_AS(brw::project_to_Z(far), std::invalid_argument);
  auto lopsided = brw::TreeOffspringRule::random_walk(3);
  lopsided.per_neighbor[1] += 0.1;
  CHECK_THROWS_AS(brw::project_to_Z(lopsided), std::invalid_argument);
}
