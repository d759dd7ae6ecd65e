#include <doctest.h>

#include <cmath>
#include <set>

#include "frogcert/laws.hpp"
#include "frogcert/numeric.hpp"

using namespace frogcert;
using namespace frogcert::laws;

namespace {

RunningStats draw(const ParticleLaw& law, int n, std::uint64_t key) {
  CounterRng rng(key);
  RunningStats s;
  for (int i = 0; i < n; ++i) s.add(static_cast<double>(law.sample(rng)));
  return s;
}

}  // namespace

TEST_CASE("two-point frequency and moments") {
  const auto law = ParticleLaw::two_point(4, 1.0);
  CounterRng rng(7);
  int fours = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto c = law.sample(rng);
    CHECK((c == 0 || c == 4));
    fours += c == 4;
  }
  const double p = 0.25, se = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(fours / double(n) - p) < 3 * se);

  const auto big = ParticleLaw::two_point(64, 5.0);
  const auto s = draw(big, 1000000, 11);
  CHECK(std::abs(s.mean() - 5.0) < 4 * s.stderr_mean());
  // mu N - mu^2, relative tolerance generous for a heavy two-point variance.
  CHECK(s.variance() == doctest::Approx(5.0 * 64 - 25.0).epsilon(0.02));
  CHECK(big.mean().value == 5.0);
}

TEST_CASE("empirical means of finite laws") {
  for (const auto& law : {ParticleLaw::constant(3), ParticleLaw::poisson(2.5), ParticleLaw::two_point(10, 3.0),
                          ParticleLaw::plus_one(ParticleLaw::two_point(8, 2.0)),
                          ParticleLaw(FinitePmf{{{0, 0.5}, {2, 0.25}, {7, 0.25}}})}) {
    const auto s = draw(law, 1000000, 3);
    CHECK(std::abs(s.mean() - law.mean().value) <= 4 * s.stderr_mean() + 1e-12);
  }
}

TEST_CASE("plus one and mixture") {
  const auto shifted = ParticleLaw::plus_one(ParticleLaw::two_point(5, 1.0));
  CounterRng rng(1);
  for (int i = 0; i < 1000; ++i) CHECK(shifted.sample(rng) >= 1);
  CHECK(shifted.mean().value == 2.0);
  REQUIRE(shifted.inner() != nullptr);
  CHECK(shifted.inner()->mean().value == 1.0);

  const ParticleLaw mix(Mixture{{{4, 1.0}, {16, 1.0}}, 0.25});
  std::set<Count> seen;
  for (int i = 0; i < 20000; ++i) seen.insert(mix.sample(rng));
  for (auto c : seen) CHECK((c == 0 || c == 4 || c == 16 || c == 20));
  CHECK(seen.size() == 4);
  CHECK(mix.mean().value == 2.0);
  CHECK(mix.mean().untruncated_infinite);
  CHECK(mix.max_count() == 20);

  const auto pmf = mix.pmf();
  REQUIRE(pmf.size() == 4);
  CHECK(pmf[3].first == 20);
  CHECK(pmf[3].second == doctest::Approx(0.25 * 0.0625));

  Mixture k;
  for (int i = 1; i <= 7; ++i) k.components.push_back({Count{1} << i, 1.0});
  CHECK(ParticleLaw(k).mean().value == 7.0);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(ParticleLaw::two_point(4, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(ParticleLaw::two_point(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ParticleLaw(FinitePmf{{{1, 0.5}}}), std::invalid_argument);
  CHECK_THROWS_AS(ParticleLaw(FinitePmf{{{1, 1.5}, {2, -0.5}}}), std::invalid_argument);
  CHECK_THROWS_AS(ParticleLaw(FinitePmf{{{-1, 1.0}}}), std::invalid_argument);
  CHECK_THROWS_AS(ParticleLaw(Mixture{{}, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(ParticleLaw(Mixture{{{Count{1} << 61, 1.0}, {Count{1} << 61, 1.0}}, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(ParticleLaw::poisson(-1.0), std::invalid_argument);
  CHECK_NOTHROW(ParticleLaw(FinitePmf{{{1, 0.5}, {2, 0.5 + 5e-13}}}));
}

TEST_CASE("poisson pmf") {
  const auto law = ParticleLaw::poisson(4.0);
  double total = 0.0;
  for (const auto& [c, p] : law.pmf()) {
    total += p;
    if (c == 2) CHECK(p == doctest::Approx(8.0 * std::exp(-4.0)));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(law.mean().value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(ParticleLaw::poisson(2000.0).mean().value == doctest::Approx(2000.0).epsilon(1e-9));
}

TEST_CASE("parsing and serialization") {
  CHECK(parse_law(std::string("twopoint:16:2")).mean().value == 2.0);
  CHECK(parse_law(std::string("const:3")).max_count() == 3);
  CHECK(parse_law(std::string("plusone:twopoint:4:1")).mean().value == 2.0);
  CHECK(parse_law(std::string("pmf:0=0.5,4=0.5")).mean().value == 2.0);
  CHECK(parse_law(std::string("poisson:1.5")).mean().value == doctest::Approx(1.5));
  CHECK_THROWS_AS(parse_law(std::string("twopoint:x:1")), std::invalid_argument);
  CHECK_THROWS_AS(parse_law(std::string("geometric:2")), std::invalid_argument);

  const auto j = nlohmann::json::parse(R"({"type":"plus_one","inner":{"type":"two_point","N":8,"mu":2}})");
  const auto law = parse_law(j);
  CHECK(law.mean().value == 3.0);
  CHECK(to_json(parse_law(to_json(law))) == to_json(law));
  const ParticleLaw mix(Mixture{{{4, 1.0}, {16, 0.5}}, 0.125});
  CHECK(to_json(parse_law(to_json(mix))) == to_json(mix));

  CHECK_THROWS_AS(parse_law(nlohmann::json::parse(R"({"type":"two_point","N":8,"mu":2,"x":1})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_law(nlohmann::json::parse(R"({"type":"two_point","N":8})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_law(nlohmann::json::parse(R"({"type":"gamma"})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_law(nlohmann::json::parse("[1,2]")), std::invalid_argument);
}
