#pragma once

// Sleeping-particle count distributions.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "frogcert/rng.hpp"

namespace frogcert::laws {

using Count = std::int64_t;

/// N particles with probability mu/N, none otherwise. Mean mu.
struct TwoPoint {
  Count n = 1;
  double mu = 1.0;
};

struct FinitePmf {
  std::vector<std::pair<Count, double>> support;
};

/// X = X_1 + ... + X_nmax with independent X_n ~ TwoPoint(N_n, mu_n).
/// `remainder_bound` is the certified bound on the expected weight neglected
/// by cutting the series at n_max.
struct Mixture {
  std::vector<TwoPoint> components;
  double remainder_bound = 0.0;
};

class ParticleLaw;

/// One extra particle on top of an inner law.
struct PlusOne {
  std::shared_ptr<const ParticleLaw> inner;
};

class ParticleLaw {
public:
  using Variant = std::variant<TwoPoint, PlusOne, FinitePmf, Mixture>;

  /// Validates on construction; throws std::invalid_argument.
  ParticleLaw(Variant v);  // NOLINT(google-explicit-constructor)

  static ParticleLaw two_point(Count n, double mu) { return ParticleLaw(TwoPoint{n, mu}); }
  static ParticleLaw constant(Count c) { return ParticleLaw(FinitePmf{{{c, 1.0}}}); }
  static ParticleLaw plus_one(ParticleLaw inner) {
    return ParticleLaw(PlusOne{std::make_shared<const ParticleLaw>(std::move(inner))});
  }
  /// Poisson(mean) cut where the upper tail drops below 1e-16, renormalized.
  static ParticleLaw poisson(double mean);

  const Variant& variant() const { return v_; }

  /// The two-type split: for PlusOne, the inner law; otherwise nullptr.
  const ParticleLaw* inner() const;

  Count sample(CounterRng& rng) const;

  struct Mean {
    double value = 0.0;
    /// True for a truncated mixture whose untruncated construction has infinite mean.
    bool untruncated_infinite = false;
  };
  Mean mean() const;

  /// Exact point masses. Throws std::length_error past `max_atoms`
  /// (a mixture of n components has up to 2^n atoms).
  std::vector<std::pair<Count, double>> pmf(std::size_t max_atoms = 1U << 20) const;

  /// Largest count with positive probability.
  Count max_count() const;

  std::string describe() const;

private:
  Variant v_;
};

/// Parses either the JSON tagged union
///   {"type":"two_point","N":..,"mu":..} | {"type":"plus_one","inner":{..}} |
///   {"type":"pmf","support":[[count,prob],..]} |
///   {"type":"mixture","components":[{"N":..,"mu":..},..],"remainder_bound":..}
/// or one of the shorthands "twopoint:N:mu", "const:c", "poisson:mean",
/// "pmf:c1=p1,c2=p2", "plusone:<law>". Unknown JSON fields are rejected.
ParticleLaw parse_law(const nlohmann::json& j);
ParticleLaw parse_law(const std::string& spec);

nlohmann::json to_json(const ParticleLaw& law);

}  // namespace frogcert::laws
