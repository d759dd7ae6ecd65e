#include "frogcert/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "engine.hpp"
#include "frogcert/numeric.hpp"

namespace frogcert::blocks {

using sim::detail::Id;
using tree::LocalTree;

std::string_view variant_name(Variant v) { return v == Variant::plain ? "plain" : "two_type"; }

Variant parse_variant(std::string_view name) {
  if (name == "plain") return Variant::plain;
  if (name == "two_type" || name == "two-type") return Variant::two_type;
  throw std::invalid_argument("unknown block variant: " + std::string(name));
}

std::optional<double> alpha_reference(const sim::SimConfig& config, Variant variant) {
  const int d = config.tree.d;
  if (config.tree.mode != tree::Mode::regular) return std::nullopt;
  if (variant == Variant::plain) {
    if (analytic::divergence_reason(d, config.lambda, 1.0)) return std::nullopt;
    return analytic::alpha_for_law(config.law, d, config.lambda);
  }
  const auto* inner = config.law.inner();
  if (inner == nullptr || d < 6) return std::nullopt;
  const double beta = analytic::two_type_beta(d);
  if (analytic::divergence_reason(d, config.lambda, beta)) return std::nullopt;
  return analytic::alpha_for_law(*inner, d, config.lambda, beta, analytic::two_type_c_hit(d));
}

BlockSequence run_blocks(const sim::SimConfig& config, int n_max, Variant variant, std::uint64_t replica) {
  config.validate();
  if (n_max < 1) throw std::invalid_argument("run_blocks: n_max must be >= 1");
  if (n_max > 64) throw std::invalid_argument("run_blocks: n_max must be <= 64");
  const laws::ParticleLaw* launch_law = &config.law;
  if (variant == Variant::two_type) {
    launch_law = config.law.inner();
    if (launch_law == nullptr) throw std::invalid_argument("run_blocks: two_type needs a plus_one law");
  }
  const auto model = variant == Variant::plain ? sim::detail::BiasModel::plain(config)
                                               : sim::detail::BiasModel::two_type(config);

  sim::detail::SiteEngine engine(config, replica);
  auto& tree = engine.tree();
  BlockSequence seq;
  seq.alpha_ref = alpha_reference(config, variant);
  seq.bias_certified = model.certified;

  auto record = [&](const std::vector<Id>& sites, double bias) {
    sim::VisitSet set;
    CompensatedSum w;
    for (const Id x : sites) {
      if (tree.distance(x) > config.r_record) continue;
      set.vertices.push_back(tree.vertex(x));
      w += std::pow(config.lambda, tree.level(x));
    }
    std::sort(set.vertices.begin(), set.vertices.end());
    set.weight = w.value();
    set.bias_certified = seq.bias_certified;
    set.bias_bound = seq.bias_certified ? bias : 0.0;
    seq.weights.push_back(set.weight);
    seq.bias_bounds.push_back(set.bias_bound);
    seq.blocks.push_back(std::move(set));
  };

  std::vector<Id> current{LocalTree::root()};
  engine.mark(LocalTree::root());
  record(current, 0.0);

  bool guarded = false;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Id> fresh;
    CompensatedSum bias;
    const auto killed_before = engine.killed_radius();
    const auto time_killed_before = engine.killed_time_distances().size();
    if (!guarded) {
      try {
        std::vector<sim::detail::Walker> launched;
        for (const Id site : current) {
          auto count = engine.launch_count(site, *launch_law);
          for (laws::Count i = 0; i < count; ++i) {
            launched.push_back(engine.make_walker(site, engine.launch_index(site, i)));
          }
          // The root's type-1 particle is awake from the start.
          if (variant == Variant::two_type && n == 1 && config.root == sim::RootStart::sampled) {
            launched.push_back(engine.make_walker(site, sim::kTypeOneWalker));
            ++count;
          }
          bias += model.launch(config, tree, site, static_cast<double>(count));
          if (variant == Variant::plain) {
            for (auto& w : launched) engine.walk(w, [&](Id x) { fresh.push_back(x); });
            launched.clear();
          }
        }
        if (variant == Variant::two_type) engine.cascade(std::move(launched), fresh);
      } catch (const GuardError&) {
        guarded = true;
        seq.truncated = true;
        seq.bias_certified = false;
      }
    }
    const auto killed = engine.killed_radius() - killed_before;
    for (std::size_t i = time_killed_before; i < engine.killed_time_distances().size(); ++i) {
      bias += model.stopped(config, engine.killed_time_distances()[i]);
    }
    bias += static_cast<double>(killed) * model.stopped(config, config.r_kill + 1);
    if (killed > 0 || engine.killed_time_distances().size() > time_killed_before) seq.truncated = true;
    record(fresh, bias.value());
    seq.blocks.back().killed = killed;
    current = std::move(fresh);
  }
  if (!seq.bias_certified) {
    for (auto& b : seq.blocks) {
      b.bias_certified = false;
      b.bias_bound = 0.0;
    }
    std::fill(seq.bias_bounds.begin(), seq.bias_bounds.end(), 0.0);
  }
  for (auto& b : seq.blocks) b.truncated = seq.truncated;
  seq.all_visited = sim::detail::collect_vertices(tree, [&](Id id) { return engine.visited(id); });
  return seq;
}

analytic::Certificate certify(const CertifyRequest& r) {
  tree::TreeParams{r.d, tree::Mode::regular}.validate();
  if (!(r.mu > 0.0) || !std::isfinite(r.mu)) throw std::invalid_argument("certify: mu must be positive and finite");
  const double lambda = r.lambda.value_or(1.0 / std::sqrt(static_cast<double>(r.d)));
  switch (r.method) {
    case analytic::Method::two_point:
      return analytic::find_min_m(r.d, r.mu, lambda).certificate;
    case analytic::Method::infinite_mean:
      if (r.n_max < 1) throw std::invalid_argument("certify: n_max must be >= 1");
      return analytic::build_infinite_mean_mixture(r.d, lambda, r.mu, r.n_max).certificate;
    case analytic::Method::two_type:
      if (r.lambda && std::abs(*r.lambda - 1.0 / std::sqrt(static_cast<double>(r.d))) > 1e-15) {
        throw std::invalid_argument("certify: the two-type pipeline fixes lambda = 1/sqrt(d)");
      }
      return analytic::certify_two_type(r.d, r.mu).certificate;
  }
  throw std::invalid_argument("certify: unknown method");
}

}  // namespace frogcert::blocks
