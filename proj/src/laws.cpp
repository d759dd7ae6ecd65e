#include "frogcert/laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace frogcert::laws {

namespace {

constexpr Count kMaxCount = std::numeric_limits<Count>::max() / 4;

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

void check_two_point(const TwoPoint& t) {
  if (t.n < 1) throw std::invalid_argument("two_point: N must be positive");
  if (!(t.mu > 0.0) || !std::isfinite(t.mu)) throw std::invalid_argument("two_point: mu must be positive");
  if (t.mu > static_cast<double>(t.n)) throw std::invalid_argument("two_point: requires mu <= N");
  if (t.n > kMaxCount) throw std::invalid_argument("two_point: N exceeds the count range");
}

}  // namespace

ParticleLaw::ParticleLaw(Variant v) : v_(std::move(v)) {
  std::visit(Overload{
                 [](const TwoPoint& t) { check_two_point(t); },
                 [](const PlusOne& p) {
                   if (!p.inner) throw std::invalid_argument("plus_one: missing inner law");
                   if (p.inner->max_count() >= kMaxCount) throw std::invalid_argument("plus_one: count overflow");
                 },
                 [](const FinitePmf& f) {
                   if (f.support.empty()) throw std::invalid_argument("pmf: empty support");
                   double total = 0.0;
                   for (const auto& [c, p] : f.support) {
                     if (c < 0 || c > kMaxCount) throw std::invalid_argument("pmf: count out of range");
                     if (!(p >= 0.0)) throw std::invalid_argument("pmf: negative probability");
                     total += p;
                   }
                   if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("pmf: probabilities must sum to 1");
                 },
                 [](const Mixture& m) {
                   if (m.components.empty()) throw std::invalid_argument("mixture: no components");
                   if (!(m.remainder_bound >= 0.0)) throw std::invalid_argument("mixture: negative remainder bound");
                   Count total = 0;
                   for (const auto& t : m.components) {
                     check_two_point(t);
                     if (t.n > kMaxCount - total) throw std::invalid_argument("mixture: count overflow");
                     total += t.n;
                   }
                 },
             },
             v_);
}

ParticleLaw ParticleLaw::poisson(double mean) {
  if (!(mean > 0.0) || mean > 1e6) throw std::invalid_argument("poisson: mean out of range");
  FinitePmf f;
  double cumulative = 0.0;
  for (Count k = 0;; ++k) {
    const double kk = static_cast<double>(k);
    const double p = std::exp(kk * std::log(mean) - mean - std::lgamma(kk + 1.0));
    if (p > 0.0) {
      f.support.emplace_back(k, p);
      cumulative += p;
    }
    // Past the mode the terms fall faster than geometrically.
    if (kk > mean && p < 1e-17) break;
  }
  for (auto& [c, q] : f.support) q /= cumulative;
  return ParticleLaw(std::move(f));
}

const ParticleLaw* ParticleLaw::inner() const {
  if (const auto* p = std::get_if<PlusOne>(&v_)) return p->inner.get();
  return nullptr;
}

Count ParticleLaw::sample(CounterRng& rng) const {
  return std::visit(Overload{
                        [&](const TwoPoint& t) -> Count {
                          return rng.bernoulli(t.mu / static_cast<double>(t.n)) ? t.n : 0;
                        },
                        [&](const PlusOne& p) -> Count { return 1 + p.inner->sample(rng); },
                        [&](const FinitePmf& f) -> Count {
                          const double u = rng.uniform();
                          double acc = 0.0;
                          for (const auto& [c, p] : f.support) {
                            acc += p;
                            if (u < acc) return c;
                          }
                          // u landed in the rounding slack above the last cumulative sum.
                          for (auto it = f.support.rbegin(); it != f.support.rend(); ++it) {
                            if (it->second > 0.0) return it->first;
                          }
                          return f.support.back().first;
                        },
                        [&](const Mixture& m) -> Count {
                          Count total = 0;
                          for (const auto& t : m.components) {
                            total += rng.bernoulli(t.mu / static_cast<double>(t.n)) ? t.n : 0;
                          }
                          return total;
                        },
                    },
                    v_);
}

ParticleLaw::Mean ParticleLaw::mean() const {
  return std::visit(Overload{
                        [](const TwoPoint& t) { return Mean{t.mu, false}; },
                        [](const PlusOne& p) {
                          auto m = p.inner->mean();
                          m.value += 1.0;
                          return m;
                        },
                        [](const FinitePmf& f) {
                          double s = 0.0;
                          for (const auto& [c, p] : f.support) s += static_cast<double>(c) * p;
                          return Mean{s, false};
                        },
                        [](const Mixture& m) {
                          double s = 0.0;
                          for (const auto& t : m.components) s += t.mu;
                          return Mean{s, true};
                        },
                    },
                    v_);
}

std::vector<std::pair<Count, double>> ParticleLaw::pmf(std::size_t max_atoms) const {
  auto merged = [](std::map<Count, double> m) { return std::vector<std::pair<Count, double>>(m.begin(), m.end()); };
  return std::visit(Overload{
                        [&](const TwoPoint& t) {
                          const double q = t.mu / static_cast<double>(t.n);
                          return merged({{0, 1.0 - q}, {t.n, q}});
                        },
                        [&](const PlusOne& p) {
                          auto inner = p.inner->pmf(max_atoms);
                          for (auto& [c, q] : inner) ++c;
                          return inner;
                        },
                        [&](const FinitePmf& f) {
                          std::map<Count, double> m;
                          for (const auto& [c, p] : f.support) m[c] += p;
                          return merged(std::move(m));
                        },
                        [&](const Mixture& mix) {
                          std::map<Count, double> m{{0, 1.0}};
                          for (const auto& t : mix.components) {
                            const double q = t.mu / static_cast<double>(t.n);
                            std::map<Count, double> next;
                            for (const auto& [c, p] : m) {
                              next[c] += p * (1.0 - q);
                              next[c + t.n] += p * q;
                            }
                            if (next.size() > max_atoms) throw std::length_error("pmf: too many atoms");
                            m = std::move(next);
                          }
                          return merged(std::move(m));
                        },
                    },
                    v_);
}

Count ParticleLaw::max_count() const {
  return std::visit(Overload{
                        [](const TwoPoint& t) { return t.n; },
                        [](const PlusOne& p) { return 1 + p.inner->max_count(); },
                        [](const FinitePmf& f) {
                          Count m = 0;
                          for (const auto& [c, p] : f.support) {
                            if (p > 0.0) m = std::max(m, c);
                          }
                          return m;
                        },
                        [](const Mixture& mix) {
                          Count s = 0;
                          for (const auto& t : mix.components) s += t.n;
                          return s;
                        },
                    },
                    v_);
}

std::string ParticleLaw::describe() const { return to_json(*this).dump(); }

namespace {

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw std::invalid_argument("law: unknown field '" + key + "'");
    }
  }
}

TwoPoint parse_two_point(const nlohmann::json& j) {
  return TwoPoint{j.at("N").get<Count>(), j.at("mu").get<double>()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

namespace {

ParticleLaw parse_law_object(const nlohmann::json& j) {
  if (j.is_string()) return parse_law(j.get<std::string>());
  if (!j.is_object()) throw std::invalid_argument("law: expected an object or a shorthand string");
  const auto type = j.at("type").get<std::string>();
  if (type == "two_point") {
    reject_unknown(j, {"type", "N", "mu"});
    return ParticleLaw(parse_two_point(j));
  }
  if (type == "plus_one") {
    reject_unknown(j, {"type", "inner"});
    return ParticleLaw::plus_one(parse_law_object(j.at("inner")));
  }
  if (type == "pmf") {
    reject_unknown(j, {"type", "support"});
    FinitePmf f;
    for (const auto& atom : j.at("support")) f.support.emplace_back(atom.at(0).get<Count>(), atom.at(1).get<double>());
    return ParticleLaw(std::move(f));
  }
  if (type == "mixture") {
    reject_unknown(j, {"type", "components", "remainder_bound"});
    Mixture m;
    for (const auto& c : j.at("components")) {
      reject_unknown(c, {"N", "mu"});
      m.components.push_back(parse_two_point(c));
    }
    m.remainder_bound = j.value("remainder_bound", 0.0);
    return ParticleLaw(std::move(m));
  }
  throw std::invalid_argument("law: unknown type '" + type + "'");
}

}  // namespace

ParticleLaw parse_law(const nlohmann::json& j) {
  try {
    return parse_law_object(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("law: ") + e.what());
  }
}

ParticleLaw parse_law(const std::string& spec) {
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  const auto rest = colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
  try {
    if (head == "twopoint") {
      const auto parts = split(rest, ':');
      if (parts.size() != 2) throw std::invalid_argument("expected twopoint:N:mu");
      return ParticleLaw::two_point(std::stoll(parts[0]), std::stod(parts[1]));
    }
    if (head == "const") return ParticleLaw::constant(std::stoll(rest));
    if (head == "poisson") return ParticleLaw::poisson(std::stod(rest));
    if (head == "plusone") return ParticleLaw::plus_one(parse_law(rest));
    if (head == "pmf") {
      FinitePmf f;
      for (const auto& atom : split(rest, ',')) {
        const auto eq = atom.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected count=prob");
        f.support.emplace_back(std::stoll(atom.substr(0, eq)), std::stod(atom.substr(eq + 1)));
      }
      return ParticleLaw(std::move(f));
    }
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("law '" + spec + "': " + e.what());
  }
  throw std::invalid_argument("law: unknown shorthand '" + spec + "'");
}

nlohmann::json to_json(const ParticleLaw& law) {
  return std::visit(Overload{
                        [](const TwoPoint& t) { return nlohmann::json{{"type", "two_point"}, {"N", t.n}, {"mu", t.mu}}; },
                        [](const PlusOne& p) { return nlohmann::json{{"type", "plus_one"}, {"inner", to_json(*p.inner)}}; },
                        [](const FinitePmf& f) {
                          auto support = nlohmann::json::array();
                          for (const auto& [c, p] : f.support) support.push_back({c, p});
                          return nlohmann::json{{"type", "pmf"}, {"support", support}};
                        },
                        [](const Mixture& m) {
                          auto comps = nlohmann::json::array();
                          for (const auto& t : m.components) comps.push_back({{"N", t.n}, {"mu", t.mu}});
                          return nlohmann::json{
                              {"type", "mixture"}, {"components", comps}, {"remainder_bound", m.remainder_bound}};
                        },
                    },
                    law.variant());
}

}  // namespace frogcert::laws
