#include "frogcert/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "frogcert/rng.hpp"

namespace frogcert::tree {

void TreeParams::validate() const {
  if (d < 2 || d > 255) {
    throw std::invalid_argument("tree: d must lie in [2, 255], got " + std::to_string(d));
  }
}

std::string to_string(const Vertex& v) {
  std::string s = "(" + std::to_string(v.up) + ",[";
  for (std::size_t i = 0; i < v.word.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v.word[i]);
  }
  return s + "])";
}

Vertex root() { return {}; }

bool is_canonical(const Vertex& v, const TreeParams& params) {
  if (params.mode == Mode::d_ary && v.up != 0) return false;
  for (auto c : v.word) {
    if (c < 1 || c > params.d) return false;
  }
  return !(v.up > 0 && !v.word.empty() && v.word.front() == 1);
}

Vertex neighbor(const Vertex& v, int slot, const TreeParams& params) {
  if (!is_canonical(v, params)) {
    throw std::invalid_argument("tree: non-canonical vertex " + to_string(v));
  }
  if (slot < 0 || slot > params.d) {
    throw std::invalid_argument("tree: slot out of range");
  }
  Vertex n = v;
  if (slot == 0) {
    if (!v.word.empty()) {
      n.word.pop_back();
    } else if (params.mode == Mode::d_ary) {
      throw std::invalid_argument("tree: the d-ary root has no parent");
    } else {
      ++n.up;
    }
    return n;
  }
  if (v.word.empty() && v.up > 0 && slot == 1) {
    --n.up;
    return n;
  }
  n.word.push_back(static_cast<std::uint8_t>(slot));
  return n;
}

std::vector<Vertex> neighbors(const Vertex& v, const TreeParams& params) {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(params.d) + 1);
  const bool has_lower = params.mode == Mode::regular || !v.word.empty();
  for (int slot = has_lower ? 0 : 1; slot <= params.d; ++slot) {
    out.push_back(neighbor(v, slot, params));
  }
  return out;
}

int tree_distance(const Vertex& a, const Vertex& b) {
  // Rewrite both as words below the spine vertex (U, e), U = max(up).
  const auto top = std::max(a.up, b.up);
  auto path = [top](const Vertex& v) {
    std::vector<std::uint8_t> p(top - v.up, 1);
    p.insert(p.end(), v.word.begin(), v.word.end());
    return p;
  };
  const auto pa = path(a);
  const auto pb = path(b);
  const auto [ia, ib] = std::mismatch(pa.begin(), pa.end(), pb.begin(), pb.end());
  const auto common = ia - pa.begin();
  return static_cast<int>((pa.size() - common) + (pb.size() - common));
}

namespace {

std::uint64_t checked_pow(int d, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(d)) {
      throw std::overflow_error("phi: count exceeds 64 bits");
    }
    r *= static_cast<std::uint64_t>(d);
  }
  return r;
}

}  // namespace

std::uint64_t phi(int j, int k, int d) {
  const int aj = std::abs(j);
  if (k < aj || (k - aj) % 2 != 0) return 0;
  const int i = (k - aj) / 2;
  if (j >= 1) {
    if (i == 0) return checked_pow(d, j);
    const auto base = checked_pow(d, j + i - 1);
    if (base > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(d - 1)) {
      throw std::overflow_error("phi: count exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(d - 1) * base;
  }
  if (i == 0) return 1;
  return static_cast<std::uint64_t>(d - 1) * checked_pow(d, i - 1);
}

double phi_real(int j, int k, int d) {
  const int aj = std::abs(j);
  if (k < aj || (k - aj) % 2 != 0) return 0.0;
  const int i = (k - aj) / 2;
  const double dd = d;
  if (j >= 1) {
    return i == 0 ? std::pow(dd, j) : (dd - 1.0) * std::pow(dd, j + i - 1);
  }
  return i == 0 ? 1.0 : (dd - 1.0) * std::pow(dd, i - 1);
}

std::uint64_t ball_size(int radius, const TreeParams& params) {
  if (radius < 0) return 0;
  const auto d = static_cast<std::uint64_t>(params.d);
  std::uint64_t total = 1;
  std::uint64_t shell = params.mode == Mode::regular ? d + 1 : d;
  for (int k = 1; k <= radius; ++k) {
    total += shell;
    if (k < radius) shell *= d;
  }
  return total;
}

std::vector<Vertex> enumerate_ball(int radius, const TreeParams& params) {
  params.validate();
  if (radius < 0) throw std::invalid_argument("enumerate_ball: negative radius");
  // Compare in floating point first so that huge radii cannot overflow.
  const double approx = std::pow(static_cast<double>(params.d), radius) * (params.d + 1);
  if (approx > 4.0 * kMaxBallVertices || ball_size(radius, params) > kMaxBallVertices) {
    throw GuardError("enumerate_ball: radius " + std::to_string(radius) + " exceeds the " +
                     std::to_string(kMaxBallVertices) + "-vertex guard");
  }
  std::vector<Vertex> out{root()};
  std::unordered_set<Vertex> seen{root()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    if (out[head].distance() == radius) continue;
    for (auto& n : neighbors(out[head], params)) {
      if (seen.insert(n).second) out.push_back(std::move(n));
    }
  }
  return out;
}

std::uint64_t spine_key(std::uint32_t up) { return stream_key(0x73706e65ULL, up); }

std::uint64_t child_key(std::uint64_t parent_key, int label) {
  return mix64(parent_key ^ mix64(0x63686c64ULL + static_cast<std::uint64_t>(label)));
}

std::uint64_t vertex_key(const Vertex& v) {
  auto k = spine_key(v.up);
  for (auto c : v.word) k = child_key(k, c);
  return k;
}

}  // namespace frogcert::tree
