#pragma once

// Implicit addressing of the (d+1)-regular tree and of the d-ary tree.
//
// A vertex is written (u, w): go u steps from the root toward decreasing level
// (the "spine"), then descend along the child labels in w. Child 1 of a spine
// vertex (u, e) with u > 0 is the next spine vertex (u-1, e), so a canonical
// address never starts its word with 1 when u > 0. With this convention
//   level(v)    = |w| - u
//   distance(v) = |w| + u
// and the number of canonical addresses at (level j, distance k) is phi(j, k).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frogcert {

/// Raised when a radius, population or step guard would be exceeded.
class GuardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace tree {

enum class Mode { regular, d_ary };

struct TreeParams {
  int d = 2;
  Mode mode = Mode::regular;

  /// Throws std::invalid_argument unless 2 <= d <= 255.
  void validate() const;
  /// Number of neighbors of `root()`.
  int root_degree() const { return mode == Mode::regular ? d + 1 : d; }
};

struct Vertex {
  std::uint32_t up = 0;
  std::vector<std::uint8_t> word;

  int level() const { return static_cast<int>(word.size()) - static_cast<int>(up); }
  int distance() const { return static_cast<int>(word.size()) + static_cast<int>(up); }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

std::string to_string(const Vertex& v);

Vertex root();

bool is_canonical(const Vertex& v, const TreeParams& params);

/// Slot 0 is the lower-level neighbor, slots 1..d the children. In d-ary mode
/// the root has no slot 0. Throws std::invalid_argument on a non-canonical
/// vertex or an unavailable slot.
Vertex neighbor(const Vertex& v, int slot, const TreeParams& params);

/// Neighbors in slot order: one at level(v)-1 first (unless v is the d-ary
/// root), then the d vertices at level(v)+1.
std::vector<Vertex> neighbors(const Vertex& v, const TreeParams& params);

/// Graph distance in the tree (both vertices canonical).
int tree_distance(const Vertex& a, const Vertex& b);

/// Number of vertices of the regular tree at level j and distance k from the root.
/// Throws std::overflow_error if the count does not fit in 64 bits.
std::uint64_t phi(int j, int k, int d);

/// Same count as a double (exact up to 2^53, finite beyond).
double phi_real(int j, int k, int d);

/// Number of vertices within distance R of the root.
std::uint64_t ball_size(int radius, const TreeParams& params);

/// Largest ball enumerate_ball will materialize.
inline constexpr std::uint64_t kMaxBallVertices = 1U << 16;

/// All canonical vertices at distance <= R, in BFS order. Throws GuardError when
/// the ball exceeds kMaxBallVertices.
std::vector<Vertex> enumerate_ball(int radius, const TreeParams& params);

/// Address hash used to key per-site randomness. Depends on the address only.
std::uint64_t spine_key(std::uint32_t up);
std::uint64_t child_key(std::uint64_t parent_key, int label);
std::uint64_t vertex_key(const Vertex& v);

}  // namespace tree
}  // namespace frogcert

template <>
struct std::hash<frogcert::tree::Vertex> {
  std::size_t operator()(const frogcert::tree::Vertex& v) const noexcept {
    return static_cast<std::size_t>(frogcert::tree::vertex_key(v));
  }
};
