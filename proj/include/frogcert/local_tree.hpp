#pragma once

// Per-replica arena of the part of the tree a simulation has touched. Nodes are
// created on first touch and addressed by dense integer ids, so walkers step in
// O(1) without hashing addresses. Nodes are only ever created one step further
// from the root than an existing node, which keeps every node's path to the
// root materialized.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "frogcert/rng.hpp"
#include "frogcert/tree.hpp"

namespace frogcert::tree {

class LocalTree {
public:
  using Id = std::int32_t;
  static constexpr Id kNone = -1;

  explicit LocalTree(TreeParams params, std::size_t node_cap = std::size_t{1} << 26);

  const TreeParams& params() const { return params_; }
  static constexpr Id root() { return 0; }
  std::size_t size() const { return nodes_.size(); }

  int level(Id id) const { return nodes_[id].level; }
  int distance(Id id) const { return nodes_[id].dist; }
  std::uint64_t key(Id id) const { return nodes_[id].key; }

  /// Slot of the neighbor one step closer to the root, or -1 at the root.
  int toward_root_slot(Id id) const {
    const auto& n = nodes_[id];
    if (n.letter != 0) return 0;
    return n.dist > 0 ? 1 : -1;
  }

  /// Neighbor through `slot`, created if absent. Throws GuardError past node_cap.
  Id neighbor(Id id, int slot);

  /// Neighbor through `slot` if it already exists, else kNone.
  Id peek(Id id, int slot) const;

  /// Uniformly random neighbor slot (d+1 choices, d at the d-ary root).
  int random_slot(Id id, CounterRng& rng) const {
    if (id == root() && params_.mode == Mode::d_ary) {
      return 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(params_.d)));
    }
    return static_cast<int>(rng.below(static_cast<std::uint64_t>(params_.d) + 1));
  }

  Vertex vertex(Id id) const;

  /// Id of an existing node with this address, else kNone.
  Id find(const Vertex& v) const;

  /// Id of the node with this address, creating the path from the root.
  Id materialize(const Vertex& v);

private:
  struct Node {
    std::int32_t level;
    std::int32_t dist;
    std::uint64_t key;
    Id lower;
    std::int32_t child_block;
    std::uint8_t letter;  // 0 on the spine
  };

  Id create(int level, int dist, std::uint64_t key, std::uint8_t letter);
  Id& child_ref(Id id, int slot);

  TreeParams params_;
  std::size_t node_cap_;
  std::vector<Node> nodes_;
  std::vector<Id> children_;
};

}  // namespace frogcert::tree
