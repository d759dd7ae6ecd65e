#include "frogcert/local_tree.hpp"

#include <algorithm>
#include <string>

namespace frogcert::tree {

LocalTree::LocalTree(TreeParams params, std::size_t node_cap) : params_(params), node_cap_(node_cap) {
  params_.validate();
  nodes_.reserve(std::min<std::size_t>(node_cap_, 1024));
  create(0, 0, spine_key(0), 0);
}

LocalTree::Id LocalTree::create(int level, int dist, std::uint64_t key, std::uint8_t letter) {
  if (nodes_.size() >= node_cap_) {
    throw GuardError("local tree: node cap of " + std::to_string(node_cap_) + " exceeded");
  }
  nodes_.push_back(Node{level, dist, key, kNone, -1, letter});
  return static_cast<Id>(nodes_.size() - 1);
}

LocalTree::Id& LocalTree::child_ref(Id id, int slot) {
  if (nodes_[id].child_block < 0) {
    nodes_[id].child_block = static_cast<std::int32_t>(children_.size() / params_.d);
    children_.resize(children_.size() + params_.d, kNone);
  }
  return children_[static_cast<std::size_t>(nodes_[id].child_block) * params_.d + (slot - 1)];
}

LocalTree::Id LocalTree::peek(Id id, int slot) const {
  if (slot == 0) return nodes_[id].lower;
  const auto block = nodes_[id].child_block;
  if (block < 0) return kNone;
  return children_[static_cast<std::size_t>(block) * params_.d + (slot - 1)];
}

LocalTree::Id LocalTree::neighbor(Id id, int slot) {
  if (slot == 0) {
    if (nodes_[id].lower != kNone) return nodes_[id].lower;
    if (params_.mode == Mode::d_ary && id == root()) {
      throw std::invalid_argument("local tree: the d-ary root has no parent");
    }
    // Only spine vertices can lack their lower neighbor: (u, e) -> (u+1, e).
    const auto up = static_cast<std::uint32_t>(nodes_[id].dist) + 1;
    const Id made = create(nodes_[id].level - 1, nodes_[id].dist + 1, spine_key(up), 0);
    nodes_[id].lower = made;
    child_ref(made, 1) = id;
    return made;
  }
  if (Id existing = peek(id, slot); existing != kNone) return existing;
  const Node n = nodes_[id];
  const Id made = create(n.level + 1, n.dist + 1, child_key(n.key, slot), static_cast<std::uint8_t>(slot));
  child_ref(id, slot) = made;
  nodes_[made].lower = id;
  return made;
}

Vertex LocalTree::vertex(Id id) const {
  Vertex v;
  while (nodes_[id].letter != 0) {
    v.word.push_back(nodes_[id].letter);
    id = nodes_[id].lower;
  }
  std::reverse(v.word.begin(), v.word.end());
  v.up = static_cast<std::uint32_t>(nodes_[id].dist);
  return v;
}

LocalTree::Id LocalTree::find(const Vertex& v) const {
  Id id = root();
  for (std::uint32_t u = 0; u < v.up && id != kNone; ++u) id = peek(id, 0);
  for (auto c : v.word) {
    if (id == kNone) break;
    id = peek(id, c);
  }
  return id;
}

LocalTree::Id LocalTree::materialize(const Vertex& v) {
  if (!is_canonical(v, params_)) throw std::invalid_argument("local tree: non-canonical vertex " + to_string(v));
  Id id = root();
  for (std::uint32_t u = 0; u < v.up; ++u) id = neighbor(id, 0);
  for (auto c : v.word) id = neighbor(id, c);
  return id;
}

}  // namespace frogcert::tree
