#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

#include "frogcert/local_tree.hpp"
#include "frogcert/tree.hpp"

using namespace frogcert;
using namespace frogcert::tree;

namespace {

// Independent count: a vertex at distance k and level j is reached by a steps
// toward decreasing level and then b child steps, a + b = k, b - a = j; the
// first child step after going down cannot undo the last one.
std::uint64_t phi_by_paths(int j, int k, int d) {
  if (std::abs(j) > k || (k - j) % 2 != 0) return 0;
  const int a = (k - j) / 2, b = (k + j) / 2;
  std::uint64_t p = 1;
  for (int i = 0; i < b; ++i) p *= d;
  if (a == 0 || b == 0) return p;
  return p / d * (d - 1);
}

std::map<Vertex, int> bfs_distances(const Vertex& from, int radius, const TreeParams& params) {
  std::map<Vertex, int> dist{{from, 0}};
  std::queue<Vertex> q;
  q.push(from);
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    if (dist[v] == radius) continue;
    for (const auto& u : neighbors(v, params)) {
      if (dist.emplace(u, dist[v] + 1).second) q.push(u);
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("root and basic addresses") {
  const TreeParams p{3, Mode::regular};
  CHECK(root().level() == 0);
  CHECK(root().distance() == 0);
  CHECK(is_canonical(root(), p));
  CHECK(is_canonical(Vertex{2, {2, 1}}, p));
  CHECK_FALSE(is_canonical(Vertex{2, {1}}, p));
  CHECK_FALSE(is_canonical(Vertex{0, {4}}, p));
  CHECK(Vertex{2, {3}}.level() == -1);
  CHECK(Vertex{2, {3}}.distance() == 3);
  CHECK(to_string(Vertex{1, {2, 3}}) == to_string(Vertex{1, {2, 3}}));
  CHECK_THROWS_AS(TreeParams{1}.validate(), std::invalid_argument);
  CHECK_THROWS_AS(TreeParams{256}.validate(), std::invalid_argument);
}

TEST_CASE("neighbors are consistent") {
  for (int d : {2, 3, 5}) {
    for (auto mode : {Mode::regular, Mode::d_ary}) {
      const TreeParams p{d, mode};
      CHECK(neighbors(root(), p).size() == static_cast<std::size_t>(p.root_degree()));
      for (const auto& v : bfs_distances(root(), 4, p)) {
        const auto ns = neighbors(v.first, p);
        std::set<Vertex> distinct(ns.begin(), ns.end());
        CHECK(distinct.size() == ns.size());
        for (const auto& u : ns) {
          CHECK(is_canonical(u, p));
          CHECK(std::abs(u.level() - v.first.level()) == 1);
          CHECK(tree_distance(u, v.first) == 1);
          const auto back = neighbors(u, p);
          CHECK(std::find(back.begin(), back.end(), v.first) != back.end());
        }
        if (mode == Mode::regular || !(v.first == root())) {
          CHECK(ns.front().level() == v.first.level() - 1);
        }
      }
    }
  }
  CHECK_THROWS_AS(neighbor(root(), 0, TreeParams{2, Mode::d_ary}), std::invalid_argument);
  CHECK_THROWS_AS(neighbor(root(), 3, TreeParams{2}), std::invalid_argument);
  CHECK_THROWS_AS(neighbor(Vertex{1, {1}}, 0, TreeParams{2}), std::invalid_argument);
}

TEST_CASE("tree_distance matches BFS") {
  const TreeParams p{2};
  for (const auto& from : {root(), Vertex{2, {2}}, Vertex{0, {1, 2}}}) {
    for (const auto& [v, dist] : bfs_distances(from, 5, p)) {
      CHECK(tree_distance(from, v) == dist);
      CHECK(tree_distance(v, from) == dist);
    }
  }
  CHECK(tree_distance(Vertex{3, {}}, Vertex{0, {1}}) == 4);
}

TEST_CASE("phi against the path count and BFS") {
  for (int d : {2, 3, 4}) {
    std::map<std::pair<int, int>, std::uint64_t> cells;
    for (const auto& v : enumerate_ball(6, TreeParams{d})) ++cells[{v.level(), v.distance()}];
    for (int k = 0; k <= 6; ++k) {
      for (int j = -k - 1; j <= k + 1; ++j) {
        CHECK(phi(j, k, d) == phi_by_paths(j, k, d));
        CHECK(phi(j, k, d) == cells[{j, k}]);
        CHECK(phi_real(j, k, d) == static_cast<double>(phi(j, k, d)));
      }
    }
  }
  CHECK(phi(1, 1, 2) == 2);
  CHECK(phi(0, 2, 2) == 1);
  CHECK(phi(-3, 3, 7) == 1);
  CHECK(phi(1, 2, 2) == 0);
  CHECK(phi(31, 31, 4) == std::uint64_t{1} << 62);
  CHECK_THROWS_AS(phi(70, 70, 2), std::overflow_error);
  CHECK(phi_real(70, 70, 2) == std::ldexp(1.0, 70));
}

TEST_CASE("ball size and guard") {
  for (int d : {2, 3}) {
    for (auto mode : {Mode::regular, Mode::d_ary}) {
      const TreeParams p{d, mode};
      for (int r = 0; r <= 6; ++r) {
        CHECK(enumerate_ball(r, p).size() == ball_size(r, p));
        CHECK(bfs_distances(root(), r, p).size() == ball_size(r, p));
      }
    }
  }
  CHECK_THROWS_AS(enumerate_ball(40, TreeParams{2}), GuardError);
}

TEST_CASE("address keys are distinct") {
  const auto ball = enumerate_ball(9, TreeParams{2});
  std::unordered_set<std::uint64_t> keys;
  for (const auto& v : ball) keys.insert(vertex_key(v));
  CHECK(keys.size() == ball.size());
  CHECK(vertex_key(root()) == spine_key(0));
  CHECK(vertex_key(Vertex{0, {2}}) == child_key(spine_key(0), 2));
}

TEST_CASE("LocalTree agrees with the implicit tree") {
  for (auto mode : {Mode::regular, Mode::d_ary}) {
    const TreeParams p{3, mode};
    LocalTree t(p);
    CounterRng rng(42);
    LocalTree::Id id = LocalTree::root();
    for (int step = 0; step < 5000; ++step) {
      const int slot = t.random_slot(id, rng);
      const auto v = t.vertex(id);
      const auto next = t.neighbor(id, slot);
      CHECK(t.vertex(next) == neighbor(v, slot, p));
      CHECK(t.level(next) == t.vertex(next).level());
      CHECK(t.distance(next) == t.vertex(next).distance());
      CHECK(t.key(next) == vertex_key(t.vertex(next)));
      CHECK(t.find(t.vertex(next)) == next);
      if (t.distance(next) > 0) {
        const int toward = t.toward_root_slot(next);
        CHECK(t.distance(t.neighbor(next, toward)) == t.distance(next) - 1);
      } else {
        CHECK(t.toward_root_slot(next) == -1);
      }
      id = next;
    }
    const Vertex far{mode == Mode::regular ? 3u : 0u, {2, 3, 1}};
    CHECK(t.vertex(t.materialize(far)) == far);
  }
  LocalTree small(TreeParams{2}, 3);
  small.neighbor(0, 1);
  small.neighbor(0, 2);
  CHECK_THROWS_AS(small.neighbor(0, 0), GuardError);
  LocalTree dary(TreeParams{2, Mode::d_ary});
  CHECK(dary.find(Vertex{0, {1}}) == LocalTree::kNone);
  CHECK_THROWS_AS(dary.neighbor(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(dary.materialize(Vertex{1, {}}), std::invalid_argument);
}

TEST_CASE("hand-checked values") {
  const TreeParams p{2};
  const auto ns = neighbors(Vertex{1, {}}, p);
  CHECK(std::set<Vertex>(ns.begin(), ns.end()) == std::set<Vertex>{Vertex{2, {}}, Vertex{0, {}}, Vertex{1, {2}}});
  CHECK(phi(1, 1, 3) == 3);
  CHECK(phi(0, 0, 2) == 1);
  CHECK(phi(2, 4, 2) == 4);
  CHECK(phi(-1, 3, 2) == 1);
  CHECK(phi(3, 4, 5) == 0);
  CHECK(enumerate_ball(0, p) == std::vector<Vertex>{root()});
  CHECK(enumerate_ball(2, p).size() == 10);
  CHECK(neighbors(root(), TreeParams{2, Mode::d_ary}).size() == 2);
}
