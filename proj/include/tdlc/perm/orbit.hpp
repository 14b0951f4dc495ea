#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/perm/perm_group.hpp"

namespace tdlc::perm {

enum class ActionKind { points, tuples, sets };

/// Orbit of `seed` under `G`. Points are returned as singleton tuples.
/// Set seeds are normalized to sorted order; the result is sorted.
inline std::vector<std::vector<Point>> orbit(const PermGroup& group, std::vector<Point> seed, ActionKind kind) {
  for (Point p : seed) {
    if (p >= group.degree()) throw InputError("orbit seed point out of range");
  }
  if (kind == ActionKind::points && seed.size() != 1) throw InputError("point action needs exactly one point");
  if (kind == ActionKind::sets) {
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  }

  auto act = [kind](const std::vector<Point>& x, const Permutation& g) {
    std::vector<Point> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = g(x[i]);
    if (kind == ActionKind::sets) std::sort(y.begin(), y.end());
    return y;
  };

  std::set<std::vector<Point>> seen{seed};
  std::vector<std::vector<Point>> frontier{seed};
  while (!frontier.empty()) {
    std::vector<std::vector<Point>> next;
    for (const auto& x : frontier) {
      for (const auto& g : group.generators()) {
        auto y = act(x, g);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

inline std::vector<Point> orbit_of_point(const PermGroup& group, Point p) {
  std::vector<Point> out;
  for (const auto& t : orbit(group, {p}, ActionKind::points)) out.push_back(t.front());
  return out;
}

/// Disjoint-set forest with path halving; used for orbit partitions.
class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Keeps the smaller root so representatives are the least members.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }

private:
  std::vector<std::size_t> parent_;
};

/// Partition of {0..degree-1} into orbits, each sorted, ordered by least point.
inline std::vector<std::vector<Point>> point_orbits(const PermGroup& group) {
  UnionFind uf(group.degree());
  for (const auto& g : group.generators()) {
    for (Point x = 0; x < group.degree(); ++x) uf.unite(x, g(x));
  }
  std::map<std::size_t, std::vector<Point>> by_root;
  for (Point x = 0; x < group.degree(); ++x) by_root[uf.find(x)].push_back(x);
  std::vector<std::vector<Point>> out;
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  return out;
}

}  // namespace tdlc::perm
