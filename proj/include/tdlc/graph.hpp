#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tdlc/errors.hpp"

namespace tdlc {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph with sorted adjacency lists (compressed rows).
class Graph {
public:
  Graph() = default;

  /// Loops are rejected; duplicate edges collapse.
  Graph(std::size_t vertex_count, std::vector<Edge> edges) : offsets_(vertex_count + 1, 0) {
    for (auto& [u, v] : edges) {
      if (u >= vertex_count || v >= vertex_count) throw InputError("edge endpoint out of range");
      if (u == v) throw InputError("loops are not allowed");
      if (v < u) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [u, v] : edges) {
      ++offsets_[u + 1];
      ++offsets_[v + 1];
    }
    for (std::size_t i = 0; i < vertex_count; ++i) offsets_[i + 1] += offsets_[i];
    targets_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : edges) {
      targets_[fill[u]++] = v;
      targets_[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < vertex_count; ++i) {
      std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
    }
  }

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }
  /// Number of ordered adjacent pairs.
  std::size_t directed_edge_count() const noexcept { return targets_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    if (u >= vertex_count() || v >= vertex_count()) return false;
    auto n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
  }

  /// Index of the ordered pair (u, v) in [0, directed_edge_count()).
  std::optional<std::size_t> directed_index(Vertex u, Vertex v) const {
    auto n = neighbors(u);
    auto it = std::lower_bound(n.begin(), n.end(), v);
    if (it == n.end() || *it != v) return std::nullopt;
    return offsets_[u] + static_cast<std::size_t>(it - n.begin());
  }

  /// The ordered pair with the given directed index.
  Edge directed_edge(std::size_t index) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
    auto u = static_cast<Vertex>(it - offsets_.begin() - 1);
    return {u, targets_[index]};
  }

  /// Undirected edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u) {
      for (Vertex v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  /// Induced subgraph on `vertices` (relabelled 0..k-1 in the given order).
  Graph induced(std::span<const Vertex> vertices) const {
    std::vector<std::int64_t> index(vertex_count(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<std::int64_t>(i);
    std::vector<Edge> es;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      for (Vertex w : neighbors(vertices[i])) {
        if (index[w] > static_cast<std::int64_t>(i)) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(index[w]));
      }
    }
    return Graph(vertices.size(), std::move(es));
  }

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

/// Number of connected components, by breadth-first search.
inline std::size_t connected_components(const Graph& g) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::size_t count = 0;
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    ++count;
    seen[s] = true;
    queue.assign(1, s);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (Vertex w : g.neighbors(queue[i])) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return count;
}

}  // namespace tdlc
