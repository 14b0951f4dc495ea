#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "tdlc/complex/complex2d.hpp"
#include "tdlc/parallel.hpp"

namespace tdlc::certify {

/// Induced subgraph on the neighbours of v, relabelled in increasing order.
/// For a flag complex its edges are the triangles through v with v removed.
inline Graph vertex_link(const complex::Complex2D& c, Vertex v) {
  if (v >= c.vertex_count()) throw InputError("vertex out of range");
  auto n = c.graph().neighbors(v);
  return c.graph().induced(n);
}

/// Length of a shortest cycle; nullopt for a forest.
inline std::optional<std::size_t> girth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::optional<std::size_t> best;
  std::vector<std::int64_t> dist(n);
  std::vector<std::int64_t> parent(n);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    parent[s] = -1;
    queue.assign(1, s);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Vertex x = queue[i];
      // no shorter cycle can be closed beyond this depth
      if (best && static_cast<std::size_t>(2 * dist[x]) >= *best) break;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (parent[x] != static_cast<std::int64_t>(y)) {
          const auto len = static_cast<std::size_t>(dist[x] + dist[y] + 1);
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

struct LinkGirths {
  /// Per vertex; nullopt where the link is a forest.
  std::vector<std::optional<std::size_t>> girth;
  /// Minimum over all vertices with a cycle in their link.
  std::optional<std::size_t> minimum;
  /// A vertex attaining the minimum.
  std::optional<Vertex> attained_at;
};

inline LinkGirths all_link_girths(const complex::Complex2D& c) {
  LinkGirths out;
  out.girth.resize(c.vertex_count());
  parallel_for(c.vertex_count(), [&](std::size_t v) { out.girth[v] = girth(vertex_link(c, static_cast<Vertex>(v))); });
  for (Vertex v = 0; v < c.vertex_count(); ++v) {
    if (out.girth[v] && (!out.minimum || *out.girth[v] < *out.minimum)) {
      out.minimum = out.girth[v];
      out.attained_at = v;
    }
  }
  return out;
}

}  // namespace tdlc::certify
