#pragma once

#include <vector>

#include "tdlc/complex/complex2d.hpp"
#include "tdlc/perm/named_groups.hpp"

namespace tdlc::complex {

/// 1-skeleton of the boundary of the n-dimensional cross-polytope: points
/// 2i and 2i+1 are ±e_i, and every non-antipodal pair is an edge.
inline Graph cross_polytope_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < 2 * n; ++u) {
    for (Vertex v = u + 1; v < 2 * n; ++v) {
      if (u / 2 != v / 2) edges.emplace_back(u, v);
    }
  }
  return Graph(2 * n, std::move(edges));
}

/// Octahedron (boundary of the 3-dimensional cross-polytope) with its full
/// signed-permutation symmetry group of order 48.
inline Complex2D octahedron() {
  return clique_complex(cross_polytope_graph(3)).with_action(perm::hyperoctahedral(3));
}

/// The 6-vertex triangulation of the real projective plane.
inline Complex2D projective_plane6() {
  return from_facets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                         {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
}

/// Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes i - i+5.
inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    edges.emplace_back(i, i + 5);
  }
  return Graph(10, std::move(edges));
}

/// The n-cycle as a graph with no triangles.
inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return Graph(n, std::move(edges));
}

}  // namespace tdlc::complex
