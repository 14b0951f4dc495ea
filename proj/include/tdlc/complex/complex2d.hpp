#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/graph.hpp"
#include "tdlc/perm/perm_group.hpp"

namespace tdlc::complex {

/// Vertices in increasing order; orientation is the increasing order.
using Triangle = std::array<Vertex, 3>;

inline Triangle make_triangle(Vertex a, Vertex b, Vertex c) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

/// A graph plus a set of triangles, an optional vertex colouring into parts
/// and an optional group acting on the vertices.
///
/// Invariants (checked on construction): every triangle has distinct vertices
/// and all three edges present; the action, when present, maps edges to
/// edges, triangles to triangles and parts onto parts.
class Complex2D {
public:
  Complex2D() = default;

  Complex2D(Graph graph, std::vector<Triangle> triangles, std::vector<std::uint32_t> parts = {})
      : graph_(std::move(graph)), triangles_(std::move(triangles)), parts_(std::move(parts)) {
    if (parts_.empty()) parts_.assign(graph_.vertex_count(), 0);
    if (parts_.size() != graph_.vertex_count()) throw InputError("part colouring has wrong length");
    for (auto& t : triangles_) {
      std::sort(t.begin(), t.end());
      if (t[0] == t[1] || t[1] == t[2]) throw InputError("degenerate triangle");
      if (!graph_.has_edge(t[0], t[1]) || !graph_.has_edge(t[0], t[2]) || !graph_.has_edge(t[1], t[2])) {
        throw InputError("triangle edge missing from the 1-skeleton");
      }
    }
    std::sort(triangles_.begin(), triangles_.end());
    triangles_.erase(std::unique(triangles_.begin(), triangles_.end()), triangles_.end());
  }

  const Graph& graph() const noexcept { return graph_; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  const std::vector<std::uint32_t>& parts() const noexcept { return parts_; }
  const std::optional<perm::PermGroup>& action() const noexcept { return action_; }

  bool has_triangle(const Triangle& t) const { return std::binary_search(triangles_.begin(), triangles_.end(), t); }

  std::optional<std::size_t> triangle_index(const Triangle& t) const {
    auto it = std::lower_bound(triangles_.begin(), triangles_.end(), t);
    if (it == triangles_.end() || *it != t) return std::nullopt;
    return static_cast<std::size_t>(it - triangles_.begin());
  }

  /// Returns a copy carrying `group` as its action; throws InputError if the
  /// group does not act by automorphisms.
  Complex2D with_action(perm::PermGroup group) const {
    if (group.degree() != vertex_count()) throw InputError("action degree differs from vertex count");
    for (const auto& g : group.generators()) {
      if (auto problem = automorphism_violation(g)) throw InputError("action generator is not an automorphism: " + *problem);
    }
    Complex2D c = *this;
    c.action_ = std::move(group);
    return c;
  }

  Complex2D without_action() const {
    Complex2D c = *this;
    c.action_.reset();
    return c;
  }

  /// Describes why `g` fails to be an automorphism, or nullopt if it is one.
  std::optional<std::string> automorphism_violation(const perm::Permutation& g) const {
    if (g.degree() != vertex_count()) return "degree mismatch";
    for (auto [u, v] : graph_.edges()) {
      if (!graph_.has_edge(g(u), g(v))) return "edge {" + std::to_string(u) + "," + std::to_string(v) + "} not preserved";
    }
    for (const auto& t : triangles_) {
      if (!has_triangle(make_triangle(g(t[0]), g(t[1]), g(t[2])))) return "triangle not preserved";
    }
    if (parts_.empty()) return std::nullopt;
    std::vector<std::int64_t> part_image(*std::max_element(parts_.begin(), parts_.end()) + 1, -1);
    for (Vertex v = 0; v < vertex_count(); ++v) {
      auto& img = part_image[parts_[v]];
      if (img < 0) img = parts_[g(v)];
      if (img != parts_[g(v)]) return "part colouring not preserved";
    }
    return std::nullopt;
  }

private:
  Graph graph_;
  std::vector<Triangle> triangles_;
  std::vector<std::uint32_t> parts_;
  std::optional<perm::PermGroup> action_;
};

/// All 3-cliques of `g`, sorted.
inline std::vector<Triangle> three_cliques(const Graph& g) {
  std::vector<Triangle> out;
  std::vector<Vertex> common;
  for (auto [u, v] : g.edges()) {
    auto nu = g.neighbors(u);
    auto nv = g.neighbors(v);
    common.clear();
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
    for (Vertex w : common) {
      if (w > v) out.push_back({u, v, w});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The flag 2-complex of a graph: triangles are all 3-cliques.
inline Complex2D clique_complex(Graph g, std::vector<std::uint32_t> parts = {}) {
  auto triangles = three_cliques(g);
  return Complex2D(std::move(g), std::move(triangles), std::move(parts));
}

/// Closure of a list of facets with at most three vertices each.
inline Complex2D from_facets(std::size_t vertex_count, const std::vector<std::vector<Vertex>>& facets) {
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;
  for (const auto& f : facets) {
    if (f.empty() || f.size() > 3) throw InputError("facets of a 2-complex must have 1 to 3 vertices");
    for (Vertex v : f) {
      if (v >= vertex_count) throw InputError("facet vertex out of range");
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) edges.emplace_back(f[i], f[j]);
    }
    if (f.size() == 3) triangles.push_back(make_triangle(f[0], f[1], f[2]));
  }
  return Complex2D(Graph(vertex_count, std::move(edges)), std::move(triangles));
}

}  // namespace tdlc::complex
