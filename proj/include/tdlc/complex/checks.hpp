#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tdlc/complex/complex2d.hpp"
#include "tdlc/errors.hpp"
#include "tdlc/perm/orbit.hpp"

namespace tdlc::complex {

struct FlagResult {
  bool flag = false;
  /// A 3-clique that is not a triangle, or a 4-clique.
  std::vector<Vertex> witness;
};

/// Flag iff the triangles are exactly the 3-cliques and there is no 4-clique.
inline FlagResult is_flag(const Complex2D& c) {
  const auto cliques = three_cliques(c.graph());
  for (const auto& t : cliques) {
    if (!c.has_triangle(t)) return {false, {t[0], t[1], t[2]}};
  }
  // every triangle is a 3-clique by the Complex2D invariant
  const Graph& g = c.graph();
  std::vector<Vertex> common;
  for (const auto& t : cliques) {
    auto n0 = g.neighbors(t[0]);
    auto n1 = g.neighbors(t[1]);
    common.clear();
    std::set_intersection(n0.begin(), n0.end(), n1.begin(), n1.end(), std::back_inserter(common));
    for (Vertex w : common) {
      if (w > t[2] && g.has_edge(t[2], w)) return {false, {t[0], t[1], t[2], w}};
    }
  }
  return {true, {}};
}

/// Number of triangles containing each undirected edge, indexed like Graph::edges().
inline std::vector<std::size_t> triangles_per_edge(const Complex2D& c) {
  const Graph& g = c.graph();
  std::vector<std::size_t> count(g.directed_edge_count(), 0);
  for (const auto& t : c.triangles()) {
    ++count[*g.directed_index(t[0], t[1])];
    ++count[*g.directed_index(t[0], t[2])];
    ++count[*g.directed_index(t[1], t[2])];
  }
  std::vector<std::size_t> out;
  out.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) out.push_back(count[*g.directed_index(u, v)]);
  return out;
}

struct EdgeCoverResult {
  bool covered = false;
  std::optional<Edge> uncovered;
};

inline EdgeCoverResult every_edge_in_triangle(const Complex2D& c) {
  const auto counts = triangles_per_edge(c);
  const auto edges = c.graph().edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (counts[i] == 0) return {false, edges[i]};
  }
  return {true, std::nullopt};
}

namespace detail {

inline const perm::PermGroup& require_action(const Complex2D& c) {
  if (!c.action()) throw InputError("complex carries no group action");
  return *c.action();
}

}  // namespace detail

/// Orbits of the acting group on ordered adjacent pairs; each orbit is
/// reported by its least directed edge. An edgeless graph has none.
inline std::vector<Edge> directed_edge_orbit_representatives(const Complex2D& c) {
  const auto& group = detail::require_action(c);
  const Graph& g = c.graph();
  perm::UnionFind uf(g.directed_edge_count());
  for (const auto& s : group.generators()) {
    for (std::size_t e = 0; e < g.directed_edge_count(); ++e) {
      auto [u, v] = g.directed_edge(e);
      uf.unite(e, *g.directed_index(s(u), s(v)));
    }
  }
  std::vector<Edge> reps;
  for (std::size_t e = 0; e < g.directed_edge_count(); ++e) {
    if (uf.find(e) == e) reps.push_back(g.directed_edge(e));
  }
  return reps;
}

inline std::size_t directed_edge_orbits(const Complex2D& c) { return directed_edge_orbit_representatives(c).size(); }

/// Orbit representatives on triangles: the least triangle of each orbit, sorted.
inline std::vector<Triangle> triangle_orbits(const Complex2D& c) {
  const auto& group = detail::require_action(c);
  const auto& ts = c.triangles();
  perm::UnionFind uf(ts.size());
  for (const auto& s : group.generators()) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto& t = ts[i];
      uf.unite(i, *c.triangle_index(make_triangle(s(t[0]), s(t[1]), s(t[2]))));
    }
  }
  std::vector<Triangle> reps;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (uf.find(i) == i) reps.push_back(ts[i]);
  }
  return reps;
}

/// A group element fixing `apex` and mapping `from` to `to`.
struct SwapWitness {
  Vertex apex = 0;
  perm::Permutation element;
};

/// Decides, for every ordered adjacent pair (x, y), whether some triangle
/// {x, y, z} admits a group element fixing z and mapping x to y.
///
/// Vertex stabilizers are computed once per vertex orbit; stabilizers of the
/// other vertices are conjugates, so every pair is decided exactly.
class EdgeSwapAnalysis {
public:
  explicit EdgeSwapAnalysis(const Complex2D& c) : complex_(&c), group_(detail::require_action(c)) {
    const std::size_t n = c.vertex_count();
    rep_of_.assign(n, 0);
    to_vertex_.assign(n, perm::Permutation::identity(n));
    std::vector<bool> seen(n, false);
    for (Vertex r = 0; r < n; ++r) {
      if (seen[r]) continue;
      seen[r] = true;
      std::vector<Vertex> queue{r};
      for (std::size_t i = 0; i < queue.size(); ++i) {
        const Vertex v = queue[i];
        for (const auto& s : group_.generators()) {
          const Vertex w = s(v);
          if (seen[w]) continue;
          seen[w] = true;
          rep_of_[w] = r;
          to_vertex_[w] = to_vertex_[v] * s;
          queue.push_back(w);
        }
      }
      rep_of_[r] = r;
      stabilizers_.emplace(r, StabilizerOrbits(group_.stabilizer(r)));
    }
    from_vertex_.reserve(n);
    for (auto& t : to_vertex_) from_vertex_.push_back(t.inverse());
    to_vertex_.clear();

    const Graph& g = c.graph();
    swappable_apex_.assign(g.directed_edge_count(), kNone);
    for (const auto& t : c.triangles()) {
      for (int k = 0; k < 3; ++k) {
        const Vertex z = t[k];
        const Vertex x = t[(k + 1) % 3];
        const Vertex y = t[(k + 2) % 3];
        if (same_stabilizer_orbit(z, x, y)) {
          auto& a = swappable_apex_[*g.directed_index(x, y)];
          auto& b = swappable_apex_[*g.directed_index(y, x)];
          a = std::min(a, z);
          b = std::min(b, z);
        }
      }
    }
    for (std::size_t e = 0; e < swappable_apex_.size(); ++e) {
      if (swappable_apex_[e] == kNone) {
        failing_ = g.directed_edge(e);
        break;
      }
    }
  }

  bool holds() const noexcept { return !failing_.has_value(); }
  /// First ordered pair with no swap, in directed-edge order.
  const std::optional<Edge>& failing_edge() const noexcept { return failing_; }

  /// Witness for (x, y) using the least admissible apex, or nullopt.
  std::optional<SwapWitness> witness(Vertex x, Vertex y) const {
    auto idx = complex_->graph().directed_index(x, y);
    if (!idx || swappable_apex_[*idx] == kNone) return std::nullopt;
    const Vertex z = swappable_apex_[*idx];
    const auto& t_inv = from_vertex_[z];
    const auto t = t_inv.inverse();
    const auto& so = stabilizers_.at(rep_of_[z]);
    const perm::Permutation h = so.element_to(t_inv(x)).inverse() * so.element_to(t_inv(y));
    return SwapWitness{z, t_inv * h * t};
  }

private:
  static constexpr Vertex kNone = ~Vertex{0};

  // Orbits of a point stabilizer with a Schreier vector for transversal elements.
  class StabilizerOrbits {
  public:
    explicit StabilizerOrbits(perm::PermGroup stab) : stab_(std::move(stab)) {
      const std::size_t n = stab_.degree();
      orbit_.assign(n, kNone);
      via_.assign(n, -1);
      parent_.assign(n, kNone);
      for (Vertex a = 0; a < n; ++a) {
        if (orbit_[a] != kNone) continue;
        orbit_[a] = a;
        std::vector<Vertex> queue{a};
        for (std::size_t i = 0; i < queue.size(); ++i) {
          const Vertex v = queue[i];
          for (std::size_t s = 0; s < stab_.generators().size(); ++s) {
            const Vertex w = stab_.generators()[s](v);
            if (orbit_[w] != kNone) continue;
            orbit_[w] = a;
            via_[w] = static_cast<int>(s);
            parent_[w] = v;
            queue.push_back(w);
          }
        }
      }
    }

    Vertex orbit_of(Vertex v) const { return orbit_[v]; }

    /// An element of the stabilizer mapping the orbit representative to v.
    perm::Permutation element_to(Vertex v) const {
      std::vector<int> path;
      for (Vertex w = v; via_[w] >= 0; w = parent_[w]) path.push_back(via_[w]);
      perm::Permutation g = perm::Permutation::identity(stab_.degree());
      for (auto it = path.rbegin(); it != path.rend(); ++it) g = g * stab_.generators()[static_cast<std::size_t>(*it)];
      return g;
    }

  private:
    perm::PermGroup stab_;
    std::vector<Vertex> orbit_;
    std::vector<int> via_;
    std::vector<Vertex> parent_;
  };

  bool same_stabilizer_orbit(Vertex z, Vertex x, Vertex y) const {
    // from_vertex_[z] maps z to rep(z), so Stab(z) = t Stab(rep) t^-1 for its inverse t
    const auto& t_inv = from_vertex_[z];
    const auto& so = stabilizers_.at(rep_of_[z]);
    return so.orbit_of(t_inv(x)) == so.orbit_of(t_inv(y));
  }

  const Complex2D* complex_;
  const perm::PermGroup& group_;
  std::vector<Vertex> rep_of_;
  std::vector<perm::Permutation> to_vertex_;    // only used during construction
  std::vector<perm::Permutation> from_vertex_;  // inverse of the transversal element to each vertex
  std::map<Vertex, StabilizerOrbits> stabilizers_;
  std::vector<Vertex> swappable_apex_;
  std::optional<Edge> failing_;
};

struct EdgeSwapResult {
  bool holds = false;
  std::optional<Edge> failing_edge;
};

inline EdgeSwapResult check_edge_swap(const Complex2D& c) {
  EdgeSwapAnalysis a(c);
  return {a.holds(), a.failing_edge()};
}

}  // namespace tdlc::complex
