#pragma once

#include <set>
#include <vector>

#include "tdlc/perm/perm_group.hpp"
#include "tdlc/tree/ball.hpp"

namespace tdlc::tree {

using perm::Permutation;
using perm::PermGroup;

/// A side-preserving isometric embedding of the sub-ball of radius
/// `domain_radius` (same root) into the ball. Vertices outside the domain
/// map to kNoVertex.
struct BallMap {
  std::size_t domain_radius = 0;
  std::vector<Vertex> images;

  Vertex operator()(Vertex v) const { return images[v]; }
  bool in_domain(Vertex v) const { return images[v] != kNoVertex; }

  friend bool operator==(const BallMap&, const BallMap&) = default;
  friend auto operator<=>(const BallMap&, const BallMap&) = default;
};

inline BallMap identity_map(const BiregularBall& b) {
  BallMap g{b.radius, {}};
  for (Vertex v = 0; v < b.vertex_count(); ++v) g.images.push_back(v);
  return g;
}

/// Checks injectivity, side, adjacency and the domain shape.
inline bool is_ball_map(const BiregularBall& b, const BallMap& g) {
  if (g.images.size() != b.vertex_count()) return false;
  std::vector<bool> hit(b.vertex_count(), false);
  for (Vertex v = 0; v < b.vertex_count(); ++v) {
    if ((b.depth[v] <= g.domain_radius) != g.in_domain(v)) return false;
    if (!g.in_domain(v)) continue;
    const Vertex w = g(v);
    if (w >= b.vertex_count() || hit[w] || b.side[w] != b.side[v]) return false;
    hit[w] = true;
    if (b.parent[v] != kNoVertex && !b.adjacent(w, g(b.parent[v]))) return false;
  }
  return true;
}

/// g after h (h first), on the vertices where both are defined.
inline BallMap compose(const BallMap& g, const BallMap& h) {
  BallMap out{std::min(g.domain_radius, h.domain_radius), std::vector<Vertex>(h.images.size(), kNoVertex)};
  for (Vertex v = 0; v < h.images.size(); ++v) {
    if (h.in_domain(v) && g.in_domain(h(v))) out.images[v] = g(h(v));
  }
  return out;
}

/// Inverse of a root-fixing automorphism of the whole ball.
inline BallMap inverse_map(const BallMap& g) {
  BallMap out{g.domain_radius, std::vector<Vertex>(g.images.size(), kNoVertex)};
  for (Vertex v = 0; v < g.images.size(); ++v) {
    if (g.in_domain(v)) out.images[g(v)] = v;
  }
  return out;
}

namespace detail {

// by_label[v][x]: the neighbour u with label(v -> u) = x, or kNoVertex.
inline std::vector<std::vector<Vertex>> neighbours_by_label(const BiregularBall& b, const LegalLabeling& l) {
  std::vector<std::vector<Vertex>> out(b.vertex_count());
  for (Vertex v = 0; v < b.vertex_count(); ++v) {
    out[v].assign(b.label_count(v), kNoVertex);
    for (Vertex u : b.neighbors(v)) out[v][l.label(b, v, u)] = u;
  }
  return out;
}

}  // namespace detail

/// c(g, v) = l_{g(v)} o g o l_v^-1: the label x of v -> u goes to the label
/// of g(v) -> g(u).
inline Permutation local_action(const BiregularBall& b, const LegalLabeling& l, const BallMap& g, Vertex v) {
  if (!g.in_domain(v) || b.depth[v] >= g.domain_radius) throw DomainError("star of vertex " + std::to_string(v) + " is not in the domain");
  if (!b.is_interior(v) || !b.is_interior(g(v))) throw DomainError("vertex " + std::to_string(v) + " or its image is on the boundary");
  std::vector<perm::Point> images(b.label_count(v));
  std::vector<bool> hit(images.size(), false);
  for (Vertex u : b.neighbors(v)) {
    const unsigned y = l.label(b, g(v), g(u));
    if (hit[y]) throw InputError("labeling is not a bijection at the image of vertex " + std::to_string(v));
    hit[y] = true;
    images[l.label(b, v, u)] = y;
  }
  return Permutation(std::move(images));
}

/// Vertices whose local action is constrained: star inside the domain, image interior.
inline std::vector<Vertex> constrained_vertices(const BiregularBall& b, const BallMap& g) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < b.vertex_count(); ++v) {
    if (g.in_domain(v) && b.depth[v] < g.domain_radius && b.is_interior(v) && b.is_interior(g(v))) out.push_back(v);
  }
  return out;
}

/// Every constrained local action lies in M (on V_X) or N (on V_Y).
inline bool is_universal_element(const BiregularBall& b, const LegalLabeling& l, const BallMap& g, const PermGroup& m,
                                 const PermGroup& n) {
  for (Vertex v : constrained_vertices(b, g)) {
    const PermGroup& local = b.side[v] == Side::X ? m : n;
    if (!local.contains(local_action(b, l, g, v))) return false;
  }
  return true;
}

/// All universal ball maps. With fix_root the maps are the root-fixing
/// automorphisms of the ball. Without it, the root may go to any vertex w of
/// its side with d(root, w) < radius, and the map is defined on the sub-ball
/// of radius radius - d(root, w).
///
/// Depth-first over vertices in breadth-first order: at each constrained
/// vertex, every local permutation in M or N agreeing with the already
/// mapped parent edge fixes the images of the children.
inline std::vector<BallMap> enumerate_universal(const BiregularBall& b, const LegalLabeling& l, const PermGroup& m,
                                                const PermGroup& n, bool fix_root) {
  if (b.radius < 1) throw DomainError("ball radius must be at least 1");
  if (m.degree() != b.x_size || n.degree() != b.y_size) throw InputError("local groups must act on X and Y");
  const auto by_label = detail::neighbours_by_label(b, l);
  const auto& m_el = m.elements();
  const auto& n_el = n.elements();
  std::vector<BallMap> out;

  std::vector<Vertex> targets;
  for (Vertex w = 0; w < b.vertex_count(); ++w) {
    if (b.side[w] == b.side[0] && (fix_root ? w == 0 : b.depth[w] < b.radius)) targets.push_back(w);
  }
  for (Vertex target : targets) {
    BallMap g{b.radius - b.depth[target], std::vector<Vertex>(b.vertex_count(), kNoVertex)};
    g.images[0] = target;
    std::vector<Vertex> order;  // domain vertices with their star in the domain
    for (Vertex v = 0; v < b.vertex_count(); ++v) {
      if (b.depth[v] < g.domain_radius) order.push_back(v);
    }
    auto extend = [&](auto&& self, std::size_t i) -> void {
      if (i == order.size()) {
        out.push_back(g);
        return;
      }
      const Vertex v = order[i];
      const Vertex gv = g(v);
      const auto& local = b.side[v] == Side::X ? m_el : n_el;
      const Vertex p = b.parent[v];
      for (const auto& s : local) {
        if (p != kNoVertex && s(l.label(b, v, p)) != l.label(b, gv, g(p))) continue;
        bool ok = true;
        for (Vertex c : b.children[v]) {
          const Vertex gc = by_label[gv][s(l.down[c])];
          if (gc == kNoVertex) {
            ok = false;
            break;
          }
          g.images[c] = gc;
        }
        if (ok) self(self, i + 1);
      }
      for (Vertex c : b.children[v]) g.images[c] = kNoVertex;
    };
    extend(extend, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// { c(g, root) : g universal and root-fixing }.
inline std::set<Permutation> root_local_action_image(const BiregularBall& b, const LegalLabeling& l, const PermGroup& m,
                                                     const PermGroup& n) {
  if (b.radius < 2) throw DomainError("ball radius must be at least 2");
  std::set<Permutation> out;
  for (const auto& g : enumerate_universal(b, l, m, n, true)) out.insert(local_action(b, l, g, 0));
  return out;
}

/// Number of maps fixing both endpoints of the edge {u, w}.
inline std::size_t edge_fixator_size(const std::vector<BallMap>& maps, Vertex u, Vertex w) {
  std::size_t count = 0;
  for (const auto& g : maps) {
    if (g.in_domain(u) && g.in_domain(w) && g(u) == u && g(w) == w) ++count;
  }
  return count;
}

}  // namespace tdlc::tree
