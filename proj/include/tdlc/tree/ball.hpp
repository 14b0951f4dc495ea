#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/graph.hpp"

namespace tdlc::tree {

enum class Side { X, Y };

inline Side opposite(Side s) { return s == Side::X ? Side::Y : Side::X; }

inline constexpr Vertex kNoVertex = ~Vertex{0};

/// Ball of radius r around a root in the (|X|, |Y|)-biregular tree. Vertices
/// are numbered breadth first; vertices at depth r are the truncated boundary.
struct BiregularBall {
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  std::size_t radius = 0;
  Side root_side = Side::X;
  std::vector<Side> side;
  std::vector<Vertex> parent;  // kNoVertex for the root
  std::vector<std::vector<Vertex>> children;
  std::vector<std::size_t> depth;

  std::size_t vertex_count() const noexcept { return side.size(); }
  /// Size of the label set on edges leaving v: |X| on V_X, |Y| on V_Y.
  std::size_t label_count(Vertex v) const { return side[v] == Side::X ? x_size : y_size; }
  /// All of v's edges are present.
  bool is_interior(Vertex v) const { return depth[v] < radius; }

  /// Parent first, then children in order.
  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    if (parent[v] != kNoVertex) out.push_back(parent[v]);
    out.insert(out.end(), children[v].begin(), children[v].end());
    return out;
  }

  bool adjacent(Vertex u, Vertex v) const { return parent[u] == v || parent[v] == u; }

  std::size_t distance(Vertex u, Vertex v) const {
    std::size_t d = 0;
    while (u != v) {
      if (depth[u] >= depth[v]) {
        u = parent[u];
      } else {
        v = parent[v];
      }
      ++d;
    }
    return d;
  }
};

/// Vertex count of the ball: 1 + d_0 + d_0 (d_1 - 1) + d_0 (d_1 - 1)(d_0 - 1) + ...
/// where d_0 is the root side's degree.
inline std::size_t ball_vertex_count(std::size_t x_size, std::size_t y_size, std::size_t radius, Side root_side) {
  std::size_t total = 1;
  std::size_t layer = 1;
  Side s = root_side;
  for (std::size_t k = 1; k <= radius; ++k) {
    const std::size_t deg = s == Side::X ? x_size : y_size;
    layer *= k == 1 ? deg : deg - 1;
    total += layer;
    s = opposite(s);
  }
  return total;
}

inline BiregularBall build_ball(std::size_t x_size, std::size_t y_size, std::size_t radius, Side root_side = Side::X) {
  if (x_size < 2 || y_size < 2) throw InputError("|X| and |Y| must be at least 2");
  if (radius > 64) throw InputError("radius too large");
  BiregularBall b;
  b.x_size = x_size;
  b.y_size = y_size;
  b.radius = radius;
  b.root_side = root_side;
  b.side.push_back(root_side);
  b.parent.push_back(kNoVertex);
  b.children.emplace_back();
  b.depth.push_back(0);
  for (Vertex v = 0; v < b.vertex_count(); ++v) {
    if (b.depth[v] == radius) continue;
    const std::size_t deg = b.label_count(v);
    const std::size_t kids = b.parent[v] == kNoVertex ? deg : deg - 1;
    for (std::size_t i = 0; i < kids; ++i) {
      const auto c = static_cast<Vertex>(b.vertex_count());
      b.side.push_back(opposite(b.side[v]));
      b.parent.push_back(v);
      b.children.emplace_back();
      b.depth.push_back(b.depth[v] + 1);
      b.children[v].push_back(c);
    }
  }
  return b;
}

/// Labels of the directed edges of a ball. An edge leaving a V_X-vertex
/// carries a label in X = {0, ..., |X|-1}, one leaving a V_Y-vertex a label
/// in Y = {0, ..., |Y|-1}.
struct LegalLabeling {
  std::vector<unsigned> down;  // parent(v) -> v; unused at the root
  std::vector<unsigned> up;    // v -> parent(v); unused at the root

  unsigned label(const BiregularBall& b, Vertex from, Vertex to) const {
    if (b.parent[to] == from) return down[to];
    if (b.parent[from] == to) return up[from];
    throw InputError("vertices are not adjacent");
  }
};

/// Out-labels in breadth-first order: the edge back to the parent carries
/// the label forced by constancy on the parent's incoming edges, the
/// children get the remaining labels in increasing order. The root's
/// incoming label is 0.
inline LegalLabeling canonical_labeling(const BiregularBall& b) {
  const std::size_t n = b.vertex_count();
  LegalLabeling l{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
  std::vector<unsigned> incoming(n, 0);  // the constant label on edges into v
  for (Vertex v = 0; v < n; ++v) {
    unsigned next = 0;
    const bool has_parent = b.parent[v] != kNoVertex;
    if (has_parent) l.up[v] = incoming[b.parent[v]];
    for (Vertex c : b.children[v]) {
      if (has_parent && next == l.up[v]) ++next;
      l.down[c] = next;
      incoming[c] = next;
      ++next;
    }
  }
  return l;
}

struct LabelingViolation {
  int axiom = 0;  // 1: V_X bijection, 2: V_Y bijection, 3: constancy on incoming edges, 0: label out of range
  Vertex vertex = 0;
  std::string detail;
};

/// The first violated axiom, scanning vertices in order; nullopt when legal.
/// Bijectivity is required at interior vertices only, whose edges are all present.
inline std::optional<LabelingViolation> validate_labeling(const BiregularBall& b, const LegalLabeling& l) {
  const std::size_t n = b.vertex_count();
  if (l.down.size() != n || l.up.size() != n) return LabelingViolation{0, 0, "labeling size differs from the ball"};
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : b.neighbors(v)) {
      if (l.label(b, v, u) >= b.label_count(v)) {
        return LabelingViolation{0, v, "label of " + std::to_string(v) + "->" + std::to_string(u) + " out of range"};
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (b.is_interior(v)) {
      std::vector<bool> seen(b.label_count(v), false);
      for (Vertex u : b.neighbors(v)) {
        const unsigned x = l.label(b, v, u);
        if (seen[x]) {
          return LabelingViolation{b.side[v] == Side::X ? 1 : 2, v,
                                   "label " + std::to_string(x) + " repeats on edges leaving " + std::to_string(v)};
        }
        seen[x] = true;
      }
    }
    const auto nb = b.neighbors(v);
    for (Vertex u : nb) {
      if (l.label(b, u, v) != l.label(b, nb.front(), v)) {
        return LabelingViolation{3, v,
                                 "edges " + std::to_string(nb.front()) + "->" + std::to_string(v) + " and " + std::to_string(u) +
                                     "->" + std::to_string(v) + " carry different labels"};
      }
    }
  }
  return std::nullopt;
}

}  // namespace tdlc::tree
