#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tdlc/complex/complex2d.hpp"
#include "tdlc/homology/snf.hpp"

namespace tdlc::homology {

/// H_k ≅ Z^betti ⊕ ⊕ Z/t_i.
struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<Integer> torsion;

  bool trivial() const { return betti == 0 && torsion.empty(); }

  std::string to_string() const {
    if (trivial()) return "0";
    std::string s;
    if (betti > 0) s = betti == 1 ? "Z" : "Z^" + std::to_string(betti);
    for (const auto& t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.get_str());
    return s;
  }

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct BoundaryMatrices {
  SparseIntMatrix d1;  // vertices x edges
  SparseIntMatrix d2;  // edges x triangles
};

/// Edges in lexicographic order (u < v) and triangles in the complex's
/// sorted order, all oriented by increasing vertex index:
/// d(u,v) = v - u and d(a,b,c) = (b,c) - (a,c) + (a,b).
inline BoundaryMatrices boundary_matrices(const complex::Complex2D& c) {
  const Graph& g = c.graph();
  const auto edges = g.edges();
  std::vector<std::uint32_t> edge_of_directed(g.directed_edge_count());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    edge_of_directed[*g.directed_index(edges[e].first, edges[e].second)] = static_cast<std::uint32_t>(e);
  }
  auto edge_index = [&](Vertex u, Vertex v) { return edge_of_directed[*g.directed_index(u, v)]; };

  BoundaryMatrices b{SparseIntMatrix(c.vertex_count(), edges.size()), SparseIntMatrix(edges.size(), c.triangles().size())};
  for (std::size_t e = 0; e < edges.size(); ++e) {
    b.d1.push(edges[e].first, e, -1);
    b.d1.push(edges[e].second, e, 1);
  }
  for (std::size_t t = 0; t < c.triangles().size(); ++t) {
    const auto& tri = c.triangles()[t];
    b.d2.push(edge_index(tri[0], tri[1]), t, 1);
    b.d2.push(edge_index(tri[0], tri[2]), t, -1);
    b.d2.push(edge_index(tri[1], tri[2]), t, 1);
  }
  return b;
}

struct Homology2D {
  HomologyGroup h[3];
  std::size_t rank_d1 = 0;
  std::size_t rank_d2 = 0;
};

/// Integral homology of a 2-complex. H_1 is computed as the cokernel of the
/// triangle boundaries written in the basis of cycles dual to a spanning
/// forest (the rows of the forest edges are dropped), which leaves the
/// invariant factors unchanged and keeps the elimination small.
inline Homology2D compute_homology(const complex::Complex2D& c) {
  const Graph& g = c.graph();
  const auto edges = g.edges();
  const std::size_t components = connected_components(g);
  const std::size_t rank_d1 = c.vertex_count() - components;

  std::vector<bool> in_forest(edges.size(), false);
  {
    std::vector<bool> seen(c.vertex_count(), false);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < c.vertex_count(); ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      queue.assign(1, s);
      for (std::size_t i = 0; i < queue.size(); ++i) {
        const Vertex u = queue[i];
        for (Vertex w : g.neighbors(u)) {
          if (seen[w]) continue;
          seen[w] = true;
          queue.push_back(w);
          const Edge e = u < w ? Edge{u, w} : Edge{w, u};
          in_forest[static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin())] = true;
        }
      }
    }
  }
  std::vector<std::uint32_t> cycle_rows;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!in_forest[e]) cycle_rows.push_back(static_cast<std::uint32_t>(e));
  }
  const auto b = boundary_matrices(c);
  const SnfResult snf = smith_normal_form(b.d2.select_rows(cycle_rows));

  Homology2D out;
  out.rank_d1 = rank_d1;
  out.rank_d2 = snf.rank;
  out.h[0].betti = components;
  out.h[1].betti = cycle_rows.size() - snf.rank;
  out.h[1].torsion = snf.torsion();
  out.h[2].betti = c.triangles().size() - snf.rank;
  return out;
}

/// H_k for k in {0, 1, 2}.
inline HomologyGroup homology_rank_and_torsion(const complex::Complex2D& c, int k) {
  if (k < 0 || k > 2) throw InputError("homology degree must be 0, 1 or 2");
  return compute_homology(c).h[k];
}

/// A finite simplicial complex of any dimension, given by its facets. Faces
/// of each dimension are stored sorted, each as an increasing vertex list.
class SimplicialComplex {
public:
  using Simplex = std::vector<Vertex>;

  explicit SimplicialComplex(const std::vector<Simplex>& facets) {
    std::map<std::size_t, std::vector<Simplex>> by_dim;
    for (auto f : facets) {
      if (f.empty()) throw InputError("empty facet");
      std::sort(f.begin(), f.end());
      if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw InputError("facet repeats a vertex");
      if (f.size() > 20) throw InputError("facet dimension too large");
      const std::size_t n = f.size();
      for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        Simplex s;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1U << i)) s.push_back(f[i]);
        }
        by_dim[s.size() - 1].push_back(std::move(s));
      }
    }
    for (auto& [d, list] : by_dim) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      faces_.resize(d + 1);
      faces_[d] = std::move(list);
    }
  }

  static SimplicialComplex from_complex(const complex::Complex2D& c) {
    std::vector<Simplex> facets;
    for (Vertex v = 0; v < c.vertex_count(); ++v) facets.push_back({v});
    for (auto [u, v] : c.graph().edges()) facets.push_back({u, v});
    for (const auto& t : c.triangles()) facets.push_back({t[0], t[1], t[2]});
    return SimplicialComplex(facets);
  }

  /// Highest face dimension, or -1 when empty.
  int dimension() const { return static_cast<int>(faces_.size()) - 1; }
  const std::vector<Simplex>& faces(std::size_t d) const { return faces_.at(d); }
  std::size_t count(std::size_t d) const { return d < faces_.size() ? faces_[d].size() : 0; }

  /// d_k : C_k -> C_{k-1}, with the face omitting vertex i carrying sign (-1)^i.
  SparseIntMatrix boundary(std::size_t k) const {
    if (k == 0 || k >= faces_.size()) return SparseIntMatrix(count(k == 0 ? 0 : k - 1), count(k));
    const auto& lower = faces_[k - 1];
    SparseIntMatrix m(lower.size(), faces_[k].size());
    for (std::size_t j = 0; j < faces_[k].size(); ++j) {
      const auto& s = faces_[k][j];
      std::vector<std::pair<std::uint32_t, std::int64_t>> col;
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        const auto row = static_cast<std::uint32_t>(std::lower_bound(lower.begin(), lower.end(), face) - lower.begin());
        col.emplace_back(row, i % 2 == 0 ? 1 : -1);
      }
      std::sort(col.begin(), col.end());
      for (auto [r, v] : col) m.push(r, j, v);
    }
    return m;
  }

  /// H_0 .. H_dim by Smith normal form of every boundary map.
  std::vector<HomologyGroup> homology() const {
    const std::size_t top = faces_.size();
    std::vector<SnfResult> snf(top + 1);
    for (std::size_t k = 1; k < top; ++k) snf[k] = smith_normal_form(boundary(k));
    std::vector<HomologyGroup> out(top);
    for (std::size_t k = 0; k < top; ++k) {
      const std::size_t rank_in = k + 1 < top ? snf[k + 1].rank : 0;
      out[k].betti = faces_[k].size() - snf[k].rank - rank_in;
      if (k + 1 < top) out[k].torsion = snf[k + 1].torsion();
    }
    return out;
  }

private:
  std::vector<std::vector<Simplex>> faces_;
};

/// Boundary of the n-dimensional cross-polytope as facets: one vertex from
/// each antipodal pair {2i, 2i+1}.
inline std::vector<SimplicialComplex::Simplex> cross_polytope_facets(std::size_t n) {
  std::vector<SimplicialComplex::Simplex> out;
  for (std::uint32_t signs = 0; signs < (1U << n); ++signs) {
    SimplicialComplex::Simplex f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(static_cast<Vertex>(2 * i + ((signs >> i) & 1U)));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace tdlc::homology
