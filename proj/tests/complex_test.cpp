#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "tdlc/complex/checks.hpp"
#include "tdlc/complex/coset_complex.hpp"
#include "tdlc/complex/standard.hpp"
#include "test_support.hpp"

using namespace tdlc;
using namespace tdlc::complex;
using tdlc::testing::closure;
using perm::Permutation;
using perm::PermGroup;

namespace {

using CosetSet = std::set<Permutation>;

// Right cosets as explicit element sets, sorted by least element.
std::vector<CosetSet> explicit_cosets(const PermGroup& g, const PermGroup& h) {
  const auto gs = closure(g.degree(), g.generators());
  const auto hs = closure(h.degree(), h.generators());
  std::set<CosetSet> out;
  for (const auto& x : gs) {
    CosetSet c;
    for (const auto& y : hs) c.insert(y * x);
    out.insert(c);
  }
  std::vector<CosetSet> v(out.begin(), out.end());
  std::sort(v.begin(), v.end(), [](const CosetSet& a, const CosetSet& b) { return *a.begin() < *b.begin(); });
  return v;
}

PermGroup sym3_sub(perm::Point a, perm::Point b) { return PermGroup(3, {Permutation::from_cycles(3, {{a, b}})}); }

// Orbit count on ordered adjacent pairs from the full element list.
std::size_t brute_directed_orbits(const Complex2D& c) {
  const auto& elts = c.action()->elements();
  std::set<Edge> seen;
  std::size_t orbits = 0;
  for (std::size_t e = 0; e < c.graph().directed_edge_count(); ++e) {
    const Edge d = c.graph().directed_edge(e);
    if (seen.count(d)) continue;
    ++orbits;
    for (const auto& g : elts) seen.insert({g(d.first), g(d.second)});
  }
  return orbits;
}

bool brute_edge_swap(const Complex2D& c) {
  const auto& elts = c.action()->elements();
  for (std::size_t e = 0; e < c.graph().directed_edge_count(); ++e) {
    auto [x, y] = c.graph().directed_edge(e);
    bool ok = false;
    for (Vertex z : c.graph().neighbors(x)) {
      if (!c.has_triangle(make_triangle(x, y, z)) || z == y) continue;
      for (const auto& g : elts) {
        if (g(z) == z && g(x) == y) ok = true;
      }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

TEST(CosetComplex, Sym3TripleMatchesExplicitIntersections) {
  const PermGroup g = perm::symmetric(3);
  const std::vector<PermGroup> hs{sym3_sub(0, 1), sym3_sub(0, 2), sym3_sub(1, 2)};
  const auto cc = build_coset_complex(g, hs);
  ASSERT_EQ(cc.complex.vertex_count(), 9u);

  std::vector<CosetSet> all;
  for (const auto& h : hs) {
    auto cs = explicit_cosets(g, h);
    all.insert(all.end(), cs.begin(), cs.end());
  }
  ASSERT_EQ(all.size(), 9u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_EQ(cc.parts[i].representatives()[c], *all[cc.vertex(i, c)].begin());
    }
  }
  auto part = [](Vertex v) { return v / 3; };
  bool meet[9][9] = {};
  for (Vertex u = 0; u < 9; ++u) {
    for (Vertex v = 0; v < 9; ++v) {
      if (part(u) != part(v)) {
        for (const auto& x : all[u]) meet[u][v] = meet[u][v] || all[v].count(x) > 0;
      }
      EXPECT_EQ(cc.complex.graph().has_edge(u, v), meet[u][v]) << u << " " << v;
    }
  }
  std::size_t oracle_triangles = 0;
  for (Vertex a = 0; a < 3; ++a) {
    for (Vertex b = 3; b < 6; ++b) {
      for (Vertex c = 6; c < 9; ++c) oracle_triangles += meet[a][b] && meet[a][c] && meet[b][c];
    }
  }
  EXPECT_EQ(cc.complex.triangles().size(), oracle_triangles);
  EXPECT_TRUE(is_flag(cc.complex).flag);
}

TEST(CosetComplex, PartsAreTransitiveAndSized) {
  const PermGroup g = perm::symmetric(4);
  const std::vector<PermGroup> hs{PermGroup(4, {Permutation::from_cycles(4, {{0, 1}})}),
                                  PermGroup(4, {Permutation::from_cycles(4, {{0, 1, 2}})}),
                                  PermGroup(4, {Permutation::from_cycles(4, {{0, 1, 2, 3}})})};
  const auto cc = build_coset_complex(g, hs);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(cc.parts[i].size() * hs[i].order(), 24u);
    const auto orbit = perm::orbit_of_point(*cc.complex.action(), cc.vertex(i, 0));
    EXPECT_EQ(orbit.size(), cc.parts[i].size());
  }
}

TEST(CosetComplex, TwoSubgroupsGiveBipartiteGraph) {
  const PermGroup g = perm::symmetric(3);
  const auto cc = build_coset_complex(g, {sym3_sub(0, 1), sym3_sub(0, 2)});
  EXPECT_EQ(cc.complex.vertex_count(), 6u);
  EXPECT_TRUE(cc.complex.triangles().empty());
  for (auto [u, v] : cc.complex.graph().edges()) EXPECT_NE(u / 3, v / 3);
}

TEST(CosetComplex, RejectsBadInput) {
  const PermGroup g = perm::symmetric(3);
  EXPECT_THROW(build_coset_complex(g, {sym3_sub(0, 1)}), InputError);
  const PermGroup foreign(3, {Permutation::from_cycles(3, {{0, 1}})});
  const PermGroup small(3, {Permutation::from_cycles(3, {{0, 1, 2}})});
  EXPECT_THROW(build_coset_complex(small, {foreign, small}), InputError);
}

TEST(Flag, OctahedronIsFlag) {
  const auto o = octahedron();
  EXPECT_EQ(o.triangles().size(), 8u);
  EXPECT_TRUE(is_flag(o).flag);
}

TEST(Flag, TetrahedronBoundaryHasFourClique) {
  const auto k4 = from_facets(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  const auto r = is_flag(k4);
  EXPECT_FALSE(r.flag);
  EXPECT_EQ(r.witness, (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(Flag, MissingTriangleIsReported) {
  const auto c = Complex2D(cycle_graph(3), {});
  const auto r = is_flag(c);
  EXPECT_FALSE(r.flag);
  EXPECT_EQ(r.witness, (std::vector<Vertex>{0, 1, 2}));
}

TEST(Flag, FlagMeansCliqueComplex) {
  for (const auto& c : {octahedron(), projective_plane6(), clique_complex(petersen_graph())}) {
    const auto cliques = three_cliques(c.graph());
    EXPECT_EQ(is_flag(c).flag, cliques == c.triangles() && is_flag(clique_complex(c.graph())).flag);
  }
}

TEST(EdgeCover, Octahedron) { EXPECT_TRUE(every_edge_in_triangle(octahedron()).covered); }

TEST(EdgeCover, SingleEdge) {
  const Complex2D c(Graph(2, {{0, 1}}), {});
  const auto r = every_edge_in_triangle(c);
  EXPECT_FALSE(r.covered);
  EXPECT_EQ(r.uncovered, (Edge{0, 1}));
}

TEST(Orbits, OctahedronDirectedEdges) {
  const auto o = octahedron();
  EXPECT_EQ(o.action()->order(), 48u);
  EXPECT_EQ(o.graph().directed_edge_count(), 24u);
  EXPECT_EQ(directed_edge_orbits(o), 1u);
  EXPECT_EQ(brute_directed_orbits(o), 1u);
}

TEST(Orbits, EdgelessGraph) {
  const Complex2D c = Complex2D(Graph(4, {}), {}).with_action(perm::symmetric(4));
  EXPECT_EQ(directed_edge_orbits(c), 0u);
}

TEST(Orbits, MissingActionIsInputError) {
  const Complex2D c(cycle_graph(4), {});
  EXPECT_THROW(directed_edge_orbits(c), InputError);
  EXPECT_THROW(triangle_orbits(c), InputError);
  EXPECT_THROW(check_edge_swap(c), InputError);
}

TEST(Orbits, TriangleOrbits) {
  const auto o = octahedron();
  const auto reps = triangle_orbits(o);
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_EQ(reps[0], (Triangle{0, 2, 4}));
  const auto trivial = o.without_action().with_action(PermGroup::trivial(6));
  EXPECT_EQ(triangle_orbits(trivial), trivial.triangles());
}

TEST(EdgeSwap, OctahedronHoldsWithValidWitnesses) {
  const auto o = octahedron();
  EdgeSwapAnalysis a(o);
  EXPECT_TRUE(a.holds());
  EXPECT_TRUE(brute_edge_swap(o));
  for (std::size_t e = 0; e < o.graph().directed_edge_count(); ++e) {
    auto [x, y] = o.graph().directed_edge(e);
    const auto w = a.witness(x, y);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(o.has_triangle(make_triangle(x, y, w->apex)));
    EXPECT_EQ(w->element(w->apex), w->apex);
    EXPECT_EQ(w->element(x), y);
    EXPECT_TRUE(o.action()->contains(w->element));
  }
}

TEST(EdgeSwap, TriangleWithTrivialActionFails) {
  const auto t = from_facets(3, {{0, 1, 2}}).with_action(PermGroup::trivial(3));
  const auto r = check_edge_swap(t);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.failing_edge, (Edge{0, 1}));
}

TEST(EdgeSwap, AgreesWithBruteForceOnCosetComplexes) {
  const PermGroup s4 = perm::symmetric(4);
  const std::vector<std::vector<PermGroup>> cases{
      {PermGroup(4, {Permutation::from_cycles(4, {{0, 1}})}), PermGroup(4, {Permutation::from_cycles(4, {{1, 2}})}),
       PermGroup(4, {Permutation::from_cycles(4, {{2, 3}})})},
      {PermGroup(4, {Permutation::from_cycles(4, {{0, 1}}), Permutation::from_cycles(4, {{2, 3}})}),
       PermGroup(4, {Permutation::from_cycles(4, {{0, 2}, {1, 3}})}), PermGroup(4, {Permutation::from_cycles(4, {{0, 1, 2}})})},
  };
  for (const auto& hs : cases) {
    const auto cc = build_coset_complex(s4, hs);
    EXPECT_EQ(check_edge_swap(cc.complex).holds, brute_edge_swap(cc.complex));
    EXPECT_EQ(directed_edge_orbits(cc.complex), brute_directed_orbits(cc.complex));
    // A part-preserving action cannot reverse an edge, so it never swaps.
    if (!cc.complex.graph().edges().empty()) {
      EXPECT_GE(directed_edge_orbits(cc.complex), 2u);
    }
  }
}

TEST(EdgeSwap, TransitivityImplication) {
  // Directed-edge transitivity plus one swapping triangle and full edge
  // coverage should give the swap condition; counterexamples would show here.
  std::vector<Complex2D> instances{octahedron(), clique_complex(cross_polytope_graph(4)).with_action(perm::hyperoctahedral(4))};
  for (const auto& c : instances) {
    if (directed_edge_orbits(c) != 1 || !every_edge_in_triangle(c).covered) continue;
    EXPECT_TRUE(check_edge_swap(c).holds);
  }
}

TEST(Complex2D, RejectsNonAutomorphism) {
  const auto c = clique_complex(cycle_graph(4));
  EXPECT_THROW(c.with_action(PermGroup(4, {Permutation::from_cycles(4, {{0, 1}})})), InputError);
  EXPECT_NO_THROW(c.with_action(PermGroup(4, {Permutation::from_cycles(4, {{0, 1, 2, 3}})})));
}
