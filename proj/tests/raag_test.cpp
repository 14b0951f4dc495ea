#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "tdlc/complex/checks.hpp"
#include "tdlc/complex/standard.hpp"
#include "tdlc/raag/bestvina_brady.hpp"
#include "oracles.hpp"

namespace {

using namespace tdlc;
using namespace tdlc::raag;
using perm::Permutation;

std::shared_ptr<const Graph> share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

RaagWord word(const std::shared_ptr<const Graph>& g, std::vector<Letter> letters) { return RaagWord(g, std::move(letters)); }

std::shared_ptr<const Graph> path3() { return share(Graph(3, {{0, 1}, {1, 2}})); }

std::vector<Permutation> automorphisms(const Graph& g) {
  std::vector<perm::Point> images(g.vertex_count());
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    const Permutation p(images);
    bool ok = true;
    for (auto [u, v] : g.edges()) ok = ok && g.has_edge(p(u), p(v));
    if (ok) out.push_back(p);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

RaagWord random_word(const std::shared_ptr<const Graph>& g, std::mt19937& rng, std::size_t max_len) {
  std::vector<Letter> letters(rng() % (max_len + 1));
  for (auto& l : letters) l = {static_cast<Vertex>(rng() % g->vertex_count()), rng() % 2 ? 1 : -1};
  return RaagWord(g, std::move(letters));
}

RaagWord random_kernel_word(const std::shared_ptr<const Graph>& g, std::mt19937& rng, std::size_t max_len) {
  for (;;) {
    auto w = random_word(g, rng, max_len);
    if (exponent_sum(w) == 0) return w;
  }
}

TEST(Normalize, Examples) {
  const auto g = path3();
  EXPECT_TRUE(normalize(word(g, {{0, 1}, {0, -1}})).empty());
  EXPECT_EQ(normalize(word(g, {{1, 1}, {0, 1}, {1, -1}})), word(g, {{0, 1}}));
  const auto zxz = word(g, {{2, 1}, {0, 1}, {2, -1}});
  EXPECT_EQ(normalize(zxz), zxz);
  EXPECT_EQ(zxz.to_string(), "v3 v1 v3^-1");
  EXPECT_EQ(RaagWord(g).to_string(), "1");
}

TEST(Normalize, RejectsUnknownVertex) {
  EXPECT_THROW(word(path3(), {{3, 1}}), InputError);
  EXPECT_THROW(word(path3(), {{0, 2}}), InputError);
}

Letter letter_of(unsigned code) { return {code / 2, code % 2 ? -1 : 1}; }

// normalize must return the shortlex-least word of its rewriting class
void check_against_rewriting(const std::shared_ptr<const Graph>& g) {
  const std::size_t n = g->vertex_count();
  const oracle::WordSpace space(n);
  const auto least = oracle::least_equivalent_words(*g, space);
  for (std::size_t w = 0; w < space.size(); ++w) {
    std::vector<Letter> letters;
    for (unsigned c : space.codes(w)) letters.push_back(letter_of(c));
    const RaagWord nf = normalize(RaagWord(g, letters));
    std::vector<unsigned> nf_codes;
    for (const auto& l : nf.letters()) nf_codes.push_back(l.code());
    ASSERT_LE(nf_codes.size(), letters.size());
    ASSERT_EQ(space.index(nf_codes), least[w])
        << "graph on " << n << " vertices with " << g->edge_count() << " edges, word " << RaagWord(g, letters).to_string();
  }
}

TEST(Normalize, AgreesWithRewritingOnAllSmallGraphs) {
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (auto& g : oracle::all_graphs(n)) {
      check_against_rewriting(share(std::move(g)));
      if (HasFatalFailure()) return;
      ++graphs;
    }
  }
  EXPECT_EQ(graphs, 1U + 2U + 8U + 64U);
}

TEST(Normalize, IdempotentAndPreservesExponentSum) {
  const auto g = share(complex::cross_polytope_graph(3));
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto w = random_word(g, rng, 20);
    const auto nf = normalize(w);
    ASSERT_EQ(normalize(nf), nf);
    ASSERT_LE(nf.length(), w.length());
    ASSERT_EQ(exponent_sum(nf), exponent_sum(w));
  }
}

TEST(ExponentSum, ExamplesAndHomomorphism) {
  const auto g = path3();
  EXPECT_EQ(exponent_sum(RaagWord(g)), 0);
  EXPECT_EQ(exponent_sum(word(g, {{0, 1}, {1, -1}})), 0);
  EXPECT_EQ(exponent_sum(word(g, {{0, 1}, {0, 1}, {2, -1}})), 1);
  std::mt19937 rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto u = random_word(g, rng, 10);
    const auto v = random_word(g, rng, 10);
    ASSERT_EQ(exponent_sum(u * v), exponent_sum(u) + exponent_sum(v));
    ASSERT_EQ(exponent_sum(u.inverse()), -exponent_sum(u));
  }
}

TEST(Rewrite, Examples) {
  const auto tri = share(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_EQ(rewrite_in_edge_generators(word(tri, {{0, 1}, {2, -1}})), (std::vector<EdgePower>{{0, 2, 1}}));
  const auto p = path3();
  const auto xz = word(p, {{0, 1}, {2, -1}});
  const auto out = rewrite_in_edge_generators(xz);
  EXPECT_EQ(out, (std::vector<EdgePower>{{0, 1, 1}, {1, 2, 1}}));
  EXPECT_TRUE(equal_in_group(expand(p, out), xz));
  EXPECT_TRUE(rewrite_in_edge_generators(RaagWord(p)).empty());
}

TEST(Rewrite, Errors) {
  EXPECT_THROW(rewrite_in_edge_generators(word(path3(), {{0, 1}})), DomainError);
  const auto split = share(Graph(3, {{0, 1}}));
  EXPECT_THROW(rewrite_in_edge_generators(word(split, {{0, 1}, {2, -1}})), InputError);
}

TEST(Rewrite, RoundTripsOverOctahedron) {
  const auto g = share(complex::cross_polytope_graph(3));
  std::mt19937 rng(13);
  for (int i = 0; i < 500; ++i) {
    const auto h = random_kernel_word(g, rng, 8);
    const auto out = rewrite_in_edge_generators(h);
    for (const auto& e : out) ASSERT_TRUE(g->has_edge(e.x, e.y)) << h.to_string();
    ASSERT_TRUE(equal_in_group(expand(g, out), h)) << h.to_string();
  }
}

TEST(Rewrite, UsesLeastShortestPaths) {
  // square 0-1-2-3-0: both 0-1-2 and 0-3-2 are shortest; 0-1-2 is least
  const Graph sq(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_EQ(least_shortest_path(sq, 0, 2), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(least_shortest_path(sq, 2, 0), (std::vector<Vertex>{2, 1, 0}));
}

class OctahedronSd : public ::testing::Test {
protected:
  std::shared_ptr<const Graph> g = share(complex::cross_polytope_graph(3));
  std::vector<Permutation> aut = automorphisms(*g);
  std::mt19937 rng{14};

  SdElement random_element() { return {random_kernel_word(g, rng, 8), aut[rng() % aut.size()]}; }
};

TEST_F(OctahedronSd, SymmetryGroupHasOrder48) { EXPECT_EQ(aut.size(), 48U); }

TEST_F(OctahedronSd, IdentityInverseAssociativity) {
  const auto one = SdElement::identity(g);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_element();
    const auto b = random_element();
    const auto c = random_element();
    ASSERT_TRUE(sd_equal(sd_multiply(one, a), a));
    ASSERT_TRUE(sd_equal(sd_multiply(a, sd_inverse(a)), one));
    ASSERT_TRUE(sd_equal(sd_multiply(sd_inverse(a), a), one));
    ASSERT_TRUE(sd_equal(sd_multiply(sd_multiply(a, b), c), sd_multiply(a, sd_multiply(b, c))));
  }
}

TEST_F(OctahedronSd, MakeRejectsNonAutomorphism) {
  EXPECT_THROW(SdElement::make(RaagWord(g), Permutation({1, 2, 0, 3, 4, 5})), InputError);
  EXPECT_NO_THROW(SdElement::make(RaagWord(g), aut.back()));
}

TEST_F(OctahedronSd, ConjugationFormula) {
  EXPECT_TRUE(conjugation_formula_check(RaagWord(g), aut));
  // x = 0; p swaps the antipodal pair 2, 3 and fixes 0
  EXPECT_TRUE(conjugation_formula_check(word(g, {{0, 1}}), {Permutation({0, 1, 3, 2, 4, 5})}));
  for (int i = 0; i < 50; ++i) {
    const auto h = random_word(g, rng, 8);
    ASSERT_TRUE(conjugation_formula_check(h, {aut[rng() % aut.size()]})) << h.to_string();
  }
}

TEST_F(OctahedronSd, EdgeGeneratorForEveryDirectedEdge) {
  const auto oct = complex::octahedron();
  const complex::EdgeSwapAnalysis swaps(oct);
  std::size_t checked = 0;
  for (std::size_t e = 0; e < g->directed_edge_count(); ++e) {
    const auto [x, y] = g->directed_edge(e);
    const auto w = swaps.witness(x, y);
    ASSERT_TRUE(w.has_value());
    const auto trace = edge_generator_from_conjugates(g, x, y, w->apex, w->element);
    ASSERT_EQ(trace.steps.size(), 2U);
    ASSERT_TRUE(sd_equal(trace.result, SdElement{word(g, {{x, 1}, {y, -1}}), Permutation::identity(6)}));
    ++checked;
  }
  EXPECT_EQ(checked, 24U);
}

TEST_F(OctahedronSd, EdgeGeneratorDegenerateAndInvalid) {
  const auto id = Permutation::identity(6);
  const auto trivial = edge_generator_from_conjugates(g, 0, 0, 2, id);
  EXPECT_TRUE(trivial.result.h.empty());
  EXPECT_EQ(trivial.steps.size(), 1U);
  EXPECT_THROW(edge_generator_from_conjugates(g, 0, 2, 4, id), DomainError);
  // maps 0 to 2 but moves the apex 4
  const Permutation moves_apex({2, 3, 4, 5, 0, 1});
  EXPECT_THROW(edge_generator_from_conjugates(g, 0, 2, 4, moves_apex), DomainError);
}

}  // namespace
