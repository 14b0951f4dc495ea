#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "tdlc/perm/automorphisms.hpp"
#include "tdlc/perm/coset_space.hpp"
#include "tdlc/perm/named_groups.hpp"
#include "tdlc/perm/orbit.hpp"
#include "tdlc/perm/subgroups.hpp"
#include "test_support.hpp"

namespace {

using namespace tdlc::perm;
using tdlc::InputError;
using tdlc::testing::closure;
using tdlc::testing::q_group;
using tdlc::testing::q_subgroup_39;

Permutation random_permutation(std::size_t n, std::mt19937& rng) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(images);
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), InputError);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 3}), InputError);
}

TEST(Permutation, GroupLaws) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_permutation(9, rng);
    auto b = random_permutation(9, rng);
    auto c = random_permutation(9, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a * a.inverse()).is_identity());
    EXPECT_EQ(a.pow(static_cast<long long>(a.order())), Permutation::identity(9));
  }
}

TEST(Permutation, RightActionConvention) {
  auto a = Permutation::from_cycles(3, {{0, 1}});
  auto b = Permutation::from_cycles(3, {{1, 2}});
  // a first: 0 -> 1 -> 2
  EXPECT_EQ((a * b)(0), 2U);
  EXPECT_EQ((a * b).to_cycle_string(), "(1 3 2)");
}

TEST(GroupOrder, SmallExamples) {
  EXPECT_EQ(symmetric(3).order(), 6U);
  EXPECT_EQ(PermGroup::trivial(4).order(), 1U);
  EXPECT_EQ(symmetric(7).order(), 5040U);
  EXPECT_EQ(hyperoctahedral(3).order(), 48U);
  EXPECT_EQ(affine(13, 3).order(), 39U);
}

TEST(GroupOrder, Psl2MatchesClosedForm) {
  for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL}) {
    EXPECT_EQ(psl2(p).order(), p * (p * p - 1) / 2) << "p=" << p;
  }
  EXPECT_EQ(psl2(13).order(), 1092U);
}

TEST(GroupOrder, ProductGroupQ) {
  auto q = q_group();
  EXPECT_EQ(q.degree(), 20U);
  EXPECT_EQ(q.order(), 9828U);
  EXPECT_EQ(closure(20, q.generators()).size(), 9828U);
}

TEST(GroupOrder, DegreeMismatchIsInputError) {
  EXPECT_THROW(PermGroup(3, {Permutation::identity(4)}), InputError);
}

TEST(GroupOrder, ChainAgreesWithClosureOnRandomGroups) {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 5;
    std::vector<Permutation> gens;
    const int k = 1 + trial % 3;
    for (int i = 0; i < k; ++i) gens.push_back(random_permutation(n, rng));
    auto elements = closure(n, gens);
    if (elements.size() > 5000) continue;
    PermGroup g(n, gens);
    ASSERT_EQ(g.order(), elements.size());
    for (const auto& e : g.elements()) ASSERT_TRUE(elements.contains(e));
    auto outsider = random_permutation(n, rng);
    EXPECT_EQ(g.contains(outsider), elements.contains(outsider));
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(GroupOrder, StabilizerOrderMatchesOrbitStabilizer) {
  auto g = psl2(13);
  auto stab = g.stabilizer(13);
  EXPECT_EQ(stab.order() * 14, g.order());
  for (const auto& s : stab.generators()) EXPECT_EQ(s(13), 13U);
}

TEST(Orbit, Examples) {
  auto s3 = symmetric(3);
  EXPECT_EQ(orbit_of_point(s3, 0), (std::vector<Point>{0, 1, 2}));

  auto trivial = PermGroup::trivial(3);
  auto sets = orbit(trivial, {1, 2}, ActionKind::sets);
  ASSERT_EQ(sets.size(), 1U);
  EXPECT_EQ(sets[0], (std::vector<Point>{1, 2}));

  auto c3 = cyclic(3);
  auto tuples = orbit(c3, {0, 1}, ActionKind::tuples);
  EXPECT_EQ(tuples, (std::vector<std::vector<Point>>{{0, 1}, {1, 2}, {2, 0}}));

  EXPECT_THROW(orbit(s3, {5}, ActionKind::points), InputError);
}

TEST(Orbit, SizesDivideOrderAndPartitionPoints) {
  auto q = q_group();
  std::size_t total = 0;
  for (const auto& o : point_orbits(q)) {
    EXPECT_EQ(q.order() % o.size(), 0U);
    total += o.size();
  }
  EXPECT_EQ(total, q.degree());
  auto triples = orbit(q, {0, 14, 17}, ActionKind::sets);
  EXPECT_EQ(q.order() % triples.size(), 0U);
}

TEST(CosetSpace, Examples) {
  auto s3 = symmetric(3);
  PermGroup h(3, {Permutation::from_cycles(3, {{0, 1}})});
  CosetSpace cs(s3, h);
  EXPECT_EQ(cs.size(), 3U);
  EXPECT_TRUE(cs.representatives()[0].is_identity());
  EXPECT_EQ(CosetSpace(s3, s3).size(), 1U);

  PermGroup outside(3, {Permutation::from_cycles(3, {{0, 1, 2}})});
  PermGroup c2(3, {Permutation::from_cycles(3, {{0, 1}})});
  EXPECT_THROW(CosetSpace(c2, outside), InputError);
}

TEST(CosetSpace, QModV1Has252TransitiveCosets) {
  auto q = q_group();
  auto v1 = q_subgroup_39(1, 0);
  ASSERT_EQ(v1.order(), 39U);
  CosetSpace cs(q, v1);
  EXPECT_EQ(cs.size(), 252U);
  EXPECT_EQ(cs.size() * v1.order(), q.order());
  EXPECT_TRUE(cs.representatives()[0].is_identity());
  EXPECT_EQ(point_orbits(cs.action_group()).size(), 1U);
  // representatives are the least members of their cosets
  for (std::size_t c = 0; c < cs.size(); ++c) {
    for (const auto& h : v1.elements()) EXPECT_LE(cs.representatives()[c], h * cs.representatives()[c]);
  }
}

TEST(Core, Examples) {
  auto s3 = symmetric(3);
  PermGroup c2(3, {Permutation::from_cycles(3, {{0, 1}})});
  EXPECT_EQ(core(s3, c2).order(), 1U);
  EXPECT_EQ(core(s3, s3).order(), 6U);
}

TEST(Core, QCoreOfV1IsTrivialByBruteForce) {
  auto q = q_group();
  auto v1 = q_subgroup_39(1, 0);
  EXPECT_EQ(core(q, v1).order(), 1U);

  // Kernel of the coset action from explicit element sets.
  auto v1_elems = closure(20, v1.generators());
  CosetSpace cs(q, v1);
  std::size_t kernel_size = 0;
  for (const auto& g : closure(20, q.generators())) {
    bool fixes = true;
    for (const auto& r : cs.representatives()) {
      if (!v1_elems.contains(r * g * r.inverse())) {
        fixes = false;
        break;
      }
    }
    kernel_size += fixes ? 1 : 0;
  }
  EXPECT_EQ(kernel_size, 1U);
}

TEST(Core, KernelOfCosetActionEqualsCore) {
  auto g = symmetric(4);
  PermGroup h(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}), Permutation::from_cycles(4, {{0, 2}, {1, 3}}),
                  Permutation::from_cycles(4, {{0, 1}})});
  auto k = core(g, h);
  EXPECT_EQ(k.order(), 4U);  // the Klein four-group
  EXPECT_TRUE(is_normal(g, k));
  EXPECT_TRUE(k.is_subgroup_of(h));
  CosetSpace cs(g, h);
  for (const auto& x : g.elements()) {
    EXPECT_EQ(cs.action_permutation(x).is_identity(), k.contains(x));
  }
}

TEST(NormalClosure, Examples) {
  auto s3 = symmetric(3);
  PermGroup c2(3, {Permutation::from_cycles(3, {{0, 1}})});
  EXPECT_EQ(normal_closure(s3, c2).order(), 6U);
  EXPECT_EQ(normal_closure(s3, PermGroup::trivial(3)).order(), 1U);
}

TEST(NormalClosure, QClosureOfV1BySaturation) {
  auto q = q_group();
  auto v1 = q_subgroup_39(1, 0);
  auto n = normal_closure(q, v1);
  // projection of V1 to C3 x C3 is the order-3 subgroup generated by (1, 0)
  EXPECT_EQ(n.order(), 1092U * 3U);
  EXPECT_TRUE(is_normal(q, n));
  EXPECT_TRUE(v1.is_subgroup_of(n));

  // oracle: close the identity under all G-conjugates of V1's generators
  std::vector<Permutation> conjugates;
  tdlc::testing::ElementSet seen;
  for (const auto& s : v1.generators()) {
    std::vector<Permutation> frontier{s};
    seen.insert(s);
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const auto& x : frontier) {
        for (const auto& g : q.generators()) {
          Permutation c = g.inverse() * x * g;
          if (seen.insert(c).second) next.push_back(c);
        }
      }
      frontier = std::move(next);
    }
  }
  conjugates.assign(seen.begin(), seen.end());
  EXPECT_EQ(closure(20, conjugates).size(), n.order());
}

TEST(FindSubgroups, Examples) {
  auto s3 = symmetric(3);
  auto a3 = find_subgroups(s3, 3);
  ASSERT_EQ(a3.size(), 1U);
  EXPECT_EQ(a3[0].order(), 3U);

  auto aff = affine(13, 3);
  auto whole = find_subgroups(aff, 39, nonabelian);
  ASSERT_EQ(whole.size(), 1U);
  EXPECT_EQ(whole[0].order(), 39U);

  EXPECT_THROW(find_subgroups(s3, 4), InputError);
}

TEST(FindSubgroups, QHasNineClassesOfNonabelian39) {
  auto q = q_group();
  auto classes = find_subgroups(q, 39, nonabelian);
  // Hom(C3, C3 x C3) has 9 elements and PSL(2,13) has one class of C13 ⋊ C3
  EXPECT_EQ(classes.size(), 9U);
  std::size_t total = 0;
  for (const auto& h : classes) {
    EXPECT_EQ(h.order(), 39U);
    EXPECT_FALSE(h.is_abelian());
    EXPECT_TRUE(h.is_subgroup_of(q));
    total += conjugacy_class(q, h).size();
  }
  EXPECT_EQ(total, 126U);
}

// f evaluated along a breadth-first spanning tree of the Cayley graph.
std::unordered_map<Permutation, Permutation, PermutationHash> extend_by_words(const PermGroup& g,
                                                                               const std::vector<Permutation>& images) {
  std::unordered_map<Permutation, Permutation, PermutationHash> f;
  f.emplace(Permutation::identity(g.degree()), Permutation::identity(images.front().degree()));
  std::vector<Permutation> frontier{Permutation::identity(g.degree())};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier) {
      for (std::size_t i = 0; i < images.size(); ++i) {
        Permutation y = x * g.generators()[i];
        if (f.emplace(y, f.at(x) * images[i]).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return f;
}

TEST(GroupHomomorphism, SignOfSym4MatchesWordOracle) {
  auto s4 = symmetric(4);
  std::vector<Permutation> images;
  for (const auto& g : s4.generators()) {
    std::size_t swaps = 0;
    std::vector<bool> seen(4, false);
    for (Point i = 0; i < 4; ++i) {
      for (Point j = i; !seen[j]; j = g(j)) {
        seen[j] = true;
        if (g(j) != i) ++swaps;
      }
    }
    const bool odd = swaps % 2 == 1;
    images.push_back(odd ? Permutation(std::vector<Point>{1, 0}) : Permutation::identity(2));
  }
  GroupHomomorphism f(s4, images);
  auto oracle = extend_by_words(s4, images);
  ASSERT_EQ(oracle.size(), 24U);
  for (const auto& [x, fx] : oracle) EXPECT_EQ(f(x), fx);
  EXPECT_EQ(f.image().order(), 2U);
  EXPECT_FALSE(f.is_automorphism());
}

TEST(GroupHomomorphism, RejectsInconsistentImages) {
  // (0 1) has order 2, so it cannot go to a 3-cycle
  PermGroup s3(3, {Permutation(std::vector<Point>{1, 0, 2}), Permutation(std::vector<Point>{0, 2, 1})});
  EXPECT_THROW(GroupHomomorphism(s3, {Permutation(std::vector<Point>{1, 2, 0}), Permutation(std::vector<Point>{0, 2, 1})}),
               InputError);
  EXPECT_THROW(GroupHomomorphism(s3, {Permutation::identity(3)}), InputError);
}

TEST(PslProduct, AutomorphismCounts) {
  PslProduct q(13, 3, 2);
  EXPECT_EQ(q.pgl().size(), 2184U);
  EXPECT_EQ(q.general_linear().size(), 48U);
  EXPECT_EQ(q.group().order(), 9828U);
}

TEST(PslProduct, SampledAutomorphismsAreAutomorphisms) {
  PslProduct q(13, 3, 2);
  const auto pgl = q.pgl();
  const auto gl = q.general_linear();
  auto group = q.group();
  const auto& elements = group.elements();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    PslProduct::Automorphism a{pgl[rng() % pgl.size()], gl[rng() % gl.size()]};
    auto f = q.as_homomorphism(a);
    EXPECT_TRUE(f.is_automorphism());
    for (int s = 0; s < 50; ++s) {
      const auto& x = elements[rng() % elements.size()];
      const auto& y = elements[rng() % elements.size()];
      EXPECT_EQ(q.apply(a, x * y), q.apply(a, x) * q.apply(a, y));
      EXPECT_EQ(f(x), q.apply(a, x));
    }
  }
}

}  // namespace
