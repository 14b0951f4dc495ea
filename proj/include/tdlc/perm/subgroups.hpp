#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/perm/coset_space.hpp"
#include "tdlc/perm/perm_group.hpp"

namespace tdlc::perm {

/// Sorted element list; identifies a subgroup independently of its generators.
using SubgroupKey = std::vector<Permutation>;

inline SubgroupKey subgroup_key(const PermGroup& h) { return h.elements(); }

/// Group generated by `elements`, keeping only generators that enlarge it.
inline PermGroup subgroup_from_elements(std::size_t degree, const std::vector<Permutation>& elements) {
  PermGroup current = PermGroup::trivial(degree);
  std::vector<Permutation> gens;
  for (const auto& e : elements) {
    if (current.contains(e)) continue;
    gens.push_back(e);
    current = PermGroup(degree, gens);
  }
  return current;
}

/// g^-1 H g.
inline PermGroup conjugate(const PermGroup& h, const Permutation& g) {
  const Permutation gi = g.inverse();
  std::vector<Permutation> gens;
  for (const auto& x : h.generators()) gens.push_back(gi * x * g);
  return PermGroup(h.degree(), std::move(gens));
}

inline bool is_normal(const PermGroup& g, const PermGroup& h) {
  for (const auto& x : g.generators()) {
    const Permutation xi = x.inverse();
    for (const auto& y : h.generators()) {
      if (!h.contains(xi * y * x)) return false;
    }
  }
  return true;
}

namespace detail {

inline void require_subgroup(const PermGroup& g, const PermGroup& h) {
  if (h.degree() != g.degree() || !h.is_subgroup_of(g)) throw InputError("subgroup is not contained in the group");
}

inline SubgroupKey conjugate_key(const SubgroupKey& key, const Permutation& g) {
  const Permutation gi = g.inverse();
  SubgroupKey out;
  out.reserve(key.size());
  for (const auto& x : key) out.push_back(gi * x * g);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t largest_prime_factor(std::uint64_t n) {
  std::uint64_t best = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      best = d;
      n /= d;
    }
  }
  return n > 1 ? n : best;
}

// Closure of a small generating set by breadth-first multiplication; stops
// early once more than `cap` elements are found.
inline SubgroupKey close_elements(std::size_t degree, const std::vector<Permutation>& gens, std::size_t cap) {
  std::unordered_set<Permutation, PermutationHash> seen{Permutation::identity(degree)};
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  while (!frontier.empty() && seen.size() <= cap) {
    std::vector<Permutation> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        Permutation y = x * g;
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  SubgroupKey out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// All G-conjugates of H as sorted element lists, in sorted order.
inline std::vector<SubgroupKey> conjugacy_class(const PermGroup& g, const PermGroup& h) {
  detail::require_subgroup(g, h);
  std::set<SubgroupKey> seen{subgroup_key(h)};
  std::vector<SubgroupKey> frontier{subgroup_key(h)};
  while (!frontier.empty()) {
    std::vector<SubgroupKey> next;
    for (const auto& k : frontier) {
      for (const auto& x : g.generators()) {
        auto c = detail::conjugate_key(k, x);
        if (seen.insert(c).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// Kernel of G acting on the right cosets of H: the largest normal subgroup of G inside H.
inline PermGroup core(const PermGroup& g, const PermGroup& h) {
  detail::require_subgroup(g, h);
  CosetSpace cosets(g, h);
  std::vector<Permutation> kernel;
  for (const auto& x : h.elements()) {
    bool fixes_all = true;
    for (std::size_t c = 0; c < cosets.size() && fixes_all; ++c) fixes_all = cosets.act(c, x) == c;
    if (fixes_all) kernel.push_back(x);
  }
  return subgroup_from_elements(g.degree(), kernel);
}

/// Smallest normal subgroup of G containing H.
inline PermGroup normal_closure(const PermGroup& g, const PermGroup& h) {
  detail::require_subgroup(g, h);
  std::vector<Permutation> gens = h.generators();
  PermGroup closure(g.degree(), gens);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& x : g.generators()) {
      Permutation c = x.inverse() * gens[i] * x;
      if (!closure.contains(c)) {
        gens.push_back(std::move(c));
        closure = PermGroup(g.degree(), gens);
      }
    }
  }
  return closure;
}

using SubgroupPredicate = std::function<bool(const PermGroup&)>;

inline bool nonabelian(const PermGroup& h) { return !h.is_abelian(); }

/// Representatives of the conjugacy classes of subgroups of the given order
/// that satisfy `predicate` and contain a normal subgroup of order p, where p
/// is the largest prime dividing `order`.
///
/// Cyclic subgroups P of order p are found from elements of order p; for one
/// P per conjugacy class every ⟨P, x⟩ with x in N_G(P) is tried. Classes are
/// returned ordered by the least element list among their members, each
/// represented by that least member.
inline std::vector<PermGroup> find_subgroups(const PermGroup& g, std::uint64_t order,
                                             const SubgroupPredicate& predicate = {}) {
  if (order == 0 || g.order() % order != 0) throw InputError("subgroup order must divide the group order");
  const std::size_t degree = g.degree();
  auto accept = [&](const PermGroup& h) { return !predicate || predicate(h); };
  if (order == 1) {
    PermGroup t = PermGroup::trivial(degree);
    return accept(t) ? std::vector<PermGroup>{t} : std::vector<PermGroup>{};
  }

  const std::uint64_t p = detail::largest_prime_factor(order);
  const auto& elems = g.elements();

  // One cyclic subgroup of order p per conjugacy class.
  std::set<SubgroupKey> cyclic_seen;
  std::vector<Permutation> class_generators;
  for (const auto& x : elems) {
    if (x.order() != p) continue;
    SubgroupKey k = detail::close_elements(degree, {x}, p);
    if (cyclic_seen.contains(k)) continue;
    for (auto& c : conjugacy_class(g, PermGroup(degree, {x}))) cyclic_seen.insert(std::move(c));
    class_generators.push_back(x);
  }

  std::map<SubgroupKey, PermGroup> classes;  // canonical key -> representative
  std::set<SubgroupKey> tried;
  for (const auto& gen : class_generators) {
    PermGroup cyclic_p(degree, {gen});
    for (const auto& x : elems) {
      // x normalizes <gen> iff x^-1 gen x is a power of gen
      if (!cyclic_p.contains(x.inverse() * gen * x)) continue;
      SubgroupKey k = detail::close_elements(degree, {gen, x}, order);
      if (k.size() != order || !tried.insert(k).second) continue;
      PermGroup h(degree, x == gen || cyclic_p.contains(x) ? std::vector<Permutation>{gen}
                                                            : std::vector<Permutation>{gen, x});
      if (!accept(h)) continue;
      auto members = conjugacy_class(g, h);
      for (const auto& m : members) tried.insert(m);
      const SubgroupKey& least = members.front();
      if (!classes.contains(least)) {
        // rebuild the representative from the least member's own elements
        classes.emplace(least, subgroup_from_elements(degree, least));
      }
    }
  }

  std::vector<PermGroup> out;
  for (auto& [key, rep] : classes) out.push_back(rep);
  return out;
}

}  // namespace tdlc::perm
