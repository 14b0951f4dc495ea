#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/perm/permutation.hpp"

namespace tdlc::perm {

/// Base and strong generating set built by deterministic Schreier-Sims.
///
/// Level i stores the strong generators fixing base[0..i-1], the orbit of
/// base[i] under them, and explicit transversal elements with
/// `transversal[k](base) == orbit[k]`.
class StabChain {
public:
  struct Level {
    Point base = 0;
    std::vector<Permutation> generators;
    std::vector<Point> orbit;
    std::vector<std::int32_t> position;  // point -> index into orbit, -1 if absent
    std::vector<Permutation> transversal;

    bool in_orbit(Point p) const { return position[p] >= 0; }
    const Permutation& rep(Point p) const { return transversal[static_cast<std::size_t>(position[p])]; }
  };

  StabChain() = default;

  /// `base_prefix` forces the first base points (used for point stabilizers).
  static StabChain build(std::size_t degree, std::span<const Permutation> generators,
                         std::span<const Point> base_prefix = {}) {
    StabChain chain;
    chain.degree_ = degree;
    for (Point b : base_prefix) {
      if (b >= degree) throw InputError("base point out of range");
      chain.push_level(b);
    }
    for (const auto& g : generators) {
      if (g.degree() != degree) throw InputError("generator degree mismatch");
      if (!g.is_identity()) chain.add_strong_generator(g, 0);
    }
    for (std::size_t i = 0; i < chain.levels_.size(); ++i) chain.rebuild_orbit(i);
    chain.complete();
    return chain;
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  /// Group order; throws DomainError if it does not fit in 64 bits.
  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (const auto& l : levels_) {
      if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(l.orbit.size()), &n)) {
        throw DomainError("group order exceeds 64-bit range");
      }
    }
    return n;
  }

  /// Returns the residue of `g` and the level at which sifting stopped.
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const Level& l = levels_[i];
      Point image = g(l.base);
      if (!l.in_orbit(image)) return {std::move(g), i};
      g = g * l.rep(image).inverse();
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) return false;
    return sift(g).first.is_identity();
  }

  /// Every strong generator (deduplicated, first-level order).
  std::vector<Permutation> strong_generators() const {
    std::vector<Permutation> out;
    std::unordered_set<Permutation, PermutationHash> seen;
    for (const auto& l : levels_) {
      for (const auto& g : l.generators) {
        if (seen.insert(g).second) out.push_back(g);
      }
    }
    return out;
  }

private:
  void push_level(Point base) {
    Level l;
    l.base = base;
    l.position.assign(degree_, -1);
    levels_.push_back(std::move(l));
  }

  static Point first_moved_point(const Permutation& g) {
    for (Point i = 0; i < g.degree(); ++i) {
      if (g(i) != i) return i;
    }
    return 0;
  }

  // Adds g to S_from, S_from+1, ... up to and including the first level whose
  // base it moves, extending the base when g fixes every base point.
  // Returns the last level touched.
  std::size_t add_strong_generator(const Permutation& g, std::size_t from) {
    std::size_t i = from;
    for (;; ++i) {
      if (i == levels_.size()) push_level(first_moved_point(g));
      levels_[i].generators.push_back(g);
      if (g(levels_[i].base) != levels_[i].base) return i;
    }
  }

  void rebuild_orbit(std::size_t i) {
    Level& l = levels_[i];
    std::fill(l.position.begin(), l.position.end(), -1);
    l.orbit.assign(1, l.base);
    l.transversal.assign(1, Permutation::identity(degree_));
    l.position[l.base] = 0;
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      for (const auto& s : l.generators) {
        Point q = s(l.orbit[k]);
        if (l.position[q] < 0) {
          l.position[q] = static_cast<std::int32_t>(l.orbit.size());
          l.orbit.push_back(q);
          l.transversal.push_back(l.transversal[k] * s);
        }
      }
    }
  }

  void complete() {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool extended = false;
      const auto level = static_cast<std::size_t>(i);
      for (std::size_t k = 0; k < levels_[level].orbit.size() && !extended; ++k) {
        for (std::size_t s = 0; s < levels_[level].generators.size() && !extended; ++s) {
          const Level& l = levels_[level];
          const Permutation& gen = l.generators[s];
          Permutation schreier = l.transversal[k] * gen * l.rep(gen(l.orbit[k])).inverse();
          auto [residue, stop] = sift(std::move(schreier), level + 1);
          if (residue.is_identity()) continue;
          std::size_t last = add_strong_generator(residue, level + 1);
          for (std::size_t j = level + 1; j <= last; ++j) rebuild_orbit(j);
          i = static_cast<std::ptrdiff_t>(last);
          extended = true;
        }
      }
      if (!extended) --i;
    }
  }

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
};

/// A finitely generated permutation group with a lazily built stabilizer chain.
///
/// Values are immutable; copies share the write-once cache.
class PermGroup {
public:
  PermGroup() : PermGroup(0, {}) {}

  PermGroup(std::size_t degree, std::vector<Permutation> generators)
      : degree_(degree), cache_(std::make_shared<Cache>()) {
    for (const auto& g : generators) {
      if (g.degree() != degree) throw InputError("generator degree mismatch");
    }
    std::erase_if(generators, [](const Permutation& g) { return g.is_identity(); });
    generators_ = std::move(generators);
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  const StabChain& chain() const {
    std::call_once(cache_->chain_once, [this] { cache_->chain = StabChain::build(degree_, generators_); });
    return cache_->chain;
  }

  std::uint64_t order() const { return chain().order(); }
  bool contains(const Permutation& g) const { return chain().contains(g); }

  bool is_subgroup_of(const PermGroup& other) const {
    if (other.degree() != degree_) return false;
    for (const auto& g : generators_) {
      if (!other.contains(g)) return false;
    }
    return true;
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      for (std::size_t j = i + 1; j < generators_.size(); ++j) {
        if (generators_[i] * generators_[j] != generators_[j] * generators_[i]) return false;
      }
    }
    return true;
  }

  /// All elements in lexicographic order. Refuses groups above `limit`.
  const std::vector<Permutation>& elements(std::uint64_t limit = 2'000'000) const {
    if (order() > limit) throw DomainError("group too large to enumerate");
    std::call_once(cache_->elements_once, [this] {
      const auto& levels = chain().levels();
      std::vector<Permutation> elems{Permutation::identity(degree_)};
      // g = u_k * ... * u_0 ranges over G exactly once
      for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        const auto& level = *it;
        std::vector<Permutation> next;
        next.reserve(elems.size() * level.transversal.size());
        for (const auto& u : level.transversal) {
          for (const auto& e : elems) next.push_back(e * u);
        }
        elems = std::move(next);
      }
      std::sort(elems.begin(), elems.end());
      cache_->elements = std::move(elems);
    });
    return cache_->elements;
  }

  /// Stabilizer of `point`, generated by the level-1 strong generators of a
  /// chain whose base starts at `point`.
  PermGroup stabilizer(Point point) const {
    if (point >= degree_) throw InputError("point out of range");
    const Point prefix[] = {point};
    StabChain c = StabChain::build(degree_, generators_, prefix);
    std::vector<Permutation> gens;
    if (c.levels().size() > 1) gens = c.levels()[1].generators;
    return PermGroup(degree_, std::move(gens));
  }

private:
  struct Cache {
    std::once_flag chain_once;
    StabChain chain;
    std::once_flag elements_once;
    std::vector<Permutation> elements;
  };

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace tdlc::perm
