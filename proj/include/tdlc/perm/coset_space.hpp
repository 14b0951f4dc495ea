#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/perm/perm_group.hpp"

namespace tdlc::perm {

/// Right cosets Hg of H in G with G acting by right multiplication.
///
/// Coset representatives are the lexicographically least elements of their
/// cosets and cosets are numbered in order of their representatives, so
/// coset 0 is H itself.
class CosetSpace {
public:
  CosetSpace(PermGroup parent, PermGroup subgroup) : parent_(std::move(parent)), subgroup_(std::move(subgroup)) {
    if (subgroup_.degree() != parent_.degree() || !subgroup_.is_subgroup_of(parent_)) {
      throw InputError("coset space: subgroup is not contained in the parent group");
    }
    const auto& elems = parent_.elements();
    const auto& sub = subgroup_.elements();
    coset_of_.reserve(elems.size());
    for (const auto& g : elems) {
      if (coset_of_.contains(g)) continue;
      const auto index = static_cast<std::uint32_t>(representatives_.size());
      representatives_.push_back(g);
      for (const auto& h : sub) coset_of_.emplace(h * g, index);
    }
  }

  const PermGroup& parent() const noexcept { return parent_; }
  const PermGroup& subgroup() const noexcept { return subgroup_; }
  std::size_t size() const noexcept { return representatives_.size(); }
  const std::vector<Permutation>& representatives() const noexcept { return representatives_; }

  /// Index of the coset Hg.
  std::uint32_t index_of(const Permutation& g) const {
    auto it = coset_of_.find(g);
    if (it == coset_of_.end()) throw InputError("element is not in the parent group");
    return it->second;
  }

  /// Index of (H x_c) g.
  std::uint32_t act(std::size_t coset, const Permutation& g) const { return index_of(representatives_.at(coset) * g); }

  /// The permutation of coset indices induced by g.
  Permutation action_permutation(const Permutation& g) const {
    std::vector<Point> images(size());
    for (std::size_t c = 0; c < size(); ++c) images[c] = act(c, g);
    return Permutation(std::move(images));
  }

  /// Image of the parent's generators in Sym(cosets).
  PermGroup action_group() const {
    std::vector<Permutation> gens;
    for (const auto& g : parent_.generators()) gens.push_back(action_permutation(g));
    return PermGroup(size(), std::move(gens));
  }

private:
  PermGroup parent_;
  PermGroup subgroup_;
  std::vector<Permutation> representatives_;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> coset_of_;
};

inline CosetSpace coset_space(const PermGroup& g, const PermGroup& h) { return CosetSpace(g, h); }

}  // namespace tdlc::perm
