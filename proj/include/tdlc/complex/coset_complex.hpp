#pragma once

#include <unordered_set>
#include <vector>

#include "tdlc/complex/complex2d.hpp"
#include "tdlc/errors.hpp"
#include "tdlc/parallel.hpp"
#include "tdlc/perm/coset_space.hpp"

namespace tdlc::complex {

/// The coset complex of G with respect to subgroups H_1, ..., H_k together
/// with the coset spaces that label its vertices.
struct CosetComplex {
  Complex2D complex;
  std::vector<perm::CosetSpace> parts;
  /// First vertex of each part; part i occupies [offsets[i], offsets[i+1]).
  std::vector<std::size_t> offsets;

  Vertex vertex(std::size_t part, std::size_t coset) const { return static_cast<Vertex>(offsets[part] + coset); }
};

/// Vertices are the right cosets H_i x (part-major, each part ordered by
/// least coset representative). H_i x and H_j y (i != j) are adjacent iff
/// the cosets intersect, tested as: some h in H_j has h y x^-1 in H_i.
/// Triangles are all 3-cliques; G acts by right multiplication.
inline CosetComplex build_coset_complex(const perm::PermGroup& group, const std::vector<perm::PermGroup>& subgroups) {
  if (subgroups.size() < 2) throw InputError("a coset complex needs at least two subgroups");
  CosetComplex out;
  for (const auto& h : subgroups) out.parts.emplace_back(group, h);  // throws if h is not a subgroup
  out.offsets.assign(1, 0);
  for (const auto& p : out.parts) out.offsets.push_back(out.offsets.back() + p.size());
  const std::size_t n = out.offsets.back();

  std::vector<std::unordered_set<perm::Permutation, perm::PermutationHash>> members;
  for (const auto& h : subgroups) {
    const auto& e = h.elements();
    members.emplace_back(e.begin(), e.end());
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    for (std::size_t j = i + 1; j < subgroups.size(); ++j) {
      const auto& cosets_i = out.parts[i];
      const auto& cosets_j = out.parts[j];
      const auto& hj = subgroups[j].elements();
      std::vector<std::vector<Vertex>> found(cosets_i.size());
      parallel_for(cosets_i.size(), [&](std::size_t x) {
        const perm::Permutation x_inv = cosets_i.representatives()[x].inverse();
        for (std::size_t y = 0; y < cosets_j.size(); ++y) {
          const perm::Permutation yx = cosets_j.representatives()[y] * x_inv;
          for (const auto& h : hj) {
            if (members[i].contains(h * yx)) {
              found[x].push_back(out.vertex(j, y));
              break;
            }
          }
        }
      });
      for (std::size_t x = 0; x < found.size(); ++x) {
        for (Vertex w : found[x]) edges.emplace_back(out.vertex(i, x), w);
      }
    }
  }

  std::vector<std::uint32_t> colouring(n);
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    for (std::size_t v = out.offsets[i]; v < out.offsets[i + 1]; ++v) colouring[v] = static_cast<std::uint32_t>(i);
  }

  std::vector<perm::Permutation> action_gens;
  for (const auto& g : group.generators()) {
    std::vector<perm::Point> images(n);
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
      for (std::size_t c = 0; c < out.parts[i].size(); ++c) images[out.vertex(i, c)] = out.vertex(i, out.parts[i].act(c, g));
    }
    action_gens.emplace_back(std::move(images));
  }

  Complex2D bare = clique_complex(Graph(n, std::move(edges)), std::move(colouring));
  out.complex = bare.with_action(perm::PermGroup(n, std::move(action_gens)));
  return out;
}

}  // namespace tdlc::complex
