#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdlc/perm/permutation.hpp"
#include "tdlc/raag/word.hpp"

namespace tdlc::raag {

/// The generator x y^-1 of the Bestvina-Brady group for an edge {x, y}, raised to a power.
struct EdgePower {
  Vertex x = 0;
  Vertex y = 0;
  long exponent = 0;

  friend bool operator==(const EdgePower&, const EdgePower&) = default;
};

/// Shortest path from a to b, choosing the lexicographically least vertex
/// sequence among shortest ones.
inline std::vector<Vertex> least_shortest_path(const Graph& g, Vertex a, Vertex b) {
  // distances to b, then walk greedily from a through the least closer neighbour
  std::vector<long> dist(g.vertex_count(), -1);
  std::vector<Vertex> queue{b};
  dist[b] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Vertex w : g.neighbors(queue[i])) {
      if (dist[w] < 0) {
        dist[w] = dist[queue[i]] + 1;
        queue.push_back(w);
      }
    }
  }
  if (dist[a] < 0) throw InputError("defining graph is disconnected");
  std::vector<Vertex> path{a};
  while (path.back() != b) {
    for (Vertex w : g.neighbors(path.back())) {  // neighbours are sorted
      if (dist[w] == dist[path.back()] - 1) {
        path.push_back(w);
        break;
      }
    }
  }
  return path;
}

/// Writes h (with exponent sum 0) as a product of powers of edge generators
/// x y^-1. With h = x_1^{b_1} ... x_n^{b_n} and partial sums a_i,
///   h = prod_i x_i^{a_i} x_{i+1}^{-a_i},
/// and each factor telescopes along a path x_i = y_1, ..., y_k = x_{i+1} as
/// prod_j (y_j y_{j+1}^-1)^{a_i}, since consecutive path vertices commute.
inline std::vector<EdgePower> rewrite_in_edge_generators(const RaagWord& h) {
  if (exponent_sum(h) != 0) throw DomainError("word is not in the Bestvina-Brady subgroup (exponent sum is not 0)");
  const Graph& g = *h.graph();
  if (g.vertex_count() > 0 && connected_components(g) != 1) throw InputError("defining graph is disconnected");
  std::vector<EdgePower> out;
  long a = 0;
  const auto& letters = h.letters();
  for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
    a += letters[i].exponent;
    if (a == 0 || letters[i].vertex == letters[i + 1].vertex) continue;
    const auto path = least_shortest_path(g, letters[i].vertex, letters[i + 1].vertex);
    for (std::size_t j = 0; j + 1 < path.size(); ++j) out.push_back({path[j], path[j + 1], a});
  }
  return out;
}

/// The word prod (x y^-1)^e.
inline RaagWord expand(const std::shared_ptr<const Graph>& graph, const std::vector<EdgePower>& powers) {
  std::vector<Letter> letters;
  for (const auto& p : powers) {
    const bool positive = p.exponent > 0;
    const long n = positive ? p.exponent : -p.exponent;
    for (long k = 0; k < n; ++k) {
      if (positive) {
        letters.push_back({p.x, 1});
        letters.push_back({p.y, -1});
      } else {
        letters.push_back({p.y, 1});
        letters.push_back({p.x, -1});
      }
    }
  }
  return RaagWord(graph, std::move(letters));
}

/// Image of a word under a graph automorphism: each letter v becomes q(v).
inline RaagWord act(const perm::Permutation& q, const RaagWord& w) {
  std::vector<Letter> out;
  out.reserve(w.length());
  for (const auto& l : w.letters()) out.push_back({q(l.vertex), l.exponent});
  return RaagWord(w.graph(), std::move(out));
}

inline void require_automorphism(const Graph& g, const perm::Permutation& q) {
  if (q.degree() != g.vertex_count()) throw InputError("automorphism degree differs from the vertex count");
  for (auto [u, v] : g.edges()) {
    if (!g.has_edge(q(u), q(v))) throw InputError("permutation is not a graph automorphism");
  }
}

/// (h, q) in H ⋊ Q, with Q acting on words through the vertices.
struct SdElement {
  RaagWord h;
  perm::Permutation q;

  /// Checks that q is an automorphism of the defining graph.
  static SdElement make(RaagWord h, perm::Permutation q) {
    require_automorphism(*h.graph(), q);
    return {std::move(h), std::move(q)};
  }
  static SdElement identity(const std::shared_ptr<const Graph>& g) {
    return {RaagWord(g), perm::Permutation::identity(g->vertex_count())};
  }
};

/// (h, q)(h', q') = (h · q.h', qq'), where qq' applies q' first.
inline SdElement sd_multiply(const SdElement& a, const SdElement& b) {
  if (a.q.degree() != b.q.degree()) throw InputError("elements over different graphs");
  // operator* composes left to right, so b.q * a.q applies b.q first
  return {a.h * act(a.q, b.h), b.q * a.q};
}

inline SdElement sd_inverse(const SdElement& a) {
  const auto qi = a.q.inverse();
  return {act(qi, a.h.inverse()), qi};
}

inline bool sd_equal(const SdElement& a, const SdElement& b) { return a.q == b.q && equal_in_group(a.h, b.h); }

/// (h,1)(1,p)(h,1)^-1 = (h · p.h^-1, p) for every p, checked as normal-form equalities.
inline bool conjugation_formula_check(const RaagWord& h, const std::vector<perm::Permutation>& automorphisms) {
  const auto one = perm::Permutation::identity(h.graph()->vertex_count());
  const SdElement hh{h, one};
  for (const auto& p : automorphisms) {
    const SdElement lhs = sd_multiply(sd_multiply(hh, SdElement{RaagWord(h.graph()), p}), sd_inverse(hh));
    const SdElement rhs{h * act(p, h.inverse()), p};
    if (!sd_equal(lhs, rhs)) return false;
  }
  return true;
}

/// Two-step derivation of (x y^-1, 1) from a conjugate of Q.
struct EdgeGeneratorTrace {
  std::vector<std::string> steps;
  SdElement conjugate;  // (x z^-1, 1)(1, q)(x z^-1, 1)^-1
  SdElement result;     // conjugate · (1, q^-1)
};

/// Given a triangle {x, y, z} and q fixing z with q(x) = y, verifies
/// x z^-1 · q.(z x^-1) = x y^-1 and derives (x y^-1, 1) = (x z^-1,1)(1,q)(x z^-1,1)^-1 · (1,q^-1).
inline EdgeGeneratorTrace edge_generator_from_conjugates(const std::shared_ptr<const Graph>& graph, Vertex x, Vertex y,
                                                         Vertex z, const perm::Permutation& q) {
  const Graph& g = *graph;
  require_automorphism(g, q);
  if (q(z) != z) throw DomainError("witness does not fix z: q(z) = " + std::to_string(q(z) + 1));
  if (q(x) != y) throw DomainError("witness does not map x to y: q(x) = " + std::to_string(q(x) + 1));
  const RaagWord target(graph, x == y ? std::vector<Letter>{} : std::vector<Letter>{{x, 1}, {y, -1}});
  const auto one = perm::Permutation::identity(g.vertex_count());
  if (x == y) {
    return {{"x = y: x y^-1 = 1 and (1, 1) is trivial"}, SdElement{RaagWord(graph), one}, SdElement{RaagWord(graph), one}};
  }
  if (!g.has_edge(x, y) || !g.has_edge(x, z) || !g.has_edge(y, z)) throw DomainError("{x, y, z} is not a triangle");

  const RaagWord xz(graph, {{x, 1}, {z, -1}});
  const RaagWord lhs = xz * act(q, xz.inverse());
  if (!equal_in_group(lhs, target)) {
    throw DomainError("x z^-1 · q.(z x^-1) = " + normalize(lhs).to_string() + " differs from x y^-1 = " + target.to_string());
  }
  const SdElement c{xz, one};
  const SdElement conjugate = sd_multiply(sd_multiply(c, SdElement{RaagWord(graph), q}), sd_inverse(c));
  const SdElement result = sd_multiply(conjugate, SdElement{RaagWord(graph), q.inverse()});
  if (!sd_equal(conjugate, SdElement{target, q})) throw DomainError("conjugate of (1, q) is not (x y^-1, q)");
  if (!sd_equal(result, SdElement{target, one})) throw DomainError("(x y^-1, q)(1, q^-1) is not (x y^-1, 1)");
  return {{"(x z^-1, 1)(1, q)(x z^-1, 1)^-1 = (x z^-1 · q.(z x^-1), q) = (" + target.to_string() + ", q)",
           "(" + target.to_string() + ", q)(1, q^-1) = (" + target.to_string() + ", 1)"},
          conjugate,
          result};
}

}  // namespace tdlc::raag
