#pragma once

#include <array>
#include <bit>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tdlc/certify/certificate.hpp"
#include "tdlc/complex/coset_complex.hpp"
#include "tdlc/perm/automorphisms.hpp"
#include "tdlc/perm/subgroups.hpp"

namespace tdlc::certify {

using perm::Permutation;
using perm::PermGroup;
using perm::PslProduct;

/// Dense numbering 0..|G|-1 of PSL(2,p) x C_m^k with table-driven products.
/// A Möbius map is determined by the images of 0, 1 and ∞.
class ProductCoder {
public:
  explicit ProductCoder(const PslProduct& g) : g_(g) {
    const std::size_t line = g.p() + 1;
    psl_ = perm::psl2(g.p()).elements();
    key_.assign(line * line * line, -1);
    for (std::size_t i = 0; i < psl_.size(); ++i) key_[psl_key(psl_[i])] = static_cast<std::int32_t>(i);
    const std::size_t n = psl_.size();
    psl_mul_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) psl_mul_[i * n + j] = static_cast<std::uint16_t>(key_[psl_key(psl_[i] * psl_[j])]);
    }
    shifts_ = 1;
    for (std::size_t i = 0; i < g.k(); ++i) shifts_ *= static_cast<std::uint32_t>(g.m());
    shift_add_.resize(std::size_t{shifts_} * shifts_);
    for (std::uint32_t a = 0; a < shifts_; ++a) {
      for (std::uint32_t b = 0; b < shifts_; ++b) {
        std::uint32_t out = 0;
        std::uint32_t place = 1;
        for (std::uint32_t x = a, y = b, i = 0; i < g.k(); ++i, x /= g.m(), y /= g.m(), place *= g.m()) {
          out += place * static_cast<std::uint32_t>((x % g.m() + y % g.m()) % g.m());
        }
        shift_add_[a * shifts_ + b] = out;
      }
    }
    inverse_.resize(size());
    for (std::uint32_t x = 0; x < size(); ++x) {
      for (std::uint32_t y = 0; y < size(); y += shifts_) {
        if (psl_mul_[(x / shifts_) * psl_.size() + y / shifts_] != 0) continue;
        for (std::uint32_t s = 0; s < shifts_; ++s) {
          if (mul(x, y + s) == 0) inverse_[x] = y + s;
        }
      }
    }
  }

  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(psl_.size()) * shifts_; }

  std::uint32_t encode(const Permutation& x) const {
    const auto e = g_.split(x);
    const auto psl = key_.at(psl_key(e.psl));
    if (psl < 0) throw InputError("element is not in PSL(2,p)");
    std::uint32_t s = 0;
    for (std::size_t i = g_.k(); i-- > 0;) s = s * static_cast<std::uint32_t>(g_.m()) + e.shifts[i];
    return static_cast<std::uint32_t>(psl) * shifts_ + s;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t psl = psl_mul_[(a / shifts_) * psl_.size() + b / shifts_];
    return psl * shifts_ + shift_add_[(a % shifts_) * shifts_ + b % shifts_];
  }

  std::uint32_t inv(std::uint32_t a) const { return inverse_[a]; }

  const PslProduct& product() const noexcept { return g_; }
  const std::vector<Permutation>& psl_elements() const noexcept { return psl_; }
  std::uint32_t shift_count() const noexcept { return shifts_; }

  /// Index of the Möbius map sending 0, 1, ∞ to the given points.
  std::uint32_t psl_index(perm::Point at0, perm::Point at1, perm::Point at_inf) const {
    const std::size_t line = g_.p() + 1;
    const auto i = key_.at((at0 * line + at1) * line + at_inf);
    if (i < 0) throw InputError("element is not in PSL(2,p)");
    return static_cast<std::uint32_t>(i);
  }

private:
  std::size_t psl_key(const Permutation& x) const {
    const std::size_t line = g_.p() + 1;
    return (x(0) * line + x(1)) * line + x(static_cast<perm::Point>(g_.p()));
  }

  PslProduct g_;
  std::vector<Permutation> psl_;
  std::vector<std::int32_t> key_;
  std::vector<std::uint16_t> psl_mul_;
  std::uint32_t shifts_ = 1;
  std::vector<std::uint32_t> shift_add_;
  std::vector<std::uint32_t> inverse_;
};

/// A subgroup as element codes plus a membership bitset over the whole group.
struct CodedSubgroup {
  std::vector<std::uint32_t> elements;
  std::vector<std::uint64_t> bits;

  bool contains(std::uint32_t x) const { return (bits[x >> 6] >> (x & 63)) & 1U; }
};

inline CodedSubgroup code_subgroup(const ProductCoder& coder, const std::vector<Permutation>& elements) {
  CodedSubgroup out;
  out.bits.assign((coder.size() + 63) / 64, 0);
  for (const auto& x : elements) {
    const auto c = coder.encode(x);
    out.elements.push_back(c);
    out.bits[c >> 6] |= std::uint64_t{1} << (c & 63);
  }
  return out;
}

namespace detail {

// Classes of a in H_i under a ~ h a for h in H_i ∩ H_j, i.e. the neighbours H_j a of the vertex H_i.
inline std::vector<std::uint32_t> neighbour_classes(const ProductCoder& coder, const CodedSubgroup& hi,
                                                    const CodedSubgroup& hj, std::vector<std::uint32_t>& reps) {
  std::vector<std::uint32_t> meet;
  for (auto x : hi.elements) {
    if (hj.contains(x)) meet.push_back(x);
  }
  std::vector<std::uint32_t> least(hi.elements.size());
  for (std::size_t a = 0; a < hi.elements.size(); ++a) {
    std::uint32_t m = UINT32_MAX;
    for (auto h : meet) m = std::min(m, coder.mul(h, hi.elements[a]));
    least[a] = m;
  }
  reps.clear();
  std::vector<std::uint32_t> cls(hi.elements.size());
  for (std::size_t a = 0; a < least.size(); ++a) {
    const auto it = std::find(reps.begin(), reps.end(), least[a]);
    cls[a] = static_cast<std::uint32_t>(it - reps.begin());
    if (it == reps.end()) reps.push_back(least[a]);
  }
  return cls;
}

}  // namespace detail

/// Whether the link of the vertex H_i in the coset complex of (H_i, H_j, H_k)
/// has no cycle shorter than 6. The link is bipartite: H_j a and H_k b for
/// a, b in H_i, adjacent iff a b^-1 lies in H_j H_k. So the condition is the
/// absence of 4-cycles.
inline bool coset_link_girth_at_least_6(const ProductCoder& coder, const CodedSubgroup& hi, const CodedSubgroup& hj,
                                        const CodedSubgroup& hk, std::vector<std::uint64_t>& scratch) {
  std::vector<std::uint32_t> reps_j;
  std::vector<std::uint32_t> reps_k;
  detail::neighbour_classes(coder, hi, hj, reps_j);
  detail::neighbour_classes(coder, hi, hk, reps_k);
  if (reps_k.size() > 64) throw InputError("subgroup too large for the coset link filter");

  scratch.assign((coder.size() + 63) / 64, 0);
  for (auto x : hj.elements) {
    for (auto y : hk.elements) {
      const auto p = coder.mul(x, y);
      scratch[p >> 6] |= std::uint64_t{1} << (p & 63);
    }
  }
  std::vector<std::uint64_t> rows(reps_j.size(), 0);
  for (std::size_t a = 0; a < reps_j.size(); ++a) {
    for (std::size_t b = 0; b < reps_k.size(); ++b) {
      const auto p = coder.mul(reps_j[a], coder.inv(reps_k[b]));
      if ((scratch[p >> 6] >> (p & 63)) & 1U) rows[a] |= std::uint64_t{1} << b;
    }
  }
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      if (std::popcount(rows[a] & rows[b]) >= 2) return false;
    }
  }
  return true;
}

/// An automorphism of the ambient group carrying H_i onto H_{part_map[i]}.
struct TripleSymmetry {
  PslProduct::Automorphism automorphism;
  std::array<std::uint8_t, 3> part_map{};
};

/// Every automorphism (b, A) of PSL(2,p) x C_m^k, b in PGL(2,p) and A in
/// GL(k,m), tabulated on element codes.
class AutomorphismTable {
public:
  explicit AutomorphismTable(const ProductCoder& coder) : coder_(coder) {
    const auto& g = coder.product();
    pgl_ = g.pgl();
    gl_ = g.general_linear();
    const auto& psl = coder.psl_elements();
    const auto inf = static_cast<perm::Point>(g.p());
    conj_.resize(pgl_.size() * psl.size());
    for (std::size_t b = 0; b < pgl_.size(); ++b) {
      const Permutation& beta = pgl_[b];
      const Permutation beta_inv = beta.inverse();
      // b^-1 x b sends pt to beta(x(beta^-1(pt))); three points fix a Möbius map
      for (std::size_t x = 0; x < psl.size(); ++x) {
        auto image = [&](perm::Point pt) { return beta(psl[x](beta_inv(pt))); };
        conj_[b * psl.size() + x] = static_cast<std::uint16_t>(coder.psl_index(image(0), image(1), image(inf)));
      }
    }
    const std::uint32_t shifts = coder.shift_count();
    const auto m = static_cast<std::uint32_t>(g.m());
    const std::size_t k = g.k();
    linear_.resize(gl_.size() * shifts);
    for (std::size_t a = 0; a < gl_.size(); ++a) {
      for (std::uint32_t s = 0; s < shifts; ++s) {
        std::vector<std::uint32_t> digits(k);
        for (std::size_t i = 0, x = s; i < k; ++i, x /= m) digits[i] = static_cast<std::uint32_t>(x % m);
        std::uint32_t out = 0;
        for (std::size_t r = k; r-- > 0;) {
          std::uint32_t v = 0;
          for (std::size_t c = 0; c < k; ++c) v += gl_[a][r * k + c] * digits[c];
          out = out * m + v % m;
        }
        linear_[a * shifts + s] = out;
      }
    }
  }

  std::size_t conjugator_count() const noexcept { return pgl_.size(); }
  std::size_t matrix_count() const noexcept { return gl_.size(); }

  std::uint32_t apply(std::size_t b, std::size_t a, std::uint32_t code) const {
    const std::uint32_t shifts = coder_.shift_count();
    const std::uint32_t psl = conj_[b * coder_.psl_elements().size() + code / shifts];
    return psl * shifts + linear_[a * shifts + code % shifts];
  }

  PslProduct::Automorphism automorphism(std::size_t b, std::size_t a) const { return {pgl_[b], gl_[a]}; }

private:
  const ProductCoder& coder_;
  std::vector<Permutation> pgl_;
  std::vector<std::vector<std::uint32_t>> gl_;
  std::vector<std::uint16_t> conj_;
  std::vector<std::uint32_t> linear_;
};

/// One automorphism for each permutation of the three subgroups it realises,
/// the first found in the order PGL(2,p) x GL(k,m).
inline std::vector<TripleSymmetry> triple_symmetries(const ProductCoder& coder, const AutomorphismTable& table,
                                                     const std::vector<PermGroup>& subgroups) {
  if (subgroups.size() != 3) throw InputError("three subgroups required");
  std::vector<CodedSubgroup> coded;
  std::vector<std::vector<std::uint32_t>> gens(3);
  for (std::size_t i = 0; i < 3; ++i) {
    coded.push_back(code_subgroup(coder, subgroups[i].elements()));
    for (const auto& x : subgroups[i].generators()) gens[i].push_back(coder.encode(x));
  }
  std::vector<TripleSymmetry> out;
  std::vector<std::array<std::uint8_t, 3>> seen;
  for (std::size_t b = 0; b < table.conjugator_count(); ++b) {
    for (std::size_t a = 0; a < table.matrix_count(); ++a) {
      std::array<std::uint8_t, 3> pi{};
      bool ok = true;
      for (std::size_t i = 0; i < 3 && ok; ++i) {
        ok = false;
        for (std::uint8_t j = 0; j < 3 && !ok; ++j) {
          // an automorphism maps a subgroup into an equal-order one onto it
          ok = coded[j].elements.size() == coded[i].elements.size() &&
               std::all_of(gens[i].begin(), gens[i].end(), [&](std::uint32_t x) { return coded[j].contains(table.apply(b, a, x)); });
          if (ok) pi[i] = j;
        }
      }
      if (!ok || pi[0] == pi[1] || pi[0] == pi[2] || pi[1] == pi[2]) continue;
      if (std::find(seen.begin(), seen.end(), pi) != seen.end()) continue;
      seen.push_back(pi);
      out.push_back({table.automorphism(b, a), pi});
    }
  }
  return out;
}

/// Size of the group of part permutations generated by the symmetries.
inline std::size_t part_permutation_group_order(const std::vector<TripleSymmetry>& symmetries) {
  std::vector<std::array<std::uint8_t, 3>> group{{0, 1, 2}};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& s : symmetries) {
      std::array<std::uint8_t, 3> next{s.part_map[group[i][0]], s.part_map[group[i][1]], s.part_map[group[i][2]]};
      if (std::find(group.begin(), group.end(), next) == group.end()) group.push_back(next);
    }
  }
  return group.size();
}

/// The vertex permutation H_i x -> H_{pi(i)} alpha(x).
inline Permutation symmetry_on_vertices(const PslProduct& g, const complex::CosetComplex& cc, const TripleSymmetry& s) {
  std::vector<perm::Point> images(cc.offsets.back());
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& reps = cc.parts[i].representatives();
    const std::size_t j = s.part_map[i];
    for (std::size_t c = 0; c < reps.size(); ++c) {
      images[cc.vertex(i, c)] = cc.vertex(j, cc.parts[j].index_of(g.apply(s.automorphism, reps[c])));
    }
  }
  return Permutation(std::move(images));
}

/// Coset complex of PSL(2,p) x C_m^k with a certified triple of subgroups.
struct CertifiedTriple {
  std::vector<PermGroup> subgroups;
  std::vector<TripleSymmetry> symmetries;
  complex::CosetComplex coset;  // carries the right-multiplication action
  complex::Complex2D complex;   // carries the extended action
  Certificate certificate;
};

inline std::string describe(const PslProduct& g) {
  std::string s = "PSL(2," + std::to_string(g.p()) + ")";
  for (std::size_t i = 0; i < g.k(); ++i) s += " x C" + std::to_string(g.m());
  return s;
}

/// Builds the coset complex, extends the action by the automorphisms that
/// permute the subgroups, and certifies it.
inline CertifiedTriple certify_triple(const ProductCoder& coder, const AutomorphismTable& table,
                                      const std::vector<PermGroup>& subgroups) {
  const PslProduct& g = coder.product();
  const PermGroup group = g.group();
  CertifiedTriple out{subgroups, triple_symmetries(coder, table, subgroups), complex::build_coset_complex(group, subgroups), {}, {}};

  std::vector<Permutation> gens = out.coset.complex.action()->generators();
  for (const auto& s : out.symmetries) {
    if (s.part_map != std::array<std::uint8_t, 3>{0, 1, 2}) gens.push_back(symmetry_on_vertices(g, out.coset, s));
  }
  PermGroup extended(out.coset.complex.vertex_count(), std::move(gens));
  out.complex = out.coset.complex.without_action().with_action(extended);

  Environment env;
  env.group = describe(g);
  env.group_order = group.order();
  for (const auto& h : subgroups) {
    std::vector<std::string> words;
    for (const auto& x : h.generators()) words.push_back(x.to_cycle_string());
    env.subgroup_generators.push_back(std::move(words));
  }
  env.acting_group = env.group + " by right multiplication, extended by automorphisms of the group permuting the subgroups";
  env.acting_group_order = extended.order();
  env.conventions.push_back("an automorphism alpha carrying H_i onto H_j acts by H_i x -> H_j alpha(x)");
  const std::string base = env.group + " by right multiplication";
  out.certificate = certify(out.complex, std::move(env));
  out.certificate.subgroup_orbits =
      SubgroupOrbits{base, group.order(), complex::directed_edge_orbits(out.coset.complex),
                     complex::triangle_orbits(out.coset.complex).size()};
  return out;
}

struct TripleSearchOptions {
  /// Stop after this many full certifications; 0 for no limit.
  std::size_t max_certifications = 0;
  /// Progress messages; may be empty.
  std::function<void(const std::string&)> log;
};

struct TripleSearchStats {
  std::size_t classes = 0;
  std::size_t subgroups = 0;
  std::size_t triples = 0;
  std::size_t link_filter_passed = 0;
  std::size_t generating = 0;
  std::size_t symmetric = 0;
  std::size_t certified = 0;
};

struct TripleSearchResult {
  TripleSearchStats stats;
  /// Positions of the chosen subgroups in the candidate list.
  std::array<std::size_t, 3> indices{};
  std::optional<CertifiedTriple> triple;
};

/// Searches triples (H_1, H_2, H_3) of nonabelian subgroups of the given
/// order: H_1 runs over class representatives, H_2 and H_3 over all
/// subgroups. Cheap exact filters run first (vertex links free of 4-cycles,
/// the triple generating the group, automorphisms permuting the triple
/// transitively on ordered pairs). Survivors are certified in order until one
/// passes every premise.
inline TripleSearchResult search_certified_triple(const PslProduct& g, std::uint64_t order, const TripleSearchOptions& opt = {}) {
  auto say = [&](const std::string& s) {
    if (opt.log) opt.log(s);
  };
  TripleSearchResult result;
  const PermGroup group = g.group();
  const ProductCoder coder(g);
  const AutomorphismTable table(coder);
  const auto classes = perm::find_subgroups(group, order, perm::nonabelian);
  std::vector<PermGroup> all;
  std::vector<std::size_t> rep_index;
  for (const auto& h : classes) {
    for (const auto& key : perm::conjugacy_class(group, h)) {
      if (key == perm::subgroup_key(h)) rep_index.push_back(all.size());
      all.push_back(perm::subgroup_from_elements(group.degree(), key));
    }
  }
  std::vector<CodedSubgroup> coded;
  for (const auto& h : all) coded.push_back(code_subgroup(coder, h.elements()));
  result.stats.classes = classes.size();
  result.stats.subgroups = all.size();
  say(std::to_string(classes.size()) + " classes, " + std::to_string(all.size()) + " subgroups");

  std::vector<std::uint64_t> scratch;
  for (std::size_t i : rep_index) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      for (std::size_t k = 0; k < all.size(); ++k) {
        ++result.stats.triples;
        if (!coset_link_girth_at_least_6(coder, coded[i], coded[j], coded[k], scratch) ||
            !coset_link_girth_at_least_6(coder, coded[j], coded[i], coded[k], scratch) ||
            !coset_link_girth_at_least_6(coder, coded[k], coded[i], coded[j], scratch)) {
          continue;
        }
        ++result.stats.link_filter_passed;
        std::vector<Permutation> gens;
        for (std::size_t x : {i, j, k}) gens.insert(gens.end(), all[x].generators().begin(), all[x].generators().end());
        if (PermGroup(group.degree(), gens).order() != group.order()) continue;
        ++result.stats.generating;
        const std::vector<PermGroup> triple{all[i], all[j], all[k]};
        if (part_permutation_group_order(triple_symmetries(coder, table, triple)) != 6) continue;
        ++result.stats.symmetric;
        if (opt.max_certifications && result.stats.certified >= opt.max_certifications) return result;
        ++result.stats.certified;
        say("certifying triple (" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")");
        auto certified = certify_triple(coder, table, triple);
        if (certified.certificate.all_premises()) {
          result.indices = {i, j, k};
          result.triple = std::move(certified);
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace tdlc::certify
