#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/perm/automorphisms.hpp"
#include "tdlc/perm/perm_group.hpp"

namespace tdlc::amalgam {

using perm::Permutation;
using perm::PermGroup;

enum class Side { A, B };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
inline const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }

/// One letter of a raw word: an element of A or of B.
struct Letter {
  Side side = Side::A;
  Permutation element;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Right transversal of C in a factor: coset representatives t with
/// factor = union of C t, identity first.
class Transversal {
public:
  Transversal() = default;

  /// Least element (by image table) of every right coset.
  static Transversal least(const PermGroup& factor, const std::vector<Permutation>& c_image) {
    return build(factor, c_image, [](const std::vector<Permutation>& coset) { return coset.front(); });
  }

  /// Identity for C itself, a uniformly random element for every other coset.
  static Transversal random(const PermGroup& factor, const std::vector<Permutation>& c_image, std::mt19937& rng) {
    return build(factor, c_image, [&](const std::vector<Permutation>& coset) {
      if (coset.front() == Permutation::identity(coset.front().degree())) return coset.front();
      return coset[rng() % coset.size()];
    });
  }

  const std::vector<Permutation>& representatives() const noexcept { return reps_; }

  /// x = c t with c in the image of C and t a representative.
  std::pair<Permutation, Permutation> factor(const Permutation& x) const {
    auto it = coset_of_.find(x);
    if (it == coset_of_.end()) throw InputError("element is not in the factor group");
    const Permutation& t = reps_[it->second];
    return {x * t.inverse(), t};
  }

private:
  template <class Pick>
  static Transversal build(const PermGroup& factor, const std::vector<Permutation>& c_image, Pick pick) {
    Transversal out;
    std::vector<Permutation> elements = factor.elements();
    std::sort(elements.begin(), elements.end());
    std::vector<std::vector<Permutation>> cosets;
    for (const auto& x : elements) {
      if (out.coset_of_.count(x)) continue;
      std::vector<Permutation> coset;
      for (const auto& c : c_image) {
        coset.push_back(c * x);
        out.coset_of_[coset.back()] = cosets.size();
      }
      std::sort(coset.begin(), coset.end());
      cosets.push_back(std::move(coset));
    }
    for (const auto& coset : cosets) out.reps_.push_back(pick(coset));
    return out;
  }

  std::vector<Permutation> reps_;
  std::map<Permutation, std::size_t> coset_of_;
};

/// A *_C B for finite permutation groups, with C embedded in both factors.
class AmalgamPresentation {
public:
  /// `into_a` and `into_b` give the images of C's non-identity generators.
  AmalgamPresentation(PermGroup a, PermGroup b, PermGroup c, std::vector<Permutation> into_a, std::vector<Permutation> into_b)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)),
        into_a_(c_, std::move(into_a), a_.degree()), into_b_(c_, std::move(into_b), b_.degree()) {
    for (Side s : {Side::A, Side::B}) {
      const auto& f = embedding(s);
      if (f.image().order() != c_.order()) throw InputError(std::string("embedding into ") + side_name(s) + " is not injective");
      if (!f.image().is_subgroup_of(group(s))) throw InputError(std::string("embedding image is not in ") + side_name(s));
    }
    for (const auto& x : c_.elements()) {
      image_a_.push_back(into_a_(x));
      image_b_.push_back(into_b_(x));
      from_a_.emplace(image_a_.back(), x);
      from_b_.emplace(image_b_.back(), x);
    }
    t_a_ = Transversal::least(a_, image_a_);
    t_b_ = Transversal::least(b_, image_b_);
  }

  const PermGroup& group(Side s) const { return s == Side::A ? a_ : b_; }
  const PermGroup& amalgamated() const noexcept { return c_; }
  const perm::GroupHomomorphism& embedding(Side s) const { return s == Side::A ? into_a_ : into_b_; }
  const Transversal& transversal(Side s) const { return s == Side::A ? t_a_ : t_b_; }
  const std::vector<Permutation>& c_image(Side s) const { return s == Side::A ? image_a_ : image_b_; }

  /// Same groups with other transversals of the same factors.
  AmalgamPresentation with_transversals(Transversal ta, Transversal tb) const {
    AmalgamPresentation out = *this;
    out.t_a_ = std::move(ta);
    out.t_b_ = std::move(tb);
    return out;
  }

  Permutation embed(Side s, const Permutation& c) const { return embedding(s)(c); }

  /// The C-element whose image in side s is x.
  Permutation pull_back(Side s, const Permutation& x) const {
    const auto& m = s == Side::A ? from_a_ : from_b_;
    auto it = m.find(x);
    if (it == m.end()) throw InputError("element is not in the amalgamated subgroup");
    return it->second;
  }

  bool in_c(Side s, const Permutation& x) const { return (s == Side::A ? from_a_ : from_b_).count(x) > 0; }

private:
  PermGroup a_;
  PermGroup b_;
  PermGroup c_;
  perm::GroupHomomorphism into_a_;
  perm::GroupHomomorphism into_b_;
  std::vector<Permutation> image_a_;
  std::vector<Permutation> image_b_;
  std::map<Permutation, Permutation> from_a_;
  std::map<Permutation, Permutation> from_b_;
  Transversal t_a_;
  Transversal t_b_;
};

/// c t_1 t_2 ... t_k with c in C and the t_i non-identity representatives
/// from alternating sides.
struct AmalgamWord {
  Permutation prefix;
  std::vector<Letter> syllables;

  friend bool operator==(const AmalgamWord&, const AmalgamWord&) = default;
};

inline std::size_t syllable_length(const AmalgamWord& w) { return w.syllables.size(); }

/// The normal form as a raw word: the prefix as an A-letter, then the syllables.
inline std::vector<Letter> to_letters(const AmalgamPresentation& p, const AmalgamWord& w) {
  std::vector<Letter> out{{Side::A, p.embed(Side::A, w.prefix)}};
  out.insert(out.end(), w.syllables.begin(), w.syllables.end());
  return out;
}

/// Appends letters one at a time. A letter on the side of the last syllable
/// merges into it; the C-part left over by refactoring is carried leftwards
/// through the earlier syllables into the prefix.
inline AmalgamWord normal_form(const AmalgamPresentation& p, const std::vector<Letter>& word) {
  AmalgamWord w{Permutation::identity(p.amalgamated().degree()), {}};
  // moves c (standing right of syllable i-1) to the front
  auto carry = [&](std::size_t i, Permutation c) {
    while (i-- > 0) {
      auto& syl = w.syllables[i];
      auto [ci, t] = p.transversal(syl.side).factor(syl.element * p.embed(syl.side, c));
      syl.element = std::move(t);
      c = p.pull_back(syl.side, ci);
    }
    w.prefix = w.prefix * c;
  };
  for (const auto& letter : word) {
    if (!p.group(letter.side).contains(letter.element)) {
      throw InputError(std::string("letter is not in group ") + side_name(letter.side));
    }
    Permutation x = letter.element;
    const bool merge = !w.syllables.empty() && w.syllables.back().side == letter.side;
    if (merge) {
      x = w.syllables.back().element * x;
      w.syllables.pop_back();
    }
    auto [c, t] = p.transversal(letter.side).factor(x);
    carry(w.syllables.size(), p.pull_back(letter.side, c));
    if (t != Permutation::identity(t.degree())) w.syllables.push_back({letter.side, std::move(t)});
  }
  return w;
}

/// Normal form of an element already in normal form with respect to other transversals.
inline AmalgamWord normal_form(const AmalgamPresentation& p, const AmalgamWord& w) { return normal_form(p, to_letters(p, w)); }

}  // namespace tdlc::amalgam
