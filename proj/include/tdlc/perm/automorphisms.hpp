#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/perm/named_groups.hpp"
#include "tdlc/perm/perm_group.hpp"

namespace tdlc::perm {

/// Homomorphism from a permutation group given by the images of its
/// generators. Well-definedness is checked through the graph subgroup
/// {(g, f(g))} on the disjoint union of both point sets: f is a well-defined
/// map exactly when that subgroup has the order of the source.
class GroupHomomorphism {
public:
  /// `target_degree` is needed only when the source has no generators.
  GroupHomomorphism(PermGroup source, std::vector<Permutation> images, std::optional<std::size_t> target_degree = {})
      : source_(std::move(source)) {
    const auto& gens = source_.generators();
    if (images.size() != gens.size()) throw InputError("one image per generator required");
    const std::size_t n = source_.degree();
    target_degree_ = target_degree ? *target_degree : images.empty() ? 0 : images.front().degree();
    std::vector<Permutation> diag;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (images[i].degree() != target_degree_) throw InputError("image degree mismatch");
      diag.push_back(join(gens[i], images[i]));
    }
    std::vector<Point> prefix(n);
    std::iota(prefix.begin(), prefix.end(), Point{0});
    graph_ = StabChain::build(n + target_degree_, diag, prefix);
    if (graph_.order() != source_.order()) throw InputError("generator images do not define a homomorphism");
    image_ = PermGroup(target_degree_, std::move(images));
  }

  const PermGroup& source() const noexcept { return source_; }
  const PermGroup& image() const noexcept { return image_; }

  Permutation operator()(const Permutation& x) const {
    if (x.degree() != source_.degree()) throw InputError("element degree mismatch");
    // sifting (x, 1) leaves (1, f(x)^-1) once every source point is a base point
    auto [residue, level] = graph_.sift(join(x, Permutation::identity(target_degree_)));
    const std::size_t n = source_.degree();
    for (Point i = 0; i < n; ++i) {
      if (residue(i) != i) throw InputError("element is not in the source group");
    }
    std::vector<Point> second(target_degree_);
    for (std::size_t i = 0; i < target_degree_; ++i) second[i] = static_cast<Point>(residue(static_cast<Point>(n + i)) - n);
    return Permutation(std::move(second)).inverse();
  }

  /// Bijective onto the source group itself.
  bool is_automorphism() const {
    return target_degree_ == source_.degree() && image_.is_subgroup_of(source_) && image_.order() == source_.order();
  }

private:
  static Permutation join(const Permutation& a, const Permutation& b) {
    std::vector<Point> images(a.images());
    for (Point p : b.images()) images.push_back(static_cast<Point>(a.degree() + p));
    return Permutation(std::move(images));
  }

  PermGroup source_;
  std::size_t target_degree_ = 0;
  StabChain graph_;
  PermGroup image_;
};

/// The group PSL(2,p) x (C_m)^k laid out as direct_product(psl2(p), cyclic(m), ...)
/// with m prime. Its automorphisms are pairs (b, A): conjugation by b in
/// PGL(2,p) on the first factor and an invertible k x k matrix A over F_m on
/// the abelian factor (PSL(2,p) is perfect with trivial centre for p >= 5).
class PslProduct {
public:
  struct Element {
    Permutation psl;
    std::vector<std::uint32_t> shifts;
  };

  struct Automorphism {
    Permutation conjugator;               // element of PGL(2,p) on p+1 points
    std::vector<std::uint32_t> matrix;    // row-major k x k over F_m
  };

  PslProduct(std::uint64_t p, std::uint64_t m, std::size_t k) : p_(p), m_(m), k_(k) {
    if (p < 5 || !detail::is_prime(p)) throw InputError("PSL(2,p) factor needs a prime p >= 5");
    if (!detail::is_prime(m)) throw InputError("abelian factor needs a prime cyclic order");
  }

  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t m() const noexcept { return m_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t degree() const noexcept { return p_ + 1 + k_ * m_; }

  PermGroup group() const {
    std::vector<PermGroup> factors{psl2(p_)};
    for (std::size_t i = 0; i < k_; ++i) factors.push_back(cyclic(m_));
    return direct_product(factors);
  }

  Element split(const Permutation& x) const {
    Element e;
    e.psl = Permutation(std::vector<Point>(x.images().begin(), x.images().begin() + static_cast<std::ptrdiff_t>(p_ + 1)));
    for (std::size_t i = 0; i < k_; ++i) {
      const Point base = static_cast<Point>(p_ + 1 + i * m_);
      e.shifts.push_back(static_cast<std::uint32_t>(x(base) - base));
    }
    return e;
  }

  Permutation join(const Element& e) const {
    std::vector<Point> images(e.psl.images());
    for (std::size_t i = 0; i < k_; ++i) {
      const std::size_t base = p_ + 1 + i * m_;
      for (std::size_t j = 0; j < m_; ++j) images.push_back(static_cast<Point>(base + (j + e.shifts[i]) % m_));
    }
    return Permutation(std::move(images));
  }

  Permutation apply(const Automorphism& a, const Permutation& x) const {
    Element e = split(x);
    Element out;
    out.psl = a.conjugator.inverse() * e.psl * a.conjugator;
    out.shifts.assign(k_, 0);
    for (std::size_t r = 0; r < k_; ++r) {
      std::uint64_t s = 0;
      for (std::size_t c = 0; c < k_; ++c) s += static_cast<std::uint64_t>(a.matrix[r * k_ + c]) * e.shifts[c];
      out.shifts[r] = static_cast<std::uint32_t>(s % m_);
    }
    return join(out);
  }

  /// Every element of PGL(2,p) as a permutation of the projective line, sorted.
  std::vector<Permutation> pgl() const {
    std::vector<Permutation> out;
    for (std::uint64_t a = 0; a < p_; ++a) {
      for (std::uint64_t b = 0; b < p_; ++b) {
        for (std::uint64_t c = 0; c < p_; ++c) {
          for (std::uint64_t d = 0; d < p_; ++d) {
            if ((a * d + p_ * p_ - b * c % p_) % p_ != 0) out.push_back(mobius(p_, a, b, c, d));
          }
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Every invertible k x k matrix over F_m, in lexicographic order.
  std::vector<std::vector<std::uint32_t>> general_linear() const {
    std::vector<std::vector<std::uint32_t>> out;
    const std::size_t entries = k_ * k_;
    std::vector<std::uint32_t> mat(entries, 0);
    for (;;) {
      if (invertible(mat)) out.push_back(mat);
      std::size_t i = entries;
      while (i > 0 && mat[i - 1] == m_ - 1) mat[--i] = 0;
      if (i == 0) break;
      ++mat[i - 1];
    }
    return out;
  }

  /// The automorphism as a homomorphism by generator images, for independent checking.
  GroupHomomorphism as_homomorphism(const Automorphism& a) const {
    PermGroup g = group();
    std::vector<Permutation> images;
    for (const auto& x : g.generators()) images.push_back(apply(a, x));
    return GroupHomomorphism(std::move(g), std::move(images));
  }

private:
  bool invertible(std::vector<std::uint32_t> mat) const {
    // Gaussian elimination over F_m
    std::size_t rank = 0;
    for (std::size_t c = 0; c < k_ && rank < k_; ++c) {
      std::size_t piv = rank;
      while (piv < k_ && mat[piv * k_ + c] == 0) ++piv;
      if (piv == k_) return false;
      for (std::size_t j = 0; j < k_; ++j) std::swap(mat[piv * k_ + j], mat[rank * k_ + j]);
      const std::uint64_t inv = detail::pow_mod(mat[rank * k_ + c], m_ - 2, m_);
      for (std::size_t r = 0; r < k_; ++r) {
        if (r == rank || mat[r * k_ + c] == 0) continue;
        const std::uint64_t f = mat[r * k_ + c] * inv % m_;
        for (std::size_t j = 0; j < k_; ++j) {
          mat[r * k_ + j] = static_cast<std::uint32_t>((mat[r * k_ + j] + m_ * m_ - f * mat[rank * k_ + j] % m_) % m_);
        }
      }
      ++rank;
    }
    return rank == k_;
  }

  std::uint64_t p_;
  std::uint64_t m_;
  std::size_t k_;
};

}  // namespace tdlc::perm
