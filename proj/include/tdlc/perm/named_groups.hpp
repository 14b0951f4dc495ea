#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/perm/perm_group.hpp"

namespace tdlc::perm {

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1U) r = r * b % m;
    b = b * b % m;
    e >>= 1U;
  }
  return r;
}

inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p) {
  std::uint64_t k = 1;
  for (std::uint64_t x = a % p; x != 1; x = x * a % p) ++k;
  return k;
}

inline std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  for (std::uint64_t g = 2; g < p; ++g) {
    if (multiplicative_order(g, p) == p - 1) return g;
  }
  throw DomainError("no primitive root");
}

}  // namespace detail

/// Sym(n) on {0..n-1}, generated by (0 1) and (0 1 ... n-1).
inline PermGroup symmetric(std::size_t n) {
  if (n == 0) throw InputError("symmetric group needs n >= 1");
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
    std::vector<Point> cycle(n);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = static_cast<Point>(i);
    gens.push_back(Permutation::from_cycles(n, {cycle}));
  }
  return PermGroup(n, std::move(gens));
}

/// C_n acting regularly on {0..n-1}.
inline PermGroup cyclic(std::size_t n) {
  if (n == 0) throw InputError("cyclic group needs n >= 1");
  std::vector<Point> cycle(n);
  for (std::size_t i = 0; i < n; ++i) cycle[i] = static_cast<Point>(i);
  return PermGroup(n, {Permutation::from_cycles(n, {cycle})});
}

/// Möbius map x -> (a x + b)/(c x + d) on the projective line F_p ∪ {∞}; ∞ is point p.
inline Permutation mobius(std::uint64_t p, std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  const std::uint64_t inf = p;
  std::vector<Point> images(p + 1);
  auto inv = [p](std::uint64_t x) { return detail::pow_mod(x, p - 2, p); };
  for (std::uint64_t x = 0; x <= p; ++x) {
    std::uint64_t num = 0;
    std::uint64_t den = 0;
    if (x == inf) {
      num = a % p;
      den = c % p;
    } else {
      num = (a * x + b) % p;
      den = (c * x + d) % p;
    }
    if (den == 0) {
      images[x] = static_cast<Point>(inf);
    } else {
      images[x] = static_cast<Point>(num * inv(den) % p);
    }
  }
  return Permutation(std::move(images));
}

/// PSL(2,p) on the p+1 points of the projective line: 0..p-1 are field
/// elements and p is ∞. Generated by x+1, r^2 x and -1/x.
inline PermGroup psl2(std::uint64_t p) {
  if (!detail::is_prime(p)) throw InputError("psl2 needs a prime, got " + std::to_string(p));
  const std::uint64_t r = detail::primitive_root(p);
  std::vector<Permutation> gens{
      mobius(p, 1, 1, 0, 1),
      mobius(p, r * r % p, 0, 0, 1),
      mobius(p, 0, p - 1, 1, 0),
  };
  return PermGroup(p + 1, std::move(gens));
}

/// The affine group x -> a x + b on F_p with a ranging over the order-k
/// subgroup of F_p^*, i.e. C_p ⋊ C_k on p points.
inline PermGroup affine(std::uint64_t p, std::uint64_t k) {
  if (!detail::is_prime(p)) throw InputError("affine group needs a prime modulus");
  if (k == 0 || (p - 1) % k != 0) throw InputError("affine group: k must divide p-1");
  const std::uint64_t a = detail::pow_mod(detail::primitive_root(p), (p - 1) / k, p);
  std::vector<Point> shift(p);
  std::vector<Point> scale(p);
  for (std::uint64_t x = 0; x < p; ++x) {
    shift[x] = static_cast<Point>((x + 1) % p);
    scale[x] = static_cast<Point>(a * x % p);
  }
  return PermGroup(p, {Permutation(std::move(shift)), Permutation(std::move(scale))});
}

/// Signed permutations of n coordinates acting on the 2n points ±e_i
/// (point 2i is +e_i, 2i+1 is -e_i). Order 2^n n!.
inline PermGroup hyperoctahedral(std::size_t n) {
  if (n == 0) throw InputError("hyperoctahedral group needs n >= 1");
  const std::size_t deg = 2 * n;
  std::vector<Permutation> gens;
  gens.push_back(Permutation::from_cycles(deg, {{0, 1}}));
  if (n >= 2) {
    gens.push_back(Permutation::from_cycles(deg, {{0, 2}, {1, 3}}));
    std::vector<Point> plus;
    std::vector<Point> minus;
    for (std::size_t i = 0; i < n; ++i) {
      plus.push_back(static_cast<Point>(2 * i));
      minus.push_back(static_cast<Point>(2 * i + 1));
    }
    gens.push_back(Permutation::from_cycles(deg, {plus, minus}));
  }
  return PermGroup(deg, std::move(gens));
}

/// Shifts `g` onto points [offset, offset + g.degree()) of a degree-`degree` set.
inline Permutation embed(const Permutation& g, std::size_t offset, std::size_t degree) {
  Permutation e = Permutation::identity(degree);
  std::vector<Point> images = e.images();
  for (std::size_t i = 0; i < g.degree(); ++i) {
    images[offset + i] = static_cast<Point>(offset + g(static_cast<Point>(i)));
  }
  return Permutation(std::move(images));
}

/// Direct product acting on the disjoint union of the factors' point sets,
/// factors placed left to right.
inline PermGroup direct_product(const std::vector<PermGroup>& factors) {
  std::size_t degree = 0;
  for (const auto& f : factors) degree += f.degree();
  std::vector<Permutation> gens;
  std::size_t offset = 0;
  for (const auto& f : factors) {
    for (const auto& g : f.generators()) gens.push_back(embed(g, offset, degree));
    offset += f.degree();
  }
  return PermGroup(degree, std::move(gens));
}

}  // namespace tdlc::perm
