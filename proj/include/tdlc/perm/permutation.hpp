#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "tdlc/errors.hpp"

namespace tdlc::perm {

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1} stored as its image table.
///
/// Products follow the right-action convention: `(a * b)(x) = b(a(x))`,
/// i.e. `a` is applied first. This matches cycle notation read left to right.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  /// Throws InputError unless `images` is a bijection of {0, ..., n-1}.
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) {
        throw InputError("image table is not a bijection");
      }
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Builds from disjoint or overlapping cycles (0-based), composed left to right.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
    Permutation result(degree);
    for (const auto& cycle : cycles) {
      Permutation c(degree);
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (cycle[i] >= degree) throw InputError("cycle point out of range");
        c.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
      }
      // validates the cycle has no repeated point
      c = Permutation(std::move(c.images_));
      result = result * c;
    }
    return result;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  Point operator[](Point x) const { return images_[x]; }
  const std::vector<Point>& images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    Permutation inv;
    inv.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv.images_[images_[i]] = static_cast<Point>(i);
    return inv;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw InputError("degree mismatch in product");
    Permutation r;
    r.images_.resize(a.images_.size());
    for (std::size_t i = 0; i < a.images_.size(); ++i) r.images_[i] = b.images_[a.images_[i]];
    return r;
  }

  Permutation pow(long long k) const {
    Permutation base = k < 0 ? inverse() : *this;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Permutation result(degree());
    while (e) {
      if (e & 1U) result = result * base;
      base = base * base;
      e >>= 1U;
    }
    return result;
  }

  /// Element order (lcm of cycle lengths).
  std::uint64_t order() const {
    std::uint64_t result = 1;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  /// Disjoint cycles with each cycle starting at its least point; fixed points omitted.
  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      std::vector<Point> cycle;
      for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
        seen[j] = true;
        cycle.push_back(j);
      }
      out.push_back(std::move(cycle));
    }
    return out;
  }

  /// Cycle notation with 1-based points, e.g. "(1 2)(3 4 5)"; identity prints as "()".
  std::string to_cycle_string() const {
    std::ostringstream os;
    auto cs = cycles();
    if (cs.empty()) return "()";
    for (const auto& c : cs) {
      os << '(';
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + 1;
      os << ')';
    }
    return os.str();
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  /// Lexicographic on image tables.
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace tdlc::perm
