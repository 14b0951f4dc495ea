#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "tdlc/homology/int_matrix.hpp"
#include "tdlc/perm/named_groups.hpp"

namespace tdlc::homology {

struct SnfResult {
  /// Nonzero diagonal entries d_1 | d_2 | ... | d_r, all positive.
  std::vector<Integer> factors;
  std::size_t rank = 0;
  /// When requested: unimodular U, V with U * A * V = diag(factors).
  std::optional<IntMatrix> u;
  std::optional<IntMatrix> v;

  std::vector<Integer> torsion() const {
    std::vector<Integer> out;
    for (const auto& d : factors) {
      if (d > 1) out.push_back(d);
    }
    return out;
  }
};

namespace detail {

class DenseSnf {
public:
  DenseSnf(IntMatrix a, bool transforms) : a_(std::move(a)), transforms_(transforms) {
    if (transforms_) {
      u_ = IntMatrix::identity(a_.rows());
      v_ = IntMatrix::identity(a_.cols());
    }
  }

  SnfResult run() {
    const std::size_t n = std::min(a_.rows(), a_.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
      auto pivot = smallest_entry(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      reduce_pivot(t);
      if (a_(t, t) < 0) negate_row(t);
    }
    SnfResult r;
    r.rank = t;
    for (std::size_t i = 0; i < t; ++i) r.factors.push_back(a_(i, i));
    if (transforms_) {
      r.u = std::move(u_);
      r.v = std::move(v_);
    }
    return r;
  }

private:
  std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < a_.rows(); ++i) {
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j) == 0) continue;
        Integer m = abs(a_(i, j));
        if (!best || m < best_abs) {
          best = {i, j};
          best_abs = m;
          if (best_abs == 1) return best;
        }
      }
    }
    return best;
  }

  void reduce_pivot(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) == 0) continue;
        Integer q = a_(i, t) / a_(t, t);
        if (q != 0) add_row(i, t, -q);
        if (a_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) == 0) continue;
        Integer q = a_(t, j) / a_(t, t);
        if (q != 0) add_col(j, t, -q);
        if (a_(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder is now smaller than the pivot; move the smallest in
        std::size_t bi = t;
        std::size_t bj = t;
        Integer best = abs(a_(t, t));
        for (std::size_t i = t + 1; i < a_.rows(); ++i) {
          if (a_(i, t) != 0 && abs(a_(i, t)) < best) {
            best = abs(a_(i, t));
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
          if (a_(t, j) != 0 && abs(a_(t, j)) < best) {
            best = abs(a_(t, j));
            bi = t;
            bj = j;
          }
        }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // enforce divisibility of the rest of the block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < a_.rows() && divides; ++i) {
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
          if (a_(i, j) != 0 && !mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) return;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    a_.swap_rows(a, b);
    if (transforms_) u_.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    a_.swap_cols(a, b);
    if (transforms_) v_.swap_cols(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    a_.add_row(dst, src, k);
    if (transforms_) u_.add_row(dst, src, k);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    a_.add_col(dst, src, k);
    if (transforms_) v_.add_col(dst, src, k);
  }
  void negate_row(std::size_t r) {
    a_.negate_row(r);
    if (transforms_) u_.negate_row(r);
  }

  IntMatrix a_;
  bool transforms_;
  IntMatrix u_;
  IntMatrix v_;
};

// Unit-pivot elimination on a sparse matrix. Each step picks a ±1 entry in a
// short column, clears its row by column operations and drops the pair.
// What remains when no unit pivot is left (or an entry would overflow) is
// handed to the dense elimination.
/// Indices of vectors forming a maximal independent set modulo a prime,
/// greedily in input order. Vectors independent modulo p are independent
/// over the rationals.
inline std::vector<std::size_t> independent_mod_p(const std::vector<std::vector<std::int64_t>>& vecs, std::size_t n) {
  constexpr std::uint64_t p = 2147483647ULL;
  auto mod = [](std::int64_t x) { return static_cast<std::uint64_t>((x % static_cast<std::int64_t>(p) + p) % p); };
  std::vector<std::vector<std::uint64_t>> basis(n);
  std::vector<std::size_t> chosen;
  for (std::size_t c = 0; c < vecs.size() && chosen.size() < n; ++c) {
    std::vector<std::uint64_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = mod(vecs[c][i]);
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      if (basis[i].empty()) {
        const std::uint64_t inv = perm::detail::pow_mod(v[i], p - 2, p);
        for (auto& x : v) x = x * inv % p;
        basis[i] = std::move(v);
        chosen.push_back(c);
        break;
      }
      const std::uint64_t f = v[i];
      for (std::size_t j = i; j < n; ++j) v[j] = (v[j] + (p - basis[i][j]) * f) % p;
    }
  }
  return chosen;
}

/// |det| of a square matrix by fraction-free (Bareiss) elimination.
inline Integer abs_determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    m.swap_rows(k, piv);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return n == 0 ? Integer(1) : Integer(abs(m(n - 1, n - 1)));
}

/// Echelon basis, one row per pivot position, of a full-rank lattice L in
/// Z^n given a modulus D with D Z^n contained in L. Starts from the rows
/// D e_i and absorbs generators one at a time, keeping entries reduced mod D.
class ModularLattice {
public:
  ModularLattice(std::size_t n, Integer modulus) : n_(n), modulus_(std::move(modulus)), rows_(n, std::vector<Integer>(n, Integer(0))) {
    for (std::size_t i = 0; i < n; ++i) rows_[i][i] = modulus_;
    pivot_product_ = n == 0 ? Integer(1) : modulus_;
  }

  /// The lattice is all of Z^n.
  bool unimodular() const { return modulus_ == 1; }

  void add(std::vector<Integer> v) {
    for (std::size_t p = 0; p < n_ && !unimodular(); ++p) {
      v[p] = reduce(v[p]);
      if (v[p] == 0) continue;
      auto& b = rows_[p];
      Integer g;
      Integer s;
      Integer t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[p].get_mpz_t(), v[p].get_mpz_t());
      const Integer bp = b[p] / g;
      const Integer vp = v[p] / g;
      b[p] = g;
      for (std::size_t j = p + 1; j < n_; ++j) {
        Integer nb = s * b[j] + t * v[j];
        Integer nv = bp * v[j] - vp * b[j];
        b[j] = reduce(nb);
        v[j] = std::move(nv);
      }
      // the echelon rows span a lattice of index prod(pivots), so that also kills Z^n / L
      pivot_product_ = 1;
      for (std::size_t i = 0; i < n_; ++i) pivot_product_ *= rows_[i][i];
      mpz_gcd(modulus_.get_mpz_t(), modulus_.get_mpz_t(), pivot_product_.get_mpz_t());
    }
  }

  /// Generators of L: the echelon rows and modulus * e_i.
  IntMatrix matrix() const {
    IntMatrix m(2 * n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = rows_[i][j];
      m(n_ + i, i) = modulus_;
    }
    return m;
  }

private:
  Integer reduce(const Integer& x) const {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
    return r;
  }

  std::size_t n_;
  Integer modulus_;
  std::vector<std::vector<Integer>> rows_;
  Integer pivot_product_;
};

class SparseEliminator {
public:
  explicit SparseEliminator(const SparseIntMatrix& m) : rows_(m.rows()), cols_(m.cols()), alive_(m.cols(), true) {
    row_cols_.resize(rows_);
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      cols_[j] = m.column(j);
      for (auto [i, v] : cols_[j]) row_cols_[i].push_back(static_cast<std::uint32_t>(j));
      heap_.push({cols_[j].size(), static_cast<std::uint32_t>(j)});
    }
  }

  SnfResult run() {
    bool overflowed = false;
    while (!heap_.empty() && !overflowed) {
      auto [len, c] = heap_.top();
      heap_.pop();
      if (!alive_[c] || cols_[c].size() != len) continue;
      if (len == 0) {
        alive_[c] = false;
        continue;
      }
      std::optional<std::uint32_t> row;
      std::size_t row_len = 0;
      for (auto [i, v] : cols_[c]) {
        if (v != 1 && v != -1) continue;
        if (!row || row_cols_[i].size() < row_len) {
          row = i;
          row_len = row_cols_[i].size();
        }
      }
      if (!row) continue;  // revisited if the column changes
      if (!eliminate(*row, c)) overflowed = true;
    }
    SnfResult dense = remainder_snf();
    SnfResult r;
    r.rank = pivots_ + dense.rank;
    r.factors.assign(pivots_, Integer(1));
    r.factors.insert(r.factors.end(), dense.factors.begin(), dense.factors.end());
    return r;
  }

private:
  using Entry = SparseIntMatrix::Entry;

  static std::optional<std::int64_t> find(const std::vector<Entry>& col, std::uint32_t row) {
    auto it = std::lower_bound(col.begin(), col.end(), Entry{row, INT64_MIN});
    if (it == col.end() || it->first != row) return std::nullopt;
    return it->second;
  }

  // col[dst] -= k * col[src]; false (and no change) on overflow
  bool axpy(std::uint32_t dst, std::uint32_t src, std::int64_t k) {
    const auto& a = cols_[dst];
    const auto& b = cols_[src];
    std::vector<Entry> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
        continue;
      }
      std::int64_t prod = 0;
      if (__builtin_mul_overflow(k, b[j].second, &prod)) return false;
      if (i == a.size() || b[j].first < a[i].first) {
        if (prod == INT64_MIN) return false;
        out.emplace_back(b[j].first, -prod);
        row_cols_[b[j].first].push_back(dst);
        ++j;
        continue;
      }
      std::int64_t v = 0;
      if (__builtin_sub_overflow(a[i].second, prod, &v)) return false;
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
    cols_[dst] = std::move(out);
    heap_.push({cols_[dst].size(), dst});
    return true;
  }

  bool eliminate(std::uint32_t row, std::uint32_t c) {
    const std::int64_t unit = *find(cols_[c], row);
    auto& users = row_cols_[row];
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    const std::vector<std::uint32_t> targets = users;
    for (std::uint32_t d : targets) {
      if (d == c || !alive_[d]) continue;
      auto a = find(cols_[d], row);
      if (!a) continue;
      if (*a == INT64_MIN) return false;
      if (!axpy(d, c, *a * unit)) return false;
    }
    alive_[c] = false;
    row_cols_[row].clear();
    ++pivots_;
    return true;
  }

  // Columns left after unit pivoting live in few rows. When they have full
  // row rank, n independent columns give a modulus D (their |det|) with
  // D Z^n inside the lattice, and a modular echelon form has the same
  // invariant factors. Otherwise the remainder goes to dense SNF.
  SnfResult remainder_snf() const {
    std::vector<std::int64_t> row_index(rows_, -1);
    std::size_t nrows = 0;
    std::vector<std::vector<std::int64_t>> live;
    for (std::uint32_t j = 0; j < cols_.size(); ++j) {
      if (!alive_[j] || cols_[j].empty()) continue;
      for (auto [i, v] : cols_[j]) {
        if (row_index[i] < 0) row_index[i] = static_cast<std::int64_t>(nrows++);
      }
    }
    for (std::uint32_t j = 0; j < cols_.size(); ++j) {
      if (!alive_[j] || cols_[j].empty()) continue;
      std::vector<std::int64_t> v(nrows, 0);
      for (auto [i, x] : cols_[j]) v[static_cast<std::size_t>(row_index[i])] = x;
      live.push_back(std::move(v));
    }
    auto to_integers = [](const std::vector<std::int64_t>& v) {
      std::vector<Integer> out;
      out.reserve(v.size());
      for (auto x : v) out.emplace_back(static_cast<long>(x));
      return out;
    };

    const auto chosen = independent_mod_p(live, nrows);
    if (chosen.size() < nrows) {
      IntMatrix m(nrows, live.size());
      for (std::size_t k = 0; k < live.size(); ++k) {
        for (std::size_t i = 0; i < nrows; ++i) m(i, k) = static_cast<long>(live[k][i]);
      }
      return DenseSnf(std::move(m), false).run();
    }
    IntMatrix square(nrows, nrows);
    for (std::size_t k = 0; k < nrows; ++k) {
      for (std::size_t i = 0; i < nrows; ++i) square(i, k) = static_cast<long>(live[chosen[k]][i]);
    }
    ModularLattice lattice(nrows, abs_determinant(std::move(square)));
    for (std::size_t k : chosen) lattice.add(to_integers(live[k]));
    for (std::size_t k = 0; k < live.size() && !lattice.unimodular(); ++k) lattice.add(to_integers(live[k]));
    if (lattice.unimodular()) {
      SnfResult r;
      r.rank = nrows;
      r.factors.assign(nrows, Integer(1));
      return r;
    }
    return DenseSnf(lattice.matrix(), false).run();
  }

  std::size_t rows_;
  std::vector<std::vector<Entry>> cols_;
  std::vector<std::vector<std::uint32_t>> row_cols_;  // may hold stale column ids
  std::vector<bool> alive_;
  std::priority_queue<std::pair<std::size_t, std::uint32_t>, std::vector<std::pair<std::size_t, std::uint32_t>>,
                      std::greater<>>
      heap_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

/// Smith normal form by elimination with smallest-magnitude pivots.
inline SnfResult smith_normal_form(const IntMatrix& a, bool with_transforms = false) {
  return detail::DenseSnf(a, with_transforms).run();
}

/// Invariant factors of a sparse matrix (no transforms).
inline SnfResult smith_normal_form(const SparseIntMatrix& a) { return detail::SparseEliminator(a).run(); }

}  // namespace tdlc::homology
