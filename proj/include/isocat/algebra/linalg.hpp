#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "isocat/error.hpp"
#include "isocat/exact/cyclotomic.hpp"
#include "isocat/exact/rational.hpp"

namespace isocat {

/// Residues modulo the Mersenne prime 2^31 - 1. Used only as a certificate: an integer matrix of
/// full rank modulo p has full rank over Q.
struct Fp {
  static constexpr std::uint64_t p = 2147483647ULL;
  std::uint64_t v = 0;

  Fp() = default;
  explicit Fp(std::int64_t x) : v(static_cast<std::uint64_t>(((x % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p))) {}

  friend Fp operator+(Fp a, Fp b) { return raw((a.v + b.v) % p); }
  friend Fp operator-(Fp a, Fp b) { return raw((a.v + p - b.v) % p); }
  friend Fp operator*(Fp a, Fp b) { return raw((a.v * b.v) % p); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return raw((p - v) % p); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }

  Fp inverse() const {
    if (v == 0) throw MathError("division by zero modulo p");
    std::uint64_t r = 1, b = v, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return raw(r);
  }

 private:
  static Fp raw(std::uint64_t x) {
    Fp f;
    f.v = x;
    return f;
  }
};
inline bool is_zero(const Fp& x) { return x.v == 0; }

/// Rows in semi-echelon form: each stored row is zero at the pivots of earlier rows and has a
/// unit pivot. Rows can be added one at a time, so callers may stop as soon as a target rank is hit.
template <class T>
class Echelon {
 public:
  Echelon(std::size_t ncols, T zero, T one) : ncols_(ncols), zero_(std::move(zero)), one_(std::move(one)) {}

  std::size_t cols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<T>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduce `row` against the stored rows; keep it if independent.
  bool add(std::vector<T> row) {
    if (row.size() != ncols_) throw MathError("echelon: row has wrong length");
    reduce(row);
    std::size_t piv = ncols_;
    for (std::size_t c = 0; c < ncols_; ++c)
      if (!is_zero(row[c])) {
        piv = c;
        break;
      }
    if (piv == ncols_) return false;
    const T inv = one_ / row[piv];
    for (std::size_t c = piv; c < ncols_; ++c)
      if (!is_zero(row[c])) row[c] = row[c] * inv;
    rows_.push_back(std::move(row));
    pivots_.push_back(piv);
    return true;
  }

  bool contains(std::vector<T> row) const {
    reduce(row);
    for (const auto& x : row)
      if (!is_zero(x)) return false;
    return true;
  }

  /// A basis of {v : r . v = 0 for every stored row r}.
  std::vector<std::vector<T>> kernel() const {
    // Bring to reduced form: clear each pivot column in the other rows.
    auto rr = rows_;
    for (std::size_t i = rr.size(); i-- > 0;)
      for (std::size_t j = 0; j < rr.size(); ++j) {
        if (j == i) continue;
        const T f = rr[j][pivots_[i]];
        if (is_zero(f)) continue;
        for (std::size_t c = 0; c < ncols_; ++c)
          if (!is_zero(rr[i][c])) rr[j][c] = rr[j][c] - f * rr[i][c];
      }
    std::vector<bool> is_pivot(ncols_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<std::vector<T>> out;
    for (std::size_t f = 0; f < ncols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<T> v(ncols_, zero_);
      v[f] = one_;
      for (std::size_t i = 0; i < rr.size(); ++i)
        if (!is_zero(rr[i][f])) v[pivots_[i]] = zero_ - rr[i][f];
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  void reduce(std::vector<T>& row) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const T f = row[pivots_[i]];
      if (is_zero(f)) continue;
      const auto& r = rows_[i];
      for (std::size_t c = pivots_[i]; c < ncols_; ++c)
        if (!is_zero(r[c])) row[c] = row[c] - f * r[c];
    }
  }

  std::size_t ncols_;
  T zero_;
  T one_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

template <class T>
std::vector<std::vector<T>> nullspace(const std::vector<std::vector<T>>& rows, std::size_t ncols, const T& zero,
                                      const T& one) {
  Echelon<T> e(ncols, zero, one);
  for (const auto& r : rows) e.add(r);
  return e.kernel();
}

inline std::vector<std::vector<Rational>> rational_nullspace(const std::vector<std::vector<Rational>>& rows,
                                                             std::size_t ncols) {
  return nullspace(rows, ncols, Rational(0), Rational(1));
}

inline std::vector<std::vector<Cyclotomic>> cyclotomic_nullspace(const std::vector<std::vector<Cyclotomic>>& rows,
                                                                 std::size_t ncols, int m) {
  return nullspace(rows, ncols, Cyclotomic::zero(m), Cyclotomic::one(m));
}

/// Integer-matrix rank. The rank modulo p is a lower bound for the rank over Q, so once it reaches
/// `ceiling` (a known upper bound, default min(rows, cols)) the answer is exact; otherwise the
/// computation is redone over Q.
inline std::size_t integer_rank(const std::vector<std::vector<std::int64_t>>& rows, std::size_t ncols,
                                std::size_t ceiling = static_cast<std::size_t>(-1)) {
  ceiling = std::min({ceiling, rows.size(), ncols});
  Echelon<Fp> mp(ncols, Fp(0), Fp(1));
  for (const auto& r : rows) {
    std::vector<Fp> v(ncols);
    for (std::size_t c = 0; c < ncols; ++c) v[c] = Fp(r[c]);
    mp.add(std::move(v));
    if (mp.rank() >= ceiling) return mp.rank();
  }
  Echelon<Rational> q(ncols, Rational(0), Rational(1));
  for (const auto& r : rows) {
    std::vector<Rational> v(ncols);
    for (std::size_t c = 0; c < ncols; ++c) v[c] = Rational(static_cast<long>(r[c]));
    q.add(std::move(v));
  }
  return q.rank();
}

}  // namespace isocat
