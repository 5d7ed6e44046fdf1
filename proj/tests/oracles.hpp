#pragma once

// Brute-force reference computations used only by the tests. They deliberately
// avoid the library's algorithms (no closure, no solvers) so that agreement is
// meaningful.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<int>>;

inline int det_mod(const Mat& m, int p) {
  // Laplace expansion; only for tiny matrices.
  const std::size_t n = m.size();
  if (n == 1) return ((m[0][0] % p) + p) % p;
  int d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Mat minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<int> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    const int sign = (j % 2 == 0) ? 1 : -1;
    d += sign * m[0][j] * det_mod(minor, p);
  }
  return ((d % p) + p) % p;
}

/// All invertible n x n matrices over F_p.
inline std::vector<Mat> all_invertible(int n, int p) {
  std::vector<Mat> out;
  const int cells = n * n;
  int total = 1;
  for (int i = 0; i < cells; ++i) total *= p;
  for (int code = 0; code < total; ++code) {
    Mat m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    int c = code;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c % p;
        c /= p;
      }
    if (det_mod(m, p) != 0) out.push_back(m);
  }
  return out;
}

inline std::vector<int> apply(const Mat& m, const std::vector<int>& v, int p) {
  std::vector<int> r(v.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    int s = 0;
    for (std::size_t j = 0; j < v.size(); ++j) s += m[i][j] * v[j];
    r[i] = ((s % p) + p) % p;
  }
  return r;
}

/// Classical |O^+_{2n}(q)| = 2 q^{n(n-1)} (q^n - 1) prod_{i=1}^{n-1} (q^{2i} - 1).
inline std::int64_t orthogonal_plus_order(int n, std::int64_t q) {
  auto pw = [](std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  std::int64_t r = 2 * pw(q, n * (n - 1)) * (pw(q, n) - 1);
  for (int i = 1; i < n; ++i) r *= pw(q, 2 * i) - 1;
  return r;
}

/// |Sp_{2n}(q)| = q^{n^2} prod_{i=1}^n (q^{2i} - 1).
inline std::int64_t symplectic_order(int n, std::int64_t q) {
  std::int64_t r = 1;
  for (int i = 0; i < n * n; ++i) r *= q;
  for (int i = 1; i <= n; ++i) {
    std::int64_t t = 1;
    for (int j = 0; j < 2 * i; ++j) t *= q;
    r *= t - 1;
  }
  return r;
}

/// Multiplication table of a group given by an explicit list and product.
template <class T, class Mul>
std::vector<std::vector<int>> table_of(const std::vector<T>& elems, Mul mul) {
  std::map<T, int> idx;
  for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) t[i][j] = idx.at(mul(elems[i], elems[j]));
  return t;
}

/// Number of elements of each order in a group given by a table (identity must be found).
inline std::map<int, int> order_histogram(const std::vector<std::vector<int>>& t) {
  const std::size_t n = t.size();
  int e = -1;
  for (std::size_t i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j)
      if (t[i][j] != static_cast<int>(j)) ok = false;
    if (ok) e = static_cast<int>(i);
  }
  std::map<int, int> h;
  for (std::size_t i = 0; i < n; ++i) {
    int k = 1, c = static_cast<int>(i);
    while (c != e) {
      c = t[static_cast<std::size_t>(c)][i];
      ++k;
    }
    ++h[k];
  }
  return h;
}

}  // namespace oracle
