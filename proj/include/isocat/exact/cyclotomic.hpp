#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "isocat/error.hpp"
#include "isocat/exact/qz.hpp"
#include "isocat/exact/rational.hpp"

namespace isocat {

inline int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace detail {

using IntPoly = std::vector<std::int64_t>;  // low degree first

// Exact division by a monic integer polynomial.
inline IntPoly divide_monic(IntPoly num, const IntPoly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  IntPoly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const std::int64_t c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw MathError("cyclotomic division left a remainder");
  return q;
}

struct CyclotomicTables {
  int m = 1;
  int phi = 1;
  IntPoly poly;                    // Phi_m, degree phi
  std::vector<IntPoly> power;      // x^j mod Phi_m for 0 <= j < m, each of length phi
};

inline IntPoly compute_cyclotomic_poly(int m, std::map<int, IntPoly>& memo) {
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  IntPoly p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = divide_monic(p, compute_cyclotomic_poly(d, memo));
  memo[m] = p;
  return p;
}

inline std::shared_ptr<const CyclotomicTables> cyclotomic_tables(int m) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CyclotomicTables>> cache;
  static std::map<int, IntPoly> poly_memo;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  if (m < 1 || m > 5000) throw MathError("cyclotomic modulus out of range: " + std::to_string(m));
  auto t = std::make_shared<CyclotomicTables>();
  t->m = m;
  t->poly = compute_cyclotomic_poly(m, poly_memo);
  t->phi = static_cast<int>(t->poly.size()) - 1;
  const auto phi = static_cast<std::size_t>(t->phi);
  t->power.assign(static_cast<std::size_t>(m), IntPoly(phi, 0));
  IntPoly cur(phi + 1, 0);
  cur[0] = 1;
  for (int j = 0; j < m; ++j) {
    std::copy(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(phi), t->power[static_cast<std::size_t>(j)].begin());
    IntPoly next(phi + 1, 0);
    for (std::size_t i = 0; i < phi; ++i) next[i + 1] = cur[i];
    const std::int64_t lead = next[phi];
    if (lead != 0)
      for (std::size_t i = 0; i <= phi; ++i) next[i] -= lead * t->poly[i];
    cur = next;
  }
  cache[m] = t;
  return t;
}

}  // namespace detail

/// Coefficients of the m-th cyclotomic polynomial, low degree first.
inline std::vector<std::int64_t> cyclotomic_polynomial(int m) { return detail::cyclotomic_tables(m)->poly; }

/// Exact element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(int m) : tables_(detail::cyclotomic_tables(m)), c_(static_cast<std::size_t>(tables_->phi)) {}

  static Cyclotomic zero(int m) { return Cyclotomic(m); }
  static Cyclotomic one(int m) { return from_rational(m, Rational(1)); }
  static Cyclotomic from_rational(int m, const Rational& r) {
    Cyclotomic x(m);
    x.c_[0] = r;
    return x;
  }
  /// zeta_m^k
  static Cyclotomic zeta(int m, std::int64_t k) {
    Cyclotomic x(m);
    const auto& row = x.tables_->power[static_cast<std::size_t>(((k % m) + m) % m)];
    for (std::size_t i = 0; i < row.size(); ++i) x.c_[i] = Rational(static_cast<long>(row[i]));
    return x;
  }
  /// The root of unity a/b as a field element; requires b | m.
  static Cyclotomic embed(int m, QZ a) {
    if (m % a.den() != 0)
      throw MathError("root of unity " + a.str() + " does not lie in Q(zeta_" + std::to_string(m) + ")");
    return zeta(m, a.num() * (m / a.den()));
  }
  static Cyclotomic from_coeffs(int m, std::vector<Rational> coeffs) {
    Cyclotomic x(m);
    if (coeffs.size() != x.c_.size()) throw MathError("coefficient vector has wrong length for Q(zeta_m)");
    x.c_ = std::move(coeffs);
    return x;
  }

  int modulus() const { return tables_->m; }
  int degree() const { return tables_->phi; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return sgn(r) == 0; });
  }
  bool is_one() const { return *this == one(modulus()); }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    a.check_same(b);
    Cyclotomic r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    a.check_same(b);
    Cyclotomic r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.check_same(b);
    const int m = a.modulus();
    const std::size_t phi = a.c_.size();
    std::vector<Rational> acc(static_cast<std::size_t>(m));
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    for (std::size_t i = 0; i < phi; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < phi; ++j) {
        if (sgn(b.c_[j]) == 0) continue;
        const std::size_t k = (i + j) % static_cast<std::size_t>(m);
        acc[k] += a.c_[i] * b.c_[j];
        used[k] = true;
      }
    }
    return a.collect(acc, used);
  }
  Cyclotomic scaled(const Rational& r) const {
    Cyclotomic x = *this;
    for (auto& c : x.c_) c *= r;
    return x;
  }
  /// Multiply by zeta^{a}: cheap rotation-and-reduce.
  Cyclotomic times_root(QZ a) const { return *this * embed(modulus(), a); }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  /// Multiplicative inverse by solving the linear system of multiplication-by-x.
  Cyclotomic inverse() const;

  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  /// Field automorphism zeta -> zeta^t (t a unit mod m).
  Cyclotomic galois(std::int64_t t) const {
    const int m = modulus();
    if (std::gcd(((t % m) + m) % m, static_cast<std::int64_t>(m)) != 1 && m != 1)
      throw MathError("Galois exponent " + std::to_string(t) + " is not a unit mod " + std::to_string(m));
    std::vector<Rational> acc(static_cast<std::size_t>(m));
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      const auto k = static_cast<std::size_t>((((static_cast<std::int64_t>(i) * t) % m) + m) % m);
      acc[k] += c_[i];
      used[k] = true;
    }
    return collect(acc, used);
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.modulus() == b.modulus() && a.c_ == b.c_;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[i].get_str() + ")";
      if (i > 0) s += "*z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void check_same(const Cyclotomic& o) const {
    if (modulus() != o.modulus()) throw MathError("cyclotomic modulus mismatch");
  }
  // Sum acc[k] * zeta^k using the reduction table.
  Cyclotomic collect(const std::vector<Rational>& acc, const std::vector<bool>& used) const {
    Cyclotomic r(modulus());
    for (std::size_t k = 0; k < acc.size(); ++k) {
      if (!used[k] || sgn(acc[k]) == 0) continue;
      const auto& row = tables_->power[k];
      for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0) r.c_[i] += acc[k] * static_cast<long>(row[i]);
    }
    return r;
  }

  std::shared_ptr<const detail::CyclotomicTables> tables_;
  std::vector<Rational> c_;
};

inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }

namespace detail {

// Solve A y = b over Q for square invertible A (row-major), Gauss-Jordan.
inline std::vector<Rational> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) throw MathError("singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

}  // namespace detail

inline Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw MathError("division by zero in cyclotomic field");
  const int m = modulus();
  const std::size_t phi = c_.size();
  // Column j holds the coordinates of this * zeta^j.
  std::vector<std::vector<Rational>> a(phi, std::vector<Rational>(phi));
  for (std::size_t j = 0; j < phi; ++j) {
    const Cyclotomic col = *this * zeta(m, static_cast<std::int64_t>(j));
    for (std::size_t i = 0; i < phi; ++i) a[i][j] = col.c_[i];
  }
  std::vector<Rational> rhs(phi);
  rhs[0] = 1;
  return from_coeffs(m, detail::solve_square(std::move(a), std::move(rhs)));
}

}  // namespace isocat
