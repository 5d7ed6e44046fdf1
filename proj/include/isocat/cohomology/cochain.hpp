#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "isocat/error.hpp"
#include "isocat/exact/qz.hpp"
#include "isocat/group/abelian.hpp"

namespace isocat {

/// eta : N -> Q/Z with eta(0) = 0.
struct Cochain1 {
  FiniteAbelianGroup group;
  std::vector<QZ> values;

  Cochain1() = default;
  explicit Cochain1(FiniteAbelianGroup g) : group(std::move(g)), values(group.size()) {}
  Cochain1(FiniteAbelianGroup g, std::vector<QZ> v) : group(std::move(g)), values(std::move(v)) {
    if (values.size() != group.size()) throw MathError("1-cochain table has wrong size");
  }
  QZ operator()(std::size_t x) const { return values[x]; }
  friend bool operator==(const Cochain1&, const Cochain1&) = default;
};

/// sigma : N x N -> Q/Z, stored row-major; bicharacters and skew forms use the same type.
struct Cochain2 {
  FiniteAbelianGroup group;
  std::vector<QZ> values;

  Cochain2() = default;
  explicit Cochain2(FiniteAbelianGroup g) : group(std::move(g)), values(group.size() * group.size()) {}
  Cochain2(FiniteAbelianGroup g, std::vector<QZ> v) : group(std::move(g)), values(std::move(v)) {
    if (values.size() != group.size() * group.size()) throw MathError("2-cochain table has wrong size");
  }
  QZ operator()(std::size_t x, std::size_t y) const { return values[x * group.size() + y]; }
  QZ& at(std::size_t x, std::size_t y) { return values[x * group.size() + y]; }
  friend bool operator==(const Cochain2&, const Cochain2&) = default;
};
using Bicharacter = Cochain2;

inline Cochain1 operator+(const Cochain1& a, const Cochain1& b) {
  Cochain1 r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
  return r;
}
inline Cochain1 operator-(const Cochain1& a) {
  Cochain1 r = a;
  for (auto& v : r.values) v = -v;
  return r;
}
inline Cochain2 operator+(const Cochain2& a, const Cochain2& b) {
  Cochain2 r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
  return r;
}
inline Cochain2 operator-(const Cochain2& a, const Cochain2& b) {
  Cochain2 r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
  return r;
}

/// delta eta (x, y) = eta(x) + eta(y) - eta(x + y).
inline Cochain2 delta1(const Cochain1& eta) {
  const auto& n = eta.group;
  Cochain2 r(n);
  for (std::size_t x = 0; x < n.size(); ++x)
    for (std::size_t y = 0; y < n.size(); ++y) r.at(x, y) = eta(x) + eta(y) - eta(n.add(x, y));
  return r;
}

/// First triple where delta2 sigma is nonzero: sigma(y,z) - sigma(x+y,z) + sigma(x,y+z) - sigma(x,y).
inline std::optional<std::array<std::size_t, 3>> cocycle_violation(const Cochain2& s) {
  const auto& n = s.group;
  for (std::size_t x = 0; x < n.size(); ++x)
    for (std::size_t y = 0; y < n.size(); ++y) {
      const std::size_t xy = n.add(x, y);
      const QZ sxy = s(x, y);
      for (std::size_t z = 0; z < n.size(); ++z)
        if (sxy + s(xy, z) != s(y, z) + s(x, n.add(y, z))) return std::array<std::size_t, 3>{x, y, z};
    }
  return std::nullopt;
}
inline bool is_cocycle(const Cochain2& s) { return !cocycle_violation(s).has_value(); }

inline bool is_normalized(const Cochain2& s) {
  for (std::size_t x = 0; x < s.group.size(); ++x)
    if (!s(0, x).is_zero() || !s(x, 0).is_zero()) return false;
  return true;
}

/// Additive in both slots (checked against generators, which suffices).
inline bool is_bicharacter(const Cochain2& b) {
  const auto& v = b.group;
  for (std::size_t i = 0; i < v.rank(); ++i) {
    const std::size_t e = v.generator(i);
    for (std::size_t x = 0; x < v.size(); ++x)
      for (std::size_t z = 0; z < v.size(); ++z) {
        if (b(v.add(x, e), z) != b(x, z) + b(e, z)) return false;
        if (b(z, v.add(x, e)) != b(z, x) + b(z, e)) return false;
      }
  }
  return true;
}

/// Alternating bicharacter: omega(x, x) = 0 (hence skew).
inline bool is_skew(const Cochain2& w) {
  if (!is_bicharacter(w)) return false;
  for (std::size_t x = 0; x < w.group.size(); ++x)
    if (!w(x, x).is_zero()) return false;
  return true;
}

inline bool is_symmetric(const Cochain2& s) {
  for (std::size_t x = 0; x < s.group.size(); ++x)
    for (std::size_t y = 0; y < x; ++y)
      if (s(x, y) != s(y, x)) return false;
  return true;
}

/// Alt(sigma)(x, y) = sigma(x, y) - sigma(y, x).
inline Bicharacter alt(const Cochain2& s) {
  Bicharacter w(s.group);
  for (std::size_t x = 0; x < s.group.size(); ++x)
    for (std::size_t y = 0; y < s.group.size(); ++y) w.at(x, y) = s(x, y) - s(y, x);
  return w;
}

/// Bicharacter from generator values: b(x, y) = sum_{i,j} m[i][j] x_i y_j.
inline Bicharacter bicharacter_from_matrix(const FiniteAbelianGroup& v, const std::vector<std::vector<QZ>>& m) {
  const std::size_t r = v.rank();
  if (m.size() != r) throw MathError("bicharacter matrix has wrong size");
  for (std::size_t i = 0; i < r; ++i) {
    if (m[i].size() != r) throw MathError("bicharacter matrix has wrong size");
    for (std::size_t j = 0; j < r; ++j)
      if (!m[i][j].times(std::gcd(v.orders()[i], v.orders()[j])).is_zero())
        throw MathError("generator value is incompatible with the orders; not a bicharacter");
  }
  Bicharacter b(v);
  for (std::size_t x = 0; x < v.size(); ++x)
    for (std::size_t y = 0; y < v.size(); ++y) {
      QZ s;
      for (std::size_t i = 0; i < r; ++i) {
        const auto xi = v.coord(x, i);
        if (xi == 0) continue;
        for (std::size_t j = 0; j < r; ++j) s += m[i][j].times(xi * v.coord(y, j));
      }
      b.at(x, y) = s;
    }
  return b;
}

inline std::vector<std::vector<QZ>> generator_matrix(const Cochain2& b) {
  const auto& v = b.group;
  std::vector<std::vector<QZ>> m(v.rank(), std::vector<QZ>(v.rank()));
  for (std::size_t i = 0; i < v.rank(); ++i)
    for (std::size_t j = 0; j < v.rank(); ++j) m[i][j] = b(v.generator(i), v.generator(j));
  return m;
}

/// Constructive inverse of Alt: sigma(x, y) = sum_{i > j} omega(e_i, e_j) x_i y_j.
inline Cochain2 alt_section(const Bicharacter& omega) {
  if (!is_skew(omega)) throw MathError("alt_section expects a skew-symmetric bicharacter");
  const auto& v = omega.group;
  std::vector<std::vector<QZ>> m(v.rank(), std::vector<QZ>(v.rank()));
  for (std::size_t i = 0; i < v.rank(); ++i)
    for (std::size_t j = 0; j < i; ++j) m[i][j] = omega(v.generator(i), v.generator(j));
  return bicharacter_from_matrix(v, m);
}

/// Elements orthogonal to everything under a bicharacter.
inline std::vector<std::size_t> radical(const Bicharacter& w) {
  std::vector<std::size_t> out;
  const auto& v = w.group;
  for (std::size_t x = 0; x < v.size(); ++x) {
    bool in = true;
    for (std::size_t i = 0; i < v.rank() && in; ++i)
      if (!w(x, v.generator(i)).is_zero() || !w(v.generator(i), x).is_zero()) in = false;
    if (in) out.push_back(x);
  }
  return out;
}

/// s is sigma-regular iff sigma(s, t) = sigma(t, s) for all t.
inline bool is_regular(const Cochain2& s, std::size_t x) {
  for (std::size_t t = 0; t < s.group.size(); ++t)
    if (s(x, t) != s(t, x)) return false;
  return true;
}

/// Only the identity is sigma-regular.
inline bool nondegenerate(const Cochain2& s) {
  for (std::size_t x = 1; x < s.group.size(); ++x)
    if (is_regular(s, x)) return false;
  return true;
}

/// sigma(g x, g y) for an automorphism given as an element permutation.
inline Cochain2 pullback(const Cochain2& s, const std::vector<std::size_t>& perm) {
  Cochain2 r(s.group);
  const std::size_t n = s.group.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) r.at(x, y) = s(perm[x], perm[y]);
  return r;
}

/// The N x N block of a normalized pair: sigma(x, y) + sigma(x + y, -x) - sigma(x, -x).
inline Bicharacter normalization_gamma(const Cochain2& s) {
  const auto& n = s.group;
  Bicharacter g(n);
  for (std::size_t x = 0; x < n.size(); ++x) {
    const std::size_t mx = n.neg(x);
    for (std::size_t y = 0; y < n.size(); ++y) g.at(x, y) = s(x, y) + s(n.add(x, y), mx) - s(x, mx);
  }
  return g;
}

/// Every value has order dividing m.
inline bool values_in(const std::vector<QZ>& values, std::int64_t m) {
  for (const auto& v : values)
    if (m % v.den() != 0) return false;
  return true;
}

/// Particular solution of delta eta = d for a symmetric 2-cocycle d.
///
/// d defines the abelian extension E = Q/Z x N with (a,x)(b,y) = (a+b+d(x,y), x+y). Each generator
/// e_i lifts to an element of order n_i, giving a splitting s(x) = (f(x), x); then eta = -f.
inline Cochain1 symmetric_coboundary_solve(const Cochain2& d) {
  const auto& n = d.group;
  std::vector<QZ> lift(n.rank());
  for (std::size_t i = 0; i < n.rank(); ++i) {
    const std::size_t e = n.generator(i);
    QZ acc;
    std::size_t ke = e;
    for (std::int64_t k = 1; k < n.orders()[i]; ++k) {
      acc += d(ke, e);
      ke = n.add(ke, e);
    }
    lift[i] = (-acc).divided_by(n.orders()[i]);
  }
  Cochain1 eta(n);
  for (std::size_t x = 1; x < n.size(); ++x) {
    QZ a;
    std::size_t cur = 0;
    for (std::size_t i = 0; i < n.rank(); ++i) {
      const std::size_t e = n.generator(i);
      for (std::int64_t k = 0; k < n.coord(x, i); ++k) {
        a += lift[i] + d(cur, e);
        cur = n.add(cur, e);
      }
    }
    eta.values[x] = -a;
  }
  if (delta1(eta) != d) throw MathError("difference of the cocycles is not a symmetric cocycle");
  return eta;
}

/// All cochains eta0 + chi with chi in Hom(N, Q/Z), in character-index order.
inline Cochain1 add_character(const Cochain1& eta, std::size_t chi) {
  Cochain1 r = eta;
  for (std::size_t x = 0; x < r.values.size(); ++x) r.values[x] += eta.group.character(chi, x);
  return r;
}

/// Witness eta with b = a + delta eta and values in mu_m (m = 0: unrestricted), or nothing.
inline std::optional<Cochain1> cohomologous(const Cochain2& a, const Cochain2& b, std::int64_t m = 0) {
  const Cochain2 d = b - a;
  if (!is_symmetric(d)) return std::nullopt;
  const Cochain1 eta0 = symmetric_coboundary_solve(d);
  for (std::size_t chi = 0; chi < a.group.size(); ++chi) {
    Cochain1 eta = add_character(eta0, chi);
    if (m == 0 || values_in(eta.values, m)) return eta;
  }
  return std::nullopt;
}

}  // namespace isocat
