#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isocat/algebra/linalg.hpp"
#include "isocat/error.hpp"
#include "isocat/exact/cyclotomic.hpp"
#include "isocat/exact/galois.hpp"
#include "isocat/exact/qz.hpp"
#include "isocat/group/finite_group.hpp"

namespace isocat {

/// A semilinear map c e_a -> t_a(c) zeta^{phase_a} e_{target_a} on an algebra with a monomial
/// K-basis e_a, K = Q(zeta_m); t_a is a unit mod m acting on the coefficient.
struct MonomialMap {
  std::vector<std::size_t> target;
  std::vector<QZ> phase;
  std::vector<std::int64_t> unit;

  static MonomialMap identity(std::size_t n) {
    MonomialMap r;
    r.target.resize(n);
    for (std::size_t a = 0; a < n; ++a) r.target[a] = a;
    r.phase.assign(n, QZ());
    r.unit.assign(n, 1);
    return r;
  }
  std::size_t size() const { return target.size(); }
  bool is_permutation() const {
    std::vector<bool> hit(size(), false);
    for (auto t : target) {
      if (t >= size() || hit[t]) return false;
      hit[t] = true;
    }
    return true;
  }
  friend bool operator==(const MonomialMap&, const MonomialMap&) = default;
};

struct MonomialMapHash {
  std::size_t operator()(const MonomialMap& f) const noexcept {
    std::size_t h = f.size();
    for (std::size_t a = 0; a < f.size(); ++a) {
      h = h * 1000003u ^ f.target[a];
      h = h * 1000003u ^ static_cast<std::size_t>(f.phase[a].num() * 7919 + f.phase[a].den());
      h = h * 1000003u ^ static_cast<std::size_t>(f.unit[a]);
    }
    return h;
  }
};

/// outer o inner.
inline MonomialMap compose(const MonomialMap& outer, const MonomialMap& inner, std::int64_t m) {
  if (outer.size() != inner.size()) throw MathError("composing monomial maps of different sizes");
  MonomialMap r;
  const std::size_t n = inner.size();
  r.target.resize(n);
  r.phase.resize(n);
  r.unit.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t b = inner.target[a];
    r.target[a] = outer.target[b];
    r.unit[a] = mod_pos(outer.unit[b] * inner.unit[a], m);
    r.phase[a] = inner.phase[a].times(outer.unit[b]) + outer.phase[b];
  }
  return r;
}

inline MonomialMap inverse(const MonomialMap& f, std::int64_t m) {
  if (!f.is_permutation()) throw MathError("monomial map is not invertible");
  const std::size_t n = f.size();
  MonomialMap r;
  r.target.resize(n);
  r.phase.resize(n);
  r.unit.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t b = f.target[a];
    std::int64_t inv = 1;
    while (mod_pos(inv * f.unit[a], m) != 1) ++inv;
    r.target[b] = a;
    r.unit[b] = inv;
    r.phase[b] = -f.phase[a].times(inv);
  }
  return r;
}

/// An algebra over K = Q(zeta_m) with basis e_a and e_a e_b = zeta^{phase} e_c or 0.
/// K is central in each component; the identity is the sum of the listed unit monomials.
struct MonomialAlgebra {
  int modulus = 2;
  std::size_t dim = 1;
  std::vector<std::size_t> component;
  std::vector<std::size_t> units;
  std::function<std::optional<std::pair<std::size_t, QZ>>(std::size_t, std::size_t)> product;

  int phi() const { return euler_phi(modulus); }
  std::size_t rational_dim() const { return dim * static_cast<std::size_t>(phi()); }
};

namespace detail {

inline std::int64_t exponent_of(QZ v, std::int64_t m) {
  if (m % v.den() != 0) throw MathError("root of unity " + v.str() + " is outside mu_" + std::to_string(m));
  return v.num() * (m / v.den());
}

/// Row j of the multiplication-by-zeta^k table: coefficients of zeta^(j+k) in the power basis.
inline const std::vector<std::int64_t>& power_row(int m, std::int64_t k) {
  return cyclotomic_tables(m)->power[static_cast<std::size_t>(mod_pos(k, m))];
}

}  // namespace detail

/// f applied to the rational basis element zeta^r e_a, as a sparse column: (target block, coeffs).
inline std::pair<std::size_t, const std::vector<std::int64_t>*> apply_rational(const MonomialMap& f, int m,
                                                                               std::size_t a, std::int64_t r) {
  const std::int64_t k = f.unit[a] * r + detail::exponent_of(f.phase[a], m);
  return {f.target[a], &detail::power_row(m, k)};
}

/// Dense integer matrix of f on the Q-basis zeta^r e_a (index a * phi + r); columns are images.
inline std::vector<std::vector<std::int64_t>> rational_matrix(const MonomialMap& f, int m) {
  const auto phi = static_cast<std::size_t>(euler_phi(m));
  const std::size_t d = f.size() * phi;
  std::vector<std::vector<std::int64_t>> mat(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t r = 0; r < phi; ++r) {
      const auto [b, row] = apply_rational(f, m, a, static_cast<std::int64_t>(r));
      for (std::size_t j = 0; j < phi; ++j) mat[b * phi + j][a * phi + r] = (*row)[j];
    }
  return mat;
}

/// Why f fails to be a ring automorphism of alg, if it does.
inline std::optional<std::string> automorphism_violation(const MonomialAlgebra& alg, const MonomialMap& f) {
  if (f.size() != alg.dim) return "size mismatch";
  if (!f.is_permutation()) return "not bijective on monomials";
  for (std::size_t a = 0; a < alg.dim; ++a) {
    for (std::size_t b = 0; b < alg.dim; ++b) {
      if (alg.component[a] == alg.component[b] && f.unit[a] != f.unit[b])
        return "coefficient twist varies inside a component";
      const auto ab = alg.product(a, b);
      const auto fab = alg.product(f.target[a], f.target[b]);
      if (ab.has_value() != fab.has_value()) return "support of a product not preserved";
      if (!ab) continue;
      if (f.target[ab->first] != fab->first) return "product lands on the wrong monomial";
      const QZ lhs = ab->second.times(f.unit[ab->first]) + f.phase[ab->first];
      const QZ rhs = f.phase[a] + f.phase[b] + fab->second;
      if (lhs != rhs) return "phase mismatch on e_" + std::to_string(a) + " e_" + std::to_string(b);
    }
  }
  for (auto u : alg.units)
    if (!f.phase[u].is_zero()) return "identity not fixed";
  return std::nullopt;
}

inline bool is_algebra_automorphism(const MonomialAlgebra& alg, const MonomialMap& f) {
  return !automorphism_violation(alg, f).has_value();
}

/// A group whose elements are the given maps, keyed by list position. The list must be closed
/// under composition; the identity must be present.
struct MapGroup {
  FiniteGroup group;
  std::vector<MonomialMap> maps;  // maps[group.key(i)] is element i
};

inline MapGroup map_group(std::vector<MonomialMap> maps, std::int64_t m) {
  if (maps.empty()) throw MathError("map_group: empty list");
  const std::size_t n = maps.size();
  std::unordered_map<MonomialMap, std::size_t, MonomialMapHash> pos;
  for (std::size_t i = 0; i < n; ++i)
    if (!pos.emplace(maps[i], i).second) throw MathError("map_group: duplicate map at position " + std::to_string(i));
  const auto id = pos.find(MonomialMap::identity(maps[0].size()));
  if (id == pos.end()) throw MathError("map_group: identity missing");
  auto table = std::make_shared<std::vector<std::uint32_t>>(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto it = pos.find(compose(maps[a], maps[b], m));
      if (it == pos.end())
        throw MathError("map_group: not closed (" + std::to_string(a) + " o " + std::to_string(b) + ")");
      (*table)[a * n + b] = static_cast<std::uint32_t>(it->second);
    }
  FiniteGroup::Op op = [table, n](FiniteGroup::Key a, FiniteGroup::Key b) {
    return static_cast<FiniteGroup::Key>((*table)[a * n + b]);
  };
  std::vector<FiniteGroup::Key> keys(n);
  for (std::size_t i = 0; i < n; ++i) keys[i] = i;
  return {with_greedy_generators(FiniteGroup::from_elements(std::move(keys), id->second, std::move(op), {})),
          std::move(maps)};
}

}  // namespace isocat
