#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "isocat/error.hpp"
#include "isocat/group/abelian.hpp"
#include "isocat/group/finite_group.hpp"

namespace isocat {

/// Composition of automorphisms encoded as keys; (a*b)(x) = a(b(x)).
inline FiniteGroup::Op automorphism_op(const FiniteAbelianGroup& v) {
  auto vv = std::make_shared<FiniteAbelianGroup>(v);
  return [vv](FiniteGroup::Key a, FiniteGroup::Key b) {
    return encode(*vv, compose(*vv, decode_automorphism(*vv, a), decode_automorphism(*vv, b)));
  };
}

/// Group generated by the given automorphisms of V.
inline FiniteGroup automorphism_group(const FiniteAbelianGroup& v, const std::vector<AbelianAutomorphism>& gens,
                                      std::size_t budget = kDefaultBudget) {
  std::vector<FiniteGroup::Key> keys;
  for (const auto& g : gens) {
    if (!is_automorphism(v, g)) throw MathError("generator is not an automorphism");
    keys.push_back(encode(v, g));
  }
  return FiniteGroup::closure(keys, encode(v, AbelianAutomorphism::identity(v)), automorphism_op(v), budget);
}

/// Group on an explicit list of automorphisms already known to be closed under composition.
inline FiniteGroup automorphism_group_from_list(const FiniteAbelianGroup& v,
                                                const std::vector<AbelianAutomorphism>& elems) {
  std::vector<FiniteGroup::Key> keys;
  for (const auto& g : elems) keys.push_back(encode(v, g));
  return with_greedy_generators(
      FiniteGroup::from_elements(std::move(keys), encode(v, AbelianAutomorphism::identity(v)), automorphism_op(v), {}));
}

inline AbelianAutomorphism automorphism_at(const FiniteAbelianGroup& v, const FiniteGroup& g, FiniteGroup::Index i) {
  return decode_automorphism(v, g.key(i));
}

/// Automorphism of (Z/p)^d from a d x d matrix acting on column vectors.
inline AbelianAutomorphism matrix_automorphism(const FiniteAbelianGroup& v, const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t d = v.rank();
  if (m.size() != d) throw MathError("matrix size does not match the module rank");
  AbelianAutomorphism a;
  for (std::size_t j = 0; j < d; ++j) {
    Coords col(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (m[i].size() != d) throw MathError("matrix is not square");
      col[i] = m[i][j];
    }
    a.images.push_back(v.index(col));
  }
  return a;
}

inline std::vector<std::vector<std::int64_t>> automorphism_matrix(const FiniteAbelianGroup& v, const AbelianAutomorphism& a) {
  const std::size_t d = v.rank();
  std::vector<std::vector<std::int64_t>> m(d, std::vector<std::int64_t>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) m[i][j] = v.coord(a.images[j], i);
  return m;
}

}  // namespace isocat
