#pragma once

#include <optional>

#include "isocat/io/datum.hpp"

namespace isocat {

namespace detail {

inline DatumSpec named(std::string name, std::string description, const RelCochain2& pair, StSource source,
                       StRestriction r, DatumExpectations expect) {
  auto d = datum_from_pair(pair, source, r);
  d.name = std::move(name);
  d.description = std::move(description);
  d.expect = std::move(expect);
  return d;
}

inline RelCochain2 quadratic_pair(int dim, bool minus = false) {
  const auto qm = trace_quadratic(standard_quadratic_f2(dim, minus));
  return torsor_pair(GaloisSetting(qm.v, CyclotomicField(2, {})), quad_trace_section(qm));
}

inline RelCochain2 semireal_pair(int dim) {
  const auto sm = standard_f2_symplectic(dim);
  return torsor_pair(GaloisSetting(sm.v, CyclotomicField(4, {3})), alt_section(sm.omega));
}

}  // namespace detail

/// Builtin data. Only sigma is computed here; stabilizers are built on demand.
inline std::vector<DatumSpec> builtin_presets() {
  using detail::named;
  std::vector<DatumSpec> out;

  const auto sp3 = trace_symplectic(standard_symplectic(3, 1, 2));
  auto sigma3 = sp3.omega;
  for (auto& x : sigma3.values) x = x.times(2);
  out.push_back(named("sp3", "(Z/3)^2 over Q(zeta_3) with the Sp-invariant sigma = 2 omega; St = Sp(2,3)",
                      torsor_pair(GaloisSetting(sp3.v, CyclotomicField(3, {})), sigma3), StSource::symplectic,
                      StRestriction::full, {.st_order = 24, .group_order = 216, .matrices = true, .matrix_dim = 3}));

  out.push_back(named("q2-ps", "Ps on (Z/2)^2 over Q with q = x1 x2; St = O+(2,2)", detail::quadratic_pair(2),
                      StSource::orthogonal, StRestriction::full, {.st_order = 2, .group_order = 8}));
  out.push_back(named("q4-ps", "Ps on (Z/2)^4 over Q with q = x1 x2 + x3 x4; St = O+(4,2)", detail::quadratic_pair(4),
                      StSource::orthogonal, StRestriction::full,
                      {.st_order = 72, .group_order = 1152, .certificate = "inconclusive"}));
  out.push_back(named("q4-omega", "(Z/2)^4 quadratic datum with St the Dickson kernel of O+(4,2)", detail::quadratic_pair(4),
                      StSource::orthogonal, StRestriction::omega,
                      {.st_order = 36, .group_order = 576, .certificate = "inconclusive"}));
  out.push_back(named("f2d6-sylow2", "(Z/2)^6 quadratic datum of plus type with St a Sylow 2-subgroup of O+(6,2)",
                      detail::quadratic_pair(6), StSource::orthogonal, StRestriction::sylow2,
                      {.st_order = 128, .group_order = 8192, .certificate = "difference"}));

  const auto aps = standard_f2_symplectic(4);
  out.push_back(named("aps-f2d4", "(Z/2)^4 over Q(i), trivial Galois group, sigma = alt_section(omega); St = Sp(4,2)",
                      torsor_pair(GaloisSetting(aps.v, CyclotomicField(4, {})), alt_section(aps.omega)),
                      StSource::symplectic, StRestriction::full, {.st_order = 720, .group_order = 11520, .certificate = "difference"}));

  out.push_back(named("semireal-f2d2", "semi-real datum on (Z/2)^2: K = Q(i) over Q; St = lifts of Sp(2,2)",
                      detail::semireal_pair(2), StSource::semireal, StRestriction::full,
                      {.st_order = 6, .group_order = 48, .matrices = true, .matrix_dim = 2}));
  out.push_back(named("semireal-f2d4", "semi-real datum on (Z/2)^4: K = Q(i) over Q; St = lifts of Sp(4,2)",
                      detail::semireal_pair(4), StSource::semireal, StRestriction::full,
                      {.st_order = 720, .group_order = 23040}));

  const FiniteAbelianGroup kl({2, 2});
  const auto quat = bicharacter_from_matrix(kl, {{QZ(1, 2), QZ()}, {QZ(1, 2), QZ(1, 2)}});
  out.push_back(named("quaternion-f2d2", "(Z/2)^2 over Q with u1^2 = u2^2 = -1: a division algebra; St = O-(2,2)",
                      torsor_pair(GaloisSetting(kl, CyclotomicField(2, {})), quat), StSource::orthogonal,
                      StRestriction::full, {.st_order = 6, .group_order = 24, .matrices = false}));
  return out;
}

inline std::optional<DatumSpec> find_preset(std::string_view name) {
  for (auto& d : builtin_presets())
    if (d.name == name) return d;
  return std::nullopt;
}

}  // namespace isocat
