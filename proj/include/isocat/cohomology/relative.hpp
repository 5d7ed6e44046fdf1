#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isocat/cohomology/cochain.hpp"
#include "isocat/error.hpp"
#include "isocat/exact/galois.hpp"

namespace isocat {

/// S = N + Gamma, where Gamma is the abstract group on the chosen generators of Gal(K|k).
///
/// N occupies the leading coordinates of S, so an element of N has the same index in N and S.
/// S is abelian, hence acts trivially on N; it acts on values through s -> t_s.
class GaloisSetting {
 public:
  GaloisSetting() : GaloisSetting(FiniteAbelianGroup(), CyclotomicField()) {}
  GaloisSetting(FiniteAbelianGroup n, CyclotomicField field)
      : n_(std::move(n)), field_(std::move(field)), gamma_(field_.generator_orders()), s_(n_.direct_sum(gamma_)) {
    for (std::size_t a = 0; a < gamma_.size(); ++a) units_.push_back(field_.unit(gamma_.coords(a)));
  }

  const FiniteAbelianGroup& n() const { return n_; }
  const FiniteAbelianGroup& gamma() const { return gamma_; }
  const FiniteAbelianGroup& s() const { return s_; }
  const CyclotomicField& field() const { return field_; }
  std::int64_t modulus() const { return field_.modulus(); }

  std::size_t embed_n(std::size_t x) const { return x; }
  std::size_t embed_gamma(std::size_t a) const { return a * n_.size(); }
  std::size_t n_part(std::size_t s) const { return s % n_.size(); }
  std::size_t gamma_part(std::size_t s) const { return s / n_.size(); }
  std::int64_t unit_of_gamma(std::size_t a) const { return units_[a]; }
  std::int64_t unit(std::size_t s) const { return units_[gamma_part(s)]; }

  /// t_s acting on a value; values moved by a nontrivial unit must lie in mu(K).
  QZ act(std::size_t s, QZ v) const { return act_unit(unit(s), v); }
  QZ act_unit(std::int64_t t, QZ v) const {
    if (t == 1) return v;
    if (modulus() % v.den() != 0)
      throw MathError("value " + v.str() + " is not in mu(K) for K = Q(zeta_" + std::to_string(modulus()) + ")");
    return v.times(t);
  }

  friend bool operator==(const GaloisSetting& a, const GaloisSetting& b) {
    return a.n_ == b.n_ && a.field_ == b.field_;
  }

 private:
  FiniteAbelianGroup n_;
  CyclotomicField field_;
  FiniteAbelianGroup gamma_;
  FiniteAbelianGroup s_;
  std::vector<std::int64_t> units_;
};

/// The pair (sigma, gamma) of the relative complex; gamma is indexed [s * |N| + x].
struct RelCochain2 {
  GaloisSetting setting;
  Cochain2 sigma;
  std::vector<QZ> gamma;

  RelCochain2() = default;
  RelCochain2(GaloisSetting st, Cochain2 sg, std::vector<QZ> gm)
      : setting(std::move(st)), sigma(std::move(sg)), gamma(std::move(gm)) {
    if (!(sigma.group == setting.n())) throw MathError("sigma is defined on a different group than N");
    if (gamma.size() != setting.s().size() * setting.n().size()) throw MathError("gamma table has wrong size");
  }
  QZ g(std::size_t s, std::size_t x) const { return gamma[s * setting.n().size() + x]; }
  QZ& g_at(std::size_t s, std::size_t x) { return gamma[s * setting.n().size() + x]; }
  friend bool operator==(const RelCochain2& a, const RelCochain2& b) {
    return a.setting == b.setting && a.sigma == b.sigma && a.gamma == b.gamma;
  }
};

/// The pairing attached to sigma: zero on Gamma x N and Alt(sigma) on N x N.
inline RelCochain2 torsor_pair(const GaloisSetting& st, const Cochain2& sigma) {
  const auto w = alt(sigma);
  const std::size_t nn = st.n().size();
  std::vector<QZ> gamma(st.s().size() * nn);
  for (std::size_t s = 0; s < st.s().size(); ++s)
    for (std::size_t x = 0; x < nn; ++x) gamma[s * nn + x] = w(st.n_part(s), x);
  return RelCochain2(st, sigma, std::move(gamma));
}

/// (delta eta, d eta) with d eta(s, x) = t_s eta(x) - eta(x).
inline RelCochain2 rel_coboundary(const GaloisSetting& st, const Cochain1& eta) {
  const std::size_t nn = st.n().size();
  std::vector<QZ> gamma(st.s().size() * nn);
  for (std::size_t s = 0; s < st.s().size(); ++s)
    for (std::size_t x = 0; x < nn; ++x) gamma[s * nn + x] = st.act(s, eta(x)) - eta(x);
  return RelCochain2(st, delta1(eta), std::move(gamma));
}

inline RelCochain2 operator+(const RelCochain2& a, const RelCochain2& b) {
  RelCochain2 r = a;
  r.sigma = a.sigma + b.sigma;
  for (std::size_t i = 0; i < r.gamma.size(); ++i) r.gamma[i] += b.gamma[i];
  return r;
}

struct CocycleReport {
  bool ok = true;
  std::string equation;               // "C1", "C2", "C3" or "normalization"
  std::vector<std::size_t> witness;   // the failing tuple
};

/// Equations (C1)-(C3) over all tuples, additive notation, S acting trivially on N.
inline CocycleReport check_rel_cocycle(const RelCochain2& c) {
  const auto& st = c.setting;
  const auto& n = st.n();
  const auto& s = st.s();
  for (std::size_t x = 0; x < n.size(); ++x)
    if (!c.sigma(0, x).is_zero() || !c.sigma(x, 0).is_zero()) return {false, "normalization", {x}};
  for (std::size_t g = 0; g < s.size(); ++g)
    if (!c.g(g, 0).is_zero()) return {false, "normalization", {g}};
  if (auto v = cocycle_violation(c.sigma)) return {false, "C1", {(*v)[0], (*v)[1], (*v)[2]}};
  for (std::size_t g = 0; g < s.size(); ++g)
    for (std::size_t x = 0; x < n.size(); ++x)
      for (std::size_t y = 0; y < n.size(); ++y) {
        const QZ lhs = st.act(g, c.sigma(x, y)) + c.g(g, n.add(x, y));
        const QZ rhs = c.sigma(x, y) + c.g(g, x) + c.g(g, y);
        if (lhs != rhs) return {false, "C2", {g, x, y}};
      }
  for (std::size_t g = 0; g < s.size(); ++g)
    for (std::size_t h = 0; h < s.size(); ++h)
      for (std::size_t x = 0; x < n.size(); ++x)
        if (c.g(s.add(g, h), x) != st.act(g, c.g(h, x)) + c.g(g, x)) return {false, "C3", {g, h, x}};
  return {};
}

/// Membership in the normalized subgroup: gamma on N x N is the normalization of sigma.
inline bool in_normalized_subgroup(const RelCochain2& c) {
  const auto ng = normalization_gamma(c.sigma);
  const std::size_t nn = c.setting.n().size();
  for (std::size_t x = 0; x < nn; ++x)
    for (std::size_t y = 0; y < nn; ++y)
      if (c.g(c.setting.embed_n(x), y) != ng(x, y)) return false;
  return true;
}

struct NormalizedPair {
  RelCochain2 pair;
  Cochain1 witness;  // pair = input + coboundary(witness)
};

/// A cohomologous normalized representative.
///
/// S is abelian and acts trivially on N, so relative coboundaries vanish on N x N and the N x N
/// block of gamma is a cohomology invariant. A cocycle is therefore cohomologous to a normalized
/// one exactly when it is already normalized; any other input is rejected with the offending pair.
inline NormalizedPair normalize_pair(const RelCochain2& c) {
  const auto rep = check_rel_cocycle(c);
  if (!rep.ok) throw MathError("normalize_pair: input violates " + rep.equation);
  const auto ng = normalization_gamma(c.sigma);
  const std::size_t nn = c.setting.n().size();
  for (std::size_t x = 0; x < nn; ++x)
    for (std::size_t y = 0; y < nn; ++y)
      if (c.g(x, y) != ng(x, y))
        throw MathError("normalize_pair: gamma(" + std::to_string(x) + "," + std::to_string(y) +
                        ") differs from the normalization of sigma and no relative coboundary changes it");
  return {c, Cochain1(c.setting.n())};
}

/// Pull back along an automorphism of S preserving N, given as a permutation of S.
inline RelCochain2 rel_pullback(const RelCochain2& c, const std::vector<std::size_t>& s_perm) {
  const auto& st = c.setting;
  const std::size_t nn = st.n().size();
  std::vector<std::size_t> n_perm(nn);
  for (std::size_t x = 0; x < nn; ++x) {
    n_perm[x] = s_perm[st.embed_n(x)];
    if (n_perm[x] >= nn) throw MathError("automorphism does not preserve N");
  }
  RelCochain2 r = c;
  r.sigma = pullback(c.sigma, n_perm);
  for (std::size_t s = 0; s < st.s().size(); ++s)
    for (std::size_t x = 0; x < nn; ++x) r.g_at(s, x) = c.g(s_perm[s], n_perm[x]);
  return r;
}

/// Every eta with values in mu_m (m = 0: unrestricted) and b = a + coboundary(eta), in
/// character-index order, stopping after `limit` witnesses. Both inputs must be cocycles.
inline std::vector<Cochain1> rel_witnesses(const RelCochain2& a, const RelCochain2& b, std::int64_t m,
                                           std::size_t limit = static_cast<std::size_t>(-1)) {
  const auto& st = a.setting;
  const auto& n = st.n();
  const Cochain2 d = b.sigma - a.sigma;
  if (!is_symmetric(d)) return {};
  // Coboundaries vanish on N x N; on Gamma generators they are determined by eta.
  for (std::size_t i = 0; i < n.rank(); ++i)
    for (std::size_t x = 0; x < n.size(); ++x)
      if (b.g(st.embed_n(n.generator(i)), x) != a.g(st.embed_n(n.generator(i)), x)) return {};
  const Cochain1 eta0 = symmetric_coboundary_solve(d);
  std::vector<std::size_t> gamma_gens;
  for (std::size_t k = 0; k < st.gamma().rank(); ++k) gamma_gens.push_back(st.embed_gamma(st.gamma().generator(k)));
  std::vector<Cochain1> out;
  for (std::size_t chi = 0; chi < n.size() && out.size() < limit; ++chi) {
    Cochain1 eta = add_character(eta0, chi);
    if (m != 0 && !values_in(eta.values, m)) continue;
    bool ok = true;
    for (auto s : gamma_gens) {
      for (std::size_t x = 0; x < n.size() && ok; ++x)
        if (b.g(s, x) - a.g(s, x) != st.act(s, eta(x)) - eta(x)) ok = false;
      if (!ok) break;
    }
    if (ok) out.push_back(std::move(eta));
  }
  return out;
}

/// First witness eta with b = a + coboundary(eta), values in mu(K); checks both inputs.
inline std::optional<Cochain1> cohomologous_rel(const RelCochain2& a, const RelCochain2& b) {
  if (!(a.setting == b.setting)) throw MathError("cohomologous_rel: pairs live over different settings");
  for (const auto* c : {&a, &b}) {
    const auto rep = check_rel_cocycle(*c);
    if (!rep.ok) throw MathError("cohomologous_rel: input violates " + rep.equation);
  }
  auto w = rel_witnesses(a, b, a.setting.modulus(), 1);
  if (w.empty()) return std::nullopt;
  return w.front();
}

/// x in mu_m with c(t) = t x - x for all t in Gamma, or nothing.
/// `c` is indexed like act.elements().
inline std::optional<QZ> hilbert90_solve(const std::vector<QZ>& c, const GaloisAction& act) {
  const auto& el = act.elements();
  const std::int64_t m = act.modulus();
  if (c.size() != el.size()) throw MathError("hilbert90_solve: cochain has wrong length");
  auto at = [&](std::int64_t t) {
    const auto it = std::lower_bound(el.begin(), el.end(), mod_pos(t, m));
    return c[static_cast<std::size_t>(it - el.begin())];
  };
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = 0; j < el.size(); ++j)
      if (at(el[i] * el[j]) != act.apply(el[i], c[j]) + c[i]) return std::nullopt;
  // Solve (t - 1) a = c(t) m (mod m) for a in [0, m).
  for (std::int64_t a = 0; a < m; ++a) {
    const QZ x(a, m);
    bool ok = true;
    for (std::size_t i = 0; i < el.size() && ok; ++i)
      if (act.apply(el[i], x) - x != c[i]) ok = false;
    if (ok) return x;
  }
  return std::nullopt;
}

struct GaloisTrivialized {
  RelCochain2 pair;  // gamma vanishes on Gamma x N
  Cochain1 witness;  // pair = input + coboundary(witness)
};

/// Kill gamma on Gamma x N by Hilbert 90 applied to each x separately.
inline std::optional<GaloisTrivialized> galois_trivialize(const RelCochain2& c) {
  const auto& st = c.setting;
  const auto& act = st.field().galois();
  const auto& el = act.elements();
  std::vector<std::size_t> gamma_of_unit(el.size());
  for (std::size_t a = 0; a < st.gamma().size(); ++a) {
    const auto it = std::lower_bound(el.begin(), el.end(), st.unit_of_gamma(a));
    gamma_of_unit[static_cast<std::size_t>(it - el.begin())] = a;
  }
  Cochain1 tau(st.n());
  for (std::size_t x = 1; x < st.n().size(); ++x) {
    std::vector<QZ> cx(el.size());
    for (std::size_t i = 0; i < el.size(); ++i) cx[i] = c.g(st.embed_gamma(gamma_of_unit[i]), x);
    const auto sol = hilbert90_solve(cx, act);
    if (!sol) return std::nullopt;
    tau.values[x] = *sol;
  }
  const Cochain1 eta = -tau;
  return GaloisTrivialized{c + rel_coboundary(st, eta), eta};
}

}  // namespace isocat
