#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "isocat/cohomology/relative.hpp"
#include "isocat/error.hpp"
#include "isocat/group/automorphisms.hpp"
#include "isocat/group/crossed.hpp"
#include "isocat/group/finite_group.hpp"

namespace isocat {

/// (S, K, N, sigma, gamma) together with G and the embedding S -> G (s_embed[s] is an index of G).
struct TorsorDatum {
  FiniteGroup g;
  std::vector<FiniteGroup::Index> s_embed;
  RelCochain2 pair;

  const GaloisSetting& setting() const { return pair.setting; }
};

struct ConditionResult {
  std::string id;
  std::string description;
  bool passed = true;
  std::string witness;
};

struct TorsorReport {
  std::vector<ConditionResult> conditions;
  // Condition 7 gives the same verdict for a second transversal of G/S.
  bool transversal_independent = true;

  bool ok() const {
    for (const auto& c : conditions)
      if (!c.passed) return false;
    return true;
  }
  const ConditionResult* find(const std::string& id) const {
    for (const auto& c : conditions)
      if (c.id == id) return &c;
    return nullptr;
  }
};

/// Permutation of S induced by an automorphism of S.
inline std::vector<std::size_t> s_permutation(const GaloisSetting& st, const AbelianAutomorphism& g) {
  return g.permutation(st.s());
}

/// The pair transported along g: (sigma(gx, gy), gamma(gs, gx)).
inline RelCochain2 transport(const RelCochain2& c, const AbelianAutomorphism& g) {
  return rel_pullback(c, s_permutation(c.setting, g));
}

/// [(sigma, gamma)] = [(sigma^g, gamma^g)] with witnesses in mu(K); no cocycle re-check.
inline bool stabilizes(const RelCochain2& c, const AbelianAutomorphism& g) {
  return !rel_witnesses(c, transport(c, g), c.setting.modulus(), 1).empty();
}

namespace detail {

inline std::string tuple_str(std::initializer_list<std::size_t> xs) {
  std::string s = "(";
  bool first = true;
  for (auto x : xs) {
    if (!first) s += ", ";
    s += std::to_string(x);
    first = false;
  }
  return s + ")";
}

/// s -> index in S of g^{-1} s g, or npos when S is not normalized.
inline std::optional<std::vector<std::size_t>> conjugation_on_s(const TorsorDatum& d, FiniteGroup::Index g) {
  const auto& G = d.g;
  std::vector<std::size_t> where(G.order(), static_cast<std::size_t>(-1));
  for (std::size_t s = 0; s < d.s_embed.size(); ++s) where[d.s_embed[s]] = s;
  std::vector<std::size_t> perm(d.s_embed.size());
  const auto ginv = G.inverse(g);
  for (std::size_t s = 0; s < d.s_embed.size(); ++s) {
    const auto c = where[G.conjugate(ginv, d.s_embed[s])];
    if (c == static_cast<std::size_t>(-1)) return std::nullopt;
    perm[s] = c;
  }
  return perm;
}

/// Representatives of the cosets gS, smallest or largest index first.
inline std::vector<FiniteGroup::Index> coset_transversal(const TorsorDatum& d, bool largest) {
  const auto& G = d.g;
  std::vector<bool> done(G.order(), false);
  std::vector<FiniteGroup::Index> reps;
  for (std::size_t k = 0; k < G.order(); ++k) {
    const auto x = static_cast<FiniteGroup::Index>(largest ? G.order() - 1 - k : k);
    if (done[x]) continue;
    reps.push_back(x);
    for (auto e : d.s_embed) done[G.mul(x, e)] = true;
  }
  return reps;
}

inline std::optional<FiniteGroup::Index> first_class_violation(const TorsorDatum& d,
                                                               const std::vector<FiniteGroup::Index>& reps) {
  for (auto g : reps) {
    const auto perm = conjugation_on_s(d, g);
    if (!perm) return g;
    const RelCochain2 moved = rel_pullback(d.pair, *perm);
    if (rel_witnesses(d.pair, moved, d.setting().modulus(), 1).empty()) return g;
  }
  return std::nullopt;
}

}  // namespace detail

/// All conditions of a torsor datum, plus the Galois-datum requirements (cocycle, non-degeneracy).
inline TorsorReport validate_torsor(const TorsorDatum& d) {
  TorsorReport rep;
  const auto& st = d.setting();
  const auto& n = st.n();
  const auto& s = st.s();
  const auto& G = d.g;
  auto add = [&](std::string id, std::string desc, bool ok, std::string w = {}) {
    rep.conditions.push_back({std::move(id), std::move(desc), ok, ok ? std::string() : std::move(w)});
  };

  const auto coc = check_rel_cocycle(d.pair);
  std::string cw = coc.equation;
  if (!coc.ok) {
    cw += " at (";
    for (std::size_t i = 0; i < coc.witness.size(); ++i) cw += (i ? ", " : "") + std::to_string(coc.witness[i]);
    cw += ")";
  }
  add("galois.cocycle", "(sigma, gamma) is a relative 2-cocycle", coc.ok, cw);
  {
    std::size_t regular = 0;
    for (std::size_t x = 1; x < n.size() && !regular; ++x)
      if (is_regular(d.pair.sigma, x)) regular = x;
    add("galois.nondegenerate", "sigma is non-degenerate", regular == 0,
        "element " + std::to_string(regular) + " is sigma-regular");
  }

  // 1. S is abelian and embedded as a subgroup.
  {
    bool ok = d.s_embed.size() == s.size();
    std::string w = ok ? "" : "embedding has the wrong size";
    for (std::size_t a = 0; ok && a < s.rank(); ++a)
      for (std::size_t b = 0; ok && b < s.size(); ++b) {
        const auto ga = d.s_embed[s.generator(a)], gb = d.s_embed[b];
        if (G.mul(ga, gb) != d.s_embed[s.add(s.generator(a), b)]) {
          ok = false;
          w = "embedding is not a homomorphism at " + detail::tuple_str({s.generator(a), b});
        }
      }
    add("1.abelian", "S is an abelian subgroup of G", ok, w);
  }
  // 2. The chosen complement maps isomorphically onto Gal(K|k).
  {
    const auto& gal = st.field().galois();
    std::vector<std::int64_t> units;
    for (std::size_t a = 0; a < st.gamma().size(); ++a) units.push_back(st.unit_of_gamma(a));
    std::sort(units.begin(), units.end());
    const bool ok = units == gal.elements();
    add("2.splitting", "S = N + Gal(K|k) with Gamma -> Gal(K|k) bijective", ok,
        "the complement has " + std::to_string(st.gamma().size()) + " elements, Gal(K|k) has " +
            std::to_string(gal.order()));
  }
  // 3. k contains a primitive root of unity of order exp(N).
  {
    const auto r = st.field().base_roots_of_unity();
    add("3.roots_of_unity", "k contains a primitive exp(N)-th root of unity", r % n.exponent() == 0,
        "mu(k) = mu_" + std::to_string(r) + ", exp(N) = " + std::to_string(n.exponent()));
  }
  // 4. sigma takes values in k*.
  {
    const auto r = st.field().base_roots_of_unity();
    std::string w;
    for (std::size_t i = 0; i < d.pair.sigma.values.size() && w.empty(); ++i)
      if (!values_in({d.pair.sigma.values[i]}, r))
        w = "sigma" + detail::tuple_str({i / n.size(), i % n.size()}) + " = " + d.pair.sigma.values[i].str();
    add("4.sigma_in_k", "sigma takes values in k*", w.empty(), w);
  }
  // 5. gamma is a pairing, trivial on Gamma x N and Alt(sigma) on N x N.
  {
    std::string w;
    const auto alt_s = alt(d.pair.sigma);
    for (std::size_t a = 0; a < s.size() && w.empty(); ++a)
      for (std::size_t x = 0; x < n.size() && w.empty(); ++x) {
        if (st.n_part(a) == 0 && !d.pair.g(a, x).is_zero())
          w = "gamma" + detail::tuple_str({a, x}) + " != 0 on Gamma x N";
        else if (a < n.size() && d.pair.g(a, x) != alt_s(a, x))
          w = "gamma" + detail::tuple_str({a, x}) + " != Alt(sigma)";
        for (std::size_t i = 0; i < s.rank() && w.empty(); ++i)
          if (d.pair.g(s.add(a, s.generator(i)), x) != d.pair.g(a, x) + d.pair.g(s.generator(i), x))
            w = "gamma is not additive in S at " + detail::tuple_str({a, s.generator(i), x});
        for (std::size_t i = 0; i < n.rank() && w.empty(); ++i)
          if (d.pair.g(a, n.add(x, n.generator(i))) != d.pair.g(a, x) + d.pair.g(a, n.generator(i)))
            w = "gamma is not additive in N at " + detail::tuple_str({a, x, n.generator(i)});
      }
    add("5.pairing", "gamma is a pairing with gamma|Gamma x N = 0 and gamma|N x N = Alt(sigma)", w.empty(), w);
  }
  // 6. N and S are normal in G.
  std::string normal_w;
  for (auto g : G.generators()) {
    if (!normal_w.empty()) break;
    const auto perm = detail::conjugation_on_s(d, g);
    if (!perm) {
      normal_w = "S is not normalized by element " + std::to_string(g);
      break;
    }
    for (std::size_t x = 0; x < n.size(); ++x)
      if ((*perm)[x] >= n.size()) {
        normal_w = "N is not normalized by element " + std::to_string(g) + " (moves " + std::to_string(x) + ")";
        break;
      }
  }
  if (normal_w.empty() && G.generators().empty() && G.order() > 1) normal_w = "G has no generators recorded";
  add("6.normal", "N and S are normal in G", normal_w.empty(), normal_w);
  // 7. The class of (sigma, gamma) is invariant under G/S.
  if (!normal_w.empty()) {
    add("7.invariant_class", "[(sigma, gamma)] is invariant under G/S", false, "not evaluated: " + normal_w);
  } else {
    const auto v1 = detail::first_class_violation(d, detail::coset_transversal(d, false));
    const auto v2 = detail::first_class_violation(d, detail::coset_transversal(d, true));
    rep.transversal_independent = v1.has_value() == v2.has_value();
    add("7.invariant_class", "[(sigma, gamma)] is invariant under G/S", !v1.has_value(),
        v1 ? "conjugation by element " + std::to_string(*v1) + " moves the class" : "");
  }
  return rep;
}

/// Automorphisms of S that restrict to automorphisms of N and induce the identity on S/N = Gamma.
/// The last condition is forced: an S-algebra isomorphism B^(g) -> B restricts to K and must
/// intertwine t_{g(a)} with t_a.
inline std::vector<AbelianAutomorphism> galois_compatible_automorphisms(const GaloisSetting& st,
                                                                        const std::vector<AbelianAutomorphism>& on_n) {
  const auto& n = st.n();
  const auto& s = st.s();
  const auto& gm = st.gamma();
  std::vector<AbelianAutomorphism> out;
  std::vector<std::size_t> lift(gm.rank(), 0);
  for (const auto& a : on_n) {
    std::fill(lift.begin(), lift.end(), 0);
    while (true) {
      AbelianAutomorphism g;
      for (std::size_t i = 0; i < n.rank(); ++i) g.images.push_back(st.embed_n(a.images[i]));
      for (std::size_t k = 0; k < gm.rank(); ++k)
        g.images.push_back(s.add(st.embed_n(lift[k]), st.embed_gamma(gm.generator(k))));
      if (is_automorphism(s, g)) out.push_back(std::move(g));
      std::size_t k = 0;
      while (k < lift.size() && ++lift[k] == n.size()) lift[k++] = 0;
      if (k == lift.size()) break;
    }
  }
  return out;
}

/// Aut_N(S) compatible with the Galois action, from an enumeration of Aut(N).
inline std::vector<AbelianAutomorphism> aut_N_S(const GaloisSetting& st, std::size_t budget = kDefaultBudget) {
  return galois_compatible_automorphisms(st, aut_group(st.n(), budget));
}

/// Extend automorphisms of N to S by fixing Gamma.
inline AbelianAutomorphism extend_by_identity(const GaloisSetting& st, const AbelianAutomorphism& a) {
  AbelianAutomorphism g;
  for (auto img : a.images) g.images.push_back(st.embed_n(img));
  for (std::size_t k = 0; k < st.gamma().rank(); ++k) g.images.push_back(st.embed_gamma(st.gamma().generator(k)));
  return g;
}

/// A candidate stabilizer given by explicit automorphisms of N (e.g. an orthogonal group); every
/// element is checked against the class.
inline FiniteGroup verified_stabilizer_subgroup(const RelCochain2& c, const FiniteAbelianGroup& n, const FiniteGroup& on_n) {
  const auto& st = c.setting;
  if (!(n == st.n())) throw MathError("stabilizer candidate acts on a different group");
  std::vector<AbelianAutomorphism> lifted;
  for (FiniteGroup::Index i = 0; i < on_n.order(); ++i) {
    const auto g = extend_by_identity(st, decode_automorphism(n, on_n.key(i)));
    if (!stabilizes(c, g))
      throw MathError("automorphism " + std::to_string(i) + " of the candidate does not stabilize the class");
    lifted.push_back(g);
  }
  return automorphism_group_from_list(st.s(), lifted);
}

/// Restriction of an element of Aut_N(S) to N.
inline AbelianAutomorphism restrict_to_n(const GaloisSetting& st, const AbelianAutomorphism& g) {
  AbelianAutomorphism r;
  for (std::size_t i = 0; i < st.n().rank(); ++i) {
    const auto img = g.images[i];
    if (img >= st.n().size()) throw MathError("automorphism does not preserve N");
    r.images.push_back(img);
  }
  return r;
}

/// X = {g in Aut(N) : [sigma] = [sigma^g] in H^2(N, K*)}, witnesses in mu(K).
inline std::vector<AbelianAutomorphism> x_set(const RelCochain2& c, std::size_t budget = kDefaultBudget) {
  const auto& n = c.setting.n();
  std::vector<AbelianAutomorphism> out;
  for (const auto& g : aut_group(n, budget))
    if (cohomologous(c.sigma, pullback(c.sigma, g.permutation(n)), c.setting.modulus())) out.push_back(g);
  return out;
}

/// Y = {g in Aut_N(S) : [(sigma, gamma)]^g = [(sigma, gamma)]}. Restriction of a witness shows
/// g|_N is in X, so only lifts of X are tested.
inline std::vector<AbelianAutomorphism> y_set(const RelCochain2& c, const std::vector<AbelianAutomorphism>& x) {
  std::vector<AbelianAutomorphism> out;
  for (const auto& g : galois_compatible_automorphisms(c.setting, x))
    if (stabilizes(c, g)) out.push_back(g);
  return out;
}

/// St([sigma, gamma]) inside Aut_N(S): the candidates are lifts of X, so Aut(N) is enumerated
/// once and only the Galois-compatible lifts of X are tested against the class.
inline FiniteGroup stabilizer_class(const RelCochain2& c, std::size_t budget = kDefaultBudget) {
  return automorphism_group_from_list(c.setting.s(), y_set(c, x_set(c, budget)));
}

/// The lift g' of g in X: g'(x + a) = g(x) + n(g, a) + a, where n(g, a) is the unique element
/// with Alt(sigma)(n(g, a), g(y)) = t_a eta_g(y) - eta_g(y) and sigma^g = sigma + delta eta_g.
/// Requires gamma = torsor_pair(sigma).
inline AbelianAutomorphism lift_to_Y(const RelCochain2& c, const AbelianAutomorphism& g) {
  const auto& st = c.setting;
  const auto& n = st.n();
  const auto& gm = st.gamma();
  if (!(c == torsor_pair(st, c.sigma))) throw MathError("lift_to_Y: gamma is not the pairing attached to sigma");
  const auto gp = g.permutation(n);
  const auto eta = cohomologous(c.sigma, pullback(c.sigma, gp), st.modulus());
  if (!eta) throw MathError("lift_to_Y: g is not in X (no eta_g with values in mu(K))");
  const auto w = alt(c.sigma);
  AbelianAutomorphism lifted = extend_by_identity(st, g);
  for (std::size_t k = 0; k < gm.rank(); ++k) {
    const std::size_t a = st.embed_gamma(gm.generator(k));
    std::optional<std::size_t> found;
    for (std::size_t m = 0; m < n.size(); ++m) {
      bool ok = true;
      for (std::size_t i = 0; i < n.rank() && ok; ++i) {
        const std::size_t y = n.generator(i);
        if (w(m, gp[y]) != st.act(a, (*eta)(y)) - (*eta)(y)) ok = false;
      }
      if (ok) {
        if (found) throw MathError("lift_to_Y: n(g, a) is not unique (sigma is degenerate)");
        found = m;
      }
    }
    if (!found) throw MathError("lift_to_Y: t_a eta_g - eta_g is not a character of the expected form");
    lifted.images[n.rank() + k] = st.s().add(st.embed_n(*found), a);
  }
  if (!is_automorphism(st.s(), lifted)) throw MathError("lift_to_Y: the lift is not an automorphism of S");
  if (!stabilizes(c, lifted)) throw MathError("lift_to_Y: the lift does not stabilize the class");
  return lifted;
}

/// G = S x| St for St acting on S through its keys (automorphisms of S).
struct SemidirectDatum {
  TorsorDatum datum;
  CrossedSystem system;
};

inline SemidirectDatum semidirect_datum(const RelCochain2& c, const FiniteGroup& st_group) {
  const auto& s = c.setting.s();
  std::vector<std::size_t> action(st_group.order() * s.size());
  for (FiniteGroup::Index x = 0; x < st_group.order(); ++x) {
    const auto a = decode_automorphism(s, st_group.key(x));
    for (std::size_t z = 0; z < s.size(); ++z) action[x * s.size() + z] = a.apply(s, z);
  }
  SemidirectDatum out{{}, semidirect_system(s, st_group, std::move(action))};
  out.datum.g = crossed_product(out.system);
  out.datum.pair = c;
  for (std::size_t z = 0; z < s.size(); ++z)
    out.datum.s_embed.push_back(out.datum.g.index_of(crossed_key(out.system, z, st_group.identity())));
  return out;
}

}  // namespace isocat
