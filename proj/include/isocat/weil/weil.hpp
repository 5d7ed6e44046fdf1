#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "isocat/algebra/linalg.hpp"
#include "isocat/algebra/monomial.hpp"
#include "isocat/algebra/twisted.hpp"
#include "isocat/error.hpp"
#include "isocat/group/crossed.hpp"
#include "isocat/group/sylow.hpp"
#include "isocat/quadform/quadform.hpp"
#include "isocat/torsor/torsor.hpp"

namespace isocat {

/// The Weil action of Aut_S(B) #_theta St on B = K_sigma[N].
///
/// alpha[x] is the x-semilinear automorphism u_z -> zeta^{eta_x(z)} u_{x z}, i.e. alpha(s . b) =
/// x(s) . alpha(b). With it, ^x f = alpha_x f alpha_x^{-1}, theta(x, y) = alpha_x alpha_y
/// alpha_{xy}^{-1}, and (f, x) acts on B as f o alpha_x.
///
/// Aut_S(B) is abelian: characters of N times lifts of Gamma. Its elements are indexed through
/// the group `a` = N + Gamma, the N-coordinates naming the character sum_i j_i z_i / n_i.
struct WeilSystem {
  ActedAlgebra algebra;
  FiniteGroup st;  // keys encode automorphisms of S
  std::vector<SAlgebraIso> alpha;
  std::vector<MonomialMap> alpha_map, alpha_inv;
  FiniteAbelianGroup a;
  std::vector<MonomialMap> a_maps;
  std::unordered_map<MonomialMap, std::size_t, MonomialMapHash> a_index;
  CrossedSystem crossed;

  int modulus() const { return algebra.modulus(); }

  std::size_t a_of(const MonomialMap& f) const {
    const auto it = a_index.find(f);
    if (it == a_index.end()) throw MathError("map is not an S-algebra automorphism of B");
    return it->second;
  }
  /// The automorphism of B given by the crossed-product element with this key.
  MonomialMap element_map(FiniteGroup::Key key) const {
    const std::size_t nx = st.order();
    return compose(a_maps[key / nx], alpha_map[key % nx], modulus());
  }
};

namespace detail {

inline MonomialMap character_map(const FiniteAbelianGroup& n, std::size_t j) {
  MonomialMap f = MonomialMap::identity(n.size());
  for (std::size_t z = 0; z < n.size(); ++z) f.phase[z] = n.character(j, z);
  return f;
}

inline MonomialMap map_power(const MonomialMap& f, std::int64_t k, std::int64_t m) {
  MonomialMap r = MonomialMap::identity(f.size());
  for (std::int64_t i = 0; i < k; ++i) r = compose(f, r, m);
  return r;
}

}  // namespace detail

/// Weil system for the pair of `b` and a group St of automorphisms of S stabilizing its class.
/// With validate, the crossed-system axioms are checked by full enumeration.
inline WeilSystem weil_system(const RelCochain2& pair, const FiniteGroup& st, bool validate = true) {
  WeilSystem ws;
  ws.algebra = ActedAlgebra(pair);
  if (!ws.algebra.is_simple()) throw MathError("weil_system: sigma is degenerate");
  ws.st = st;
  const auto& gs = pair.setting;
  const auto& n = gs.n();
  const auto& s = gs.s();
  const auto m = gs.modulus();

  for (FiniteGroup::Index x = 0; x < st.order(); ++x) {
    const auto perm = decode_automorphism(s, st.key(x)).permutation(s);
    std::vector<std::size_t> phi(s.size());
    for (std::size_t z = 0; z < s.size(); ++z) phi[perm[z]] = z;
    auto isos = s_algebra_isomorphisms(ws.algebra, phi);
    if (isos.empty()) throw MathError("weil_system: element " + std::to_string(x) + " of St does not stabilize the class");
    ws.alpha.push_back(isos.front());
    ws.alpha_map.push_back(isos.front().as_map(gs));
    ws.alpha_inv.push_back(inverse(ws.alpha_map.back(), m));
  }

  // Aut_S(B) = characters + lifts of the Gamma generators of the right order.
  const auto& gm = gs.gamma();
  std::vector<std::size_t> id(s.size());
  for (std::size_t z = 0; z < s.size(); ++z) id[z] = z;
  const auto all = s_algebra_isomorphisms(ws.algebra, id);
  std::vector<MonomialMap> lifts;
  for (std::size_t k = 0; k < gm.rank(); ++k) {
    const auto target = gs.unit_of_gamma(gm.generator(k));
    const auto ord = gm.orders()[k];
    bool found = false;
    for (const auto& iso : all) {
      if (gs.unit_of_gamma(iso.omega) != target) continue;
      const auto f = iso.as_map(gs);
      if (detail::map_power(f, ord, m) == MonomialMap::identity(n.size())) {
        lifts.push_back(f);
        found = true;
        break;
      }
    }
    if (!found) throw MathError("weil_system: Aut_S(B) does not split over Gal(K|k)");
  }
  ws.a = n.direct_sum(gm);
  ws.a_maps.resize(ws.a.size());
  for (std::size_t idx = 0; idx < ws.a.size(); ++idx) {
    const auto c = ws.a.coords(idx);
    std::vector<std::int64_t> jc(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n.rank()));
    MonomialMap f = detail::character_map(n, n.index(jc));
    for (std::size_t k = 0; k < gm.rank(); ++k) f = compose(f, detail::map_power(lifts[k], c[n.rank() + k], m), m);
    if (!ws.a_index.emplace(f, idx).second) throw MathError("weil_system: Aut_S(B) coordinates are not injective");
    ws.a_maps[idx] = std::move(f);
  }
  if (ws.a_maps.size() != all.size()) throw MathError("weil_system: Aut_S(B) is not N-hat + Gamma");

  std::vector<std::size_t> action(st.order() * ws.a.size());
  std::vector<std::size_t> theta(st.order() * st.order());
  for (FiniteGroup::Index x = 0; x < st.order(); ++x) {
    for (std::size_t f = 0; f < ws.a.size(); ++f)
      action[x * ws.a.size() + f] = ws.a_of(compose(compose(ws.alpha_map[x], ws.a_maps[f], m), ws.alpha_inv[x], m));
    for (FiniteGroup::Index y = 0; y < st.order(); ++y)
      theta[static_cast<std::size_t>(x) * st.order() + y] =
          ws.a_of(compose(compose(ws.alpha_map[x], ws.alpha_map[y], m), ws.alpha_inv[st.mul(x, y)], m));
  }
  ws.crossed = CrossedSystem{ws.a, st, std::move(action), std::move(theta)};
  if (validate)
    if (auto v = crossed_violation(ws.crossed)) throw MathError("weil_system: crossed-system axiom fails: " + v->axiom);
  return ws;
}

/// Aut_S(B) #_theta St.
inline FiniteGroup weil_group(const WeilSystem& ws) { return crossed_product(ws.crossed, false); }

/// Aut_S(B) x| St with the same action.
inline FiniteGroup weil_semidirect_group(const WeilSystem& ws) {
  return crossed_product(semidirect_system(ws.a, ws.st, ws.crossed.action), false);
}

struct IsocatPair {
  WeilSystem system;
  FiniteGroup semidirect, crossed;
};

inline IsocatPair build_isocat_pair(const RelCochain2& pair, const FiniteGroup& st, bool validate = true) {
  IsocatPair out{weil_system(pair, st, validate), {}, {}};
  out.semidirect = weil_semidirect_group(out.system);
  out.crossed = weil_group(out.system);
  return out;
}

struct ActionReport {
  std::size_t elements_checked = 0;
  std::size_t pairs_checked = 0;
  bool exhaustive = false;
  std::optional<std::string> violation;
};

/// Checks that key -> element_map(key) is a homomorphism into the algebra automorphisms of B,
/// on monomial maps and, with `rational`, on the Q-matrices of B. All pairs when |G| <= full_limit,
/// otherwise `samples` seeded random pairs.
inline ActionReport weil_action_check(const WeilSystem& ws, const FiniteGroup& g, bool rational = false,
                                      std::size_t full_limit = 1024, std::size_t samples = 10000,
                                      std::uint64_t seed = 1) {
  ActionReport rep;
  const auto m = ws.modulus();
  const auto alg = ws.algebra.algebra();
  std::vector<MonomialMap> maps(g.order());
  std::vector<std::vector<std::vector<std::int64_t>>> mats;
  for (FiniteGroup::Index i = 0; i < g.order(); ++i) {
    maps[i] = ws.element_map(g.key(i));
    if (auto v = automorphism_violation(alg, maps[i])) {
      rep.violation = "element " + std::to_string(i) + ": " + *v;
      return rep;
    }
    if (rational) mats.push_back(rational_matrix(maps[i], m));
  }
  rep.elements_checked = g.order();
  if (maps[g.identity()] != MonomialMap::identity(alg.dim)) {
    rep.violation = "identity does not act trivially";
    return rep;
  }
  auto check = [&](FiniteGroup::Index a, FiniteGroup::Index b) -> bool {
    const auto ab = g.mul(a, b);
    if (compose(maps[a], maps[b], m) != maps[ab]) {
      rep.violation = "action is not multiplicative at (" + std::to_string(a) + ", " + std::to_string(b) + ")";
      return false;
    }
    if (rational) {
      const auto& x = mats[a];
      const auto& y = mats[b];
      const auto& z = mats[ab];
      const std::size_t d = x.size();
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
          std::int64_t acc = 0;
          for (std::size_t k = 0; k < d; ++k) acc += x[r][k] * y[k][c];
          if (acc != z[r][c]) {
            rep.violation = "rational matrices are not multiplicative at (" + std::to_string(a) + ", " +
                            std::to_string(b) + ")";
            return false;
          }
        }
    }
    ++rep.pairs_checked;
    return true;
  };
  if (g.order() <= full_limit) {
    rep.exhaustive = true;
    for (FiniteGroup::Index a = 0; a < g.order(); ++a)
      for (FiniteGroup::Index b = 0; b < g.order(); ++b)
        if (!check(a, b)) return rep;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<FiniteGroup::Index> pick(0, static_cast<FiniteGroup::Index>(g.order() - 1));
    for (std::size_t k = 0; k < samples; ++k) {
      const auto a = pick(rng);
      const auto b = pick(rng);
      if (!check(a, b)) return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Matrix Weil representation.

/// B acting on a module of dimension |U| for a Lagrangian U: u_v t_w = zeta^{phase[v][w]} t_{perm[v][w]}.
struct LagrangianModule {
  int modulus = 2;
  std::vector<std::size_t> lagrangian;  // elements of U in N
  Cochain1 lambda;                      // on U, indexed like `lagrangian`
  std::vector<std::size_t> reps;        // coset representatives; t_w for w in reps
  std::vector<std::vector<std::size_t>> perm;
  std::vector<std::vector<QZ>> phase;

  std::size_t dim() const { return reps.size(); }

  using Matrix = std::vector<std::vector<Cyclotomic>>;
  Matrix matrix(std::size_t v) const {
    Matrix r(dim(), std::vector<Cyclotomic>(dim(), Cyclotomic::zero(modulus)));
    for (std::size_t w = 0; w < dim(); ++w) r[perm[v][w]][w] = Cyclotomic::embed(modulus, phase[v][w]);
    return r;
  }
};

struct ModuleSearch {
  std::optional<LagrangianModule> module;
  std::string reason;  // why no module was produced
};

namespace detail {

/// Isotropic subgroups built as direct sums of cyclic pieces; calls `visit(gens)` on every one of
/// order sqrt|N| until it returns true.
inline bool lagrangian_dfs(const Bicharacter& w, std::vector<bool>& span, std::size_t span_size,
                           std::vector<std::size_t>& gens, std::set<std::vector<bool>>& seen,
                           const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  const auto& n = w.group;
  if (span_size * span_size == n.size()) return visit(gens);
  if (!seen.insert(span).second) return false;
  for (std::size_t u = 1; u < n.size(); ++u) {
    if (span[u]) continue;
    bool ok = true;
    for (std::size_t x = 0; x < n.size() && ok; ++x)
      if (span[x] && !w(u, x).is_zero()) ok = false;
    if (!ok) continue;
    const auto ord = n.element_order(u);
    for (std::int64_t k = 1; k < ord && ok; ++k)
      if (span[n.scale(u, k)]) ok = false;
    if (!ok) continue;
    std::vector<bool> next(n.size(), false);
    std::size_t size = 0;
    for (std::size_t x = 0; x < n.size(); ++x)
      if (span[x])
        for (std::int64_t k = 0; k < ord; ++k) {
          const auto y = n.add(x, n.scale(u, k));
          if (!next[y]) {
            next[y] = true;
            ++size;
          }
        }
    if (size * size > n.size()) continue;
    gens.push_back(u);
    if (lagrangian_dfs(w, next, size, gens, seen, visit)) return true;
    gens.pop_back();
  }
  return false;
}

}  // namespace detail

/// Search for a Lagrangian U and a character lambda of K_sigma[U] with values in mu(K), then
/// build the induced module. Verifies the action axioms and that the matrices span M_|U|(K).
inline ModuleSearch lagrangian_module(const ActedAlgebra& b, std::size_t max_candidates = 256) {
  ModuleSearch out;
  const auto& sigma = b.pair().sigma;
  const auto& n = sigma.group;
  const int m = b.modulus();
  const auto w = alt(sigma);
  std::vector<bool> span(n.size(), false);
  span[0] = true;
  std::vector<std::size_t> gens;
  std::set<std::vector<bool>> seen;
  std::size_t tried = 0;
  bool any = false;
  detail::lagrangian_dfs(w, span, 1, gens, seen, [&](const std::vector<std::size_t>& g) {
    any = true;
    ++tried;
    std::vector<std::int64_t> orders;
    for (auto u : g) orders.push_back(n.element_order(u));
    const FiniteAbelianGroup ug(orders);
    std::vector<std::size_t> embed(ug.size());
    for (std::size_t a = 0; a < ug.size(); ++a) {
      std::size_t x = 0;
      for (std::size_t i = 0; i < g.size(); ++i) x = n.add(x, n.scale(g[i], ug.coord(a, i)));
      embed[a] = x;
    }
    Cochain2 su(ug);
    for (std::size_t a = 0; a < ug.size(); ++a)
      for (std::size_t c = 0; c < ug.size(); ++c) su.values[a * ug.size() + c] = sigma(embed[a], embed[c]);
    const Cochain1 base = symmetric_coboundary_solve(su);
    if (delta1(base) != su) throw MathError("lagrangian_module: sigma restricted to U is not a coboundary");
    for (std::size_t chi = 0; chi < ug.size(); ++chi) {
      Cochain1 lam = add_character(base, chi);
      if (!values_in(lam.values, m)) continue;
      LagrangianModule mod;
      mod.modulus = m;
      mod.lagrangian = embed;
      mod.lambda = std::move(lam);
      out.module = std::move(mod);
      return true;
    }
    return tried >= max_candidates;
  });
  if (!out.module) {
    out.reason = any ? "matrices unavailable over this field: sigma does not split on any Lagrangian with values in mu(K)"
                     : "no Lagrangian subgroup exists";
    return out;
  }
  auto& mod = *out.module;
  std::vector<std::size_t> u_index(n.size(), static_cast<std::size_t>(-1));
  for (std::size_t a = 0; a < mod.lagrangian.size(); ++a) u_index[mod.lagrangian[a]] = a;
  std::vector<std::size_t> coset(n.size(), static_cast<std::size_t>(-1));
  for (std::size_t x = 0; x < n.size(); ++x) {
    if (coset[x] != static_cast<std::size_t>(-1)) continue;
    for (auto u : mod.lagrangian) coset[n.add(x, u)] = mod.reps.size();
    mod.reps.push_back(x);
  }
  const std::size_t d = mod.reps.size();
  mod.perm.assign(n.size(), std::vector<std::size_t>(d));
  mod.phase.assign(n.size(), std::vector<QZ>(d));
  for (std::size_t v = 0; v < n.size(); ++v)
    for (std::size_t i = 0; i < d; ++i) {
      const auto wv = mod.reps[i];
      const auto sum = n.add(v, wv);
      const auto j = coset[sum];
      const auto wp = mod.reps[j];
      const auto x = n.sub(sum, wp);
      mod.perm[v][i] = j;
      mod.phase[v][i] = sigma(v, wv) - sigma(wp, x) + mod.lambda(u_index[x]);
    }
  // u_v u_v' = sigma(v, v') u_{v+v'} on the module, and u_0 = 1.
  for (std::size_t i = 0; i < d; ++i)
    if (mod.perm[0][i] != i || !mod.phase[0][i].is_zero()) throw MathError("lagrangian_module: u_0 is not the identity");
  for (std::size_t v = 0; v < n.size(); ++v)
    for (std::size_t v2 = 0; v2 < n.size(); ++v2)
      for (std::size_t i = 0; i < d; ++i) {
        const auto j = mod.perm[v2][i];
        const auto vv = n.add(v, v2);
        if (mod.perm[v][j] != mod.perm[vv][i] ||
            mod.phase[v][j] + mod.phase[v2][i] != sigma(v, v2) + mod.phase[vv][i])
          throw MathError("lagrangian_module: module axioms fail at (" + std::to_string(v) + ", " + std::to_string(v2) + ")");
      }
  // Simplicity: the matrices span all d x d matrices.
  Echelon<Cyclotomic> span_m(d * d, Cyclotomic::zero(m), Cyclotomic::one(m));
  for (std::size_t v = 0; v < n.size(); ++v) {
    std::vector<Cyclotomic> row(d * d, Cyclotomic::zero(m));
    for (std::size_t i = 0; i < d; ++i) row[mod.perm[v][i] * d + i] = Cyclotomic::embed(m, mod.phase[v][i]);
    span_m.add(std::move(row));
  }
  if (span_m.rank() != d * d) throw MathError("lagrangian_module: the module is not simple");
  return out;
}

using CycMatrix = std::vector<std::vector<Cyclotomic>>;

inline CycMatrix mat_mul(const CycMatrix& a, const CycMatrix& b) {
  const std::size_t d = a.size();
  const int m = a[0][0].modulus();
  CycMatrix r(d, std::vector<Cyclotomic>(d, Cyclotomic::zero(m)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (!b[k][j].is_zero()) r[i][j] = r[i][j] + a[i][k] * b[k][j];
    }
  return r;
}

struct Intertwiner {
  CycMatrix rho;
  std::size_t solution_dim = 0;
};

/// rho with rho u_v = f(u_v) rho for all v (generators suffice), for a K-linear automorphism f of B.
/// Normalized so that the first nonzero entry in row-major order is 1.
inline Intertwiner intertwiner(const LagrangianModule& mod, const MonomialMap& f, const FiniteAbelianGroup& n) {
  for (auto t : f.unit)
    if (t != 1) throw MathError("intertwiner: the automorphism is not K-linear");
  const std::size_t d = mod.dim();
  const int m = mod.modulus;
  std::vector<std::vector<Cyclotomic>> rows;
  for (std::size_t gi = 0; gi < n.rank(); ++gi) {
    const std::size_t v = n.generator(gi);
    const std::size_t v2 = f.target[v];
    std::vector<std::size_t> inv2(d);
    for (std::size_t k = 0; k < d; ++k) inv2[mod.perm[v2][k]] = k;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t w = 0; w < d; ++w) {
        // (rho M_v)[i][w] - (F M_{v2} rho)[i][w] = 0
        std::vector<Cyclotomic> row(d * d, Cyclotomic::zero(m));
        row[i * d + mod.perm[v][w]] = Cyclotomic::embed(m, mod.phase[v][w]);
        const std::size_t k = inv2[i];
        row[k * d + w] = row[k * d + w] - Cyclotomic::embed(m, f.phase[v] + mod.phase[v2][k]);
        rows.push_back(std::move(row));
      }
  }
  const auto ker = cyclotomic_nullspace(rows, d * d, m);
  Intertwiner out;
  out.solution_dim = ker.size();
  if (ker.size() != 1) return out;
  const auto& vec = ker.front();
  Cyclotomic lead = Cyclotomic::zero(m);
  for (const auto& e : vec)
    if (!e.is_zero()) {
      lead = e;
      break;
    }
  const auto inv = lead.inverse();
  out.rho.assign(d, std::vector<Cyclotomic>(d, Cyclotomic::zero(m)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out.rho[i][j] = vec[i * d + j] * inv;
  return out;
}

struct WeilRep {
  LagrangianModule module;
  std::vector<CycMatrix> rho;  // per St index
  std::vector<std::size_t> solution_dims;
};

/// rho_x for every x in St through alpha_x.
inline WeilRep weil_matrices(const WeilSystem& ws, const LagrangianModule& mod) {
  WeilRep rep{mod, {}, {}};
  const auto& n = ws.algebra.setting().n();
  for (FiniteGroup::Index x = 0; x < ws.st.order(); ++x) {
    auto it = intertwiner(mod, ws.alpha_map[x], n);
    rep.solution_dims.push_back(it.solution_dim);
    if (it.solution_dim != 1)
      throw MathError("weil_matrices: solution space of element " + std::to_string(x) + " has dimension " +
                      std::to_string(it.solution_dim));
    rep.rho.push_back(std::move(it.rho));
  }
  return rep;
}

/// c with a = c b, if a is a scalar multiple of b.
inline std::optional<Cyclotomic> scalar_ratio(const CycMatrix& a, const CycMatrix& b) {
  const std::size_t d = a.size();
  std::optional<Cyclotomic> c;
  for (std::size_t i = 0; i < d && !c; ++i)
    for (std::size_t j = 0; j < d && !c; ++j)
      if (!b[i][j].is_zero()) c = a[i][j] / b[i][j];
  if (!c || c->is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!(a[i][j] == *c * b[i][j])) return std::nullopt;
  return c;
}

/// c(x, y) with rho_x rho_y = c(x, y) rho_{theta(x,y)} rho_{xy}, indexed [x * |St| + y].
inline std::vector<Cyclotomic> weil_cocycle(const WeilSystem& ws, const WeilRep& rep) {
  const auto& n = ws.algebra.setting().n();
  const std::size_t ns = ws.st.order();
  std::unordered_map<std::size_t, CycMatrix> theta_rho;
  std::vector<Cyclotomic> c;
  c.reserve(ns * ns);
  for (FiniteGroup::Index x = 0; x < ns; ++x)
    for (FiniteGroup::Index y = 0; y < ns; ++y) {
      const auto t = ws.crossed.th(x, y);
      auto it = theta_rho.find(t);
      if (it == theta_rho.end()) {
        auto r = intertwiner(rep.module, ws.a_maps[t], n);
        if (r.solution_dim != 1) throw MathError("weil_cocycle: theta value is not inner");
        it = theta_rho.emplace(t, std::move(r.rho)).first;
      }
      const auto lhs = mat_mul(rep.rho[x], rep.rho[y]);
      const auto rhs = mat_mul(it->second, rep.rho[ws.st.mul(x, y)]);
      auto r = scalar_ratio(lhs, rhs);
      if (!r) throw MathError("weil_cocycle: not projective at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
      c.push_back(std::move(*r));
    }
  return c;
}

// ---------------------------------------------------------------------------------------------
// Named data.

enum class StRestriction { full, sylow2, omega };

struct NamedDatum {
  RelCochain2 pair;
  FiniteGroup st;
};

namespace detail {

inline FiniteGroup restrict_st(const FiniteAbelianGroup& v, const FiniteGroup& g, StRestriction r) {
  switch (r) {
    case StRestriction::full:
      return g;
    case StRestriction::sylow2:
      return sylow2(g);
    case StRestriction::omega:
      return dickson_omega(v, g);
  }
  return g;
}

}  // namespace detail

/// ASp(V, omega) for odd exponent (K = Q(zeta_e), sigma = omega / 2, Sp-invariant) and APs_k(V)
/// for exponent 2 (K = Q(i) with trivial Galois group, sigma = alt_section(omega)).
inline NamedDatum affine_symplectic_datum(const SymplecticModule& sm, std::size_t budget = kDefaultBudget) {
  require_symplectic(sm);
  const auto e = sm.v.exponent();
  Cochain2 sigma;
  int modulus = 0;
  if (e % 2 == 1) {
    sigma = sm.omega;
    for (auto& x : sigma.values) x = x.times((e + 1) / 2);
    modulus = static_cast<int>(e);
  } else if (e == 2) {
    sigma = alt_section(sm.omega);
    modulus = 4;
  } else {
    throw MathError("affine_symplectic_datum: exponent must be odd or 2");
  }
  const GaloisSetting st(sm.v, CyclotomicField(modulus, {}));
  auto pair = torsor_pair(st, sigma);
  auto sp = symplectic_group(sm, budget);
  return {pair, verified_stabilizer_subgroup(pair, sm.v, sp)};
}

/// Ps(V, q) over k = Q with sigma the trace section of q; St = O(V, q), optionally restricted.
inline NamedDatum pseudo_symplectic_datum(const QuadraticModule& qm, StRestriction r = StRestriction::full,
                                          std::size_t budget = kDefaultBudget) {
  if (auto v = quadratic_violation(qm)) throw MathError("pseudo_symplectic_datum: " + *v);
  const auto b = quad_trace_section(qm);
  const auto m = static_cast<int>(qm.v.exponent());
  const GaloisSetting st(qm.v, CyclotomicField(m, {}));
  auto pair = torsor_pair(st, b);
  const auto o = detail::restrict_st(qm.v, orthogonal_group(qm, budget), r);
  return {pair, verified_stabilizer_subgroup(pair, qm.v, o)};
}

/// Lifts of Sp(V, Alt sigma) to Aut_N(S) through lift_to_Y; throws unless they form a copy of Sp.
inline FiniteGroup semireal_stabilizer(const RelCochain2& pair, std::size_t budget = kDefaultBudget) {
  const auto& st = pair.setting;
  const SymplecticModule sm{st.n(), alt(pair.sigma)};
  require_symplectic(sm);
  const auto sp = symplectic_group(sm, budget);
  std::vector<AbelianAutomorphism> lifted;
  for (FiniteGroup::Index i = 0; i < sp.order(); ++i) lifted.push_back(lift_to_Y(pair, decode_automorphism(sm.v, sp.key(i))));
  std::vector<AbelianAutomorphism> gens;
  for (auto g : sp.generators()) gens.push_back(lifted[g]);
  auto group = automorphism_group(st.s(), gens, budget);
  if (group.order() != sp.order()) throw MathError("semireal_stabilizer: lifts do not form a copy of Sp");
  for (const auto& g : lifted)
    if (!group.contains(encode(st.s(), g))) throw MathError("semireal_stabilizer: lifts are not closed");
  return group;
}

/// The semi-real datum on F_2^d: K = Q(i) over k = Q, sigma = alt_section(omega), St the lifts of Sp.
inline NamedDatum semireal_datum(const SymplecticModule& sm, std::size_t budget = kDefaultBudget) {
  require_symplectic(sm);
  if (sm.v.exponent() != 2) throw MathError("semireal_datum: V must have exponent 2");
  const GaloisSetting st(sm.v, CyclotomicField(4, {3}));
  auto pair = torsor_pair(st, alt_section(sm.omega));
  return {pair, semireal_stabilizer(pair, budget)};
}

/// Standard symplectic F_2^{2k} (hyperbolic pairs e_{2i}, e_{2i+1}).
inline SymplecticModule standard_f2_symplectic(int dim) { return trace_symplectic(standard_symplectic(2, 1, dim)); }

}  // namespace isocat
