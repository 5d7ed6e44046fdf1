#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isocat/algebra/linalg.hpp"
#include "isocat/algebra/monomial.hpp"
#include "isocat/cohomology/relative.hpp"
#include "isocat/group/finite_group.hpp"

namespace isocat {

/// K_sigma[N] with the S-action s . (c u_x) = t_s(c) gamma(s, x) u_x.
class ActedAlgebra {
 public:
  ActedAlgebra() = default;
  explicit ActedAlgebra(RelCochain2 pair) : pair_(std::move(pair)) {
    const auto rep = check_rel_cocycle(pair_);
    if (!rep.ok) throw MathError("acted algebra: the pair violates " + rep.equation);
    const auto m = pair_.setting.modulus();
    if (!values_in(pair_.sigma.values, m) || !values_in(pair_.gamma, m))
      throw MathError("acted algebra: cocycle values must lie in mu(K)");
  }

  const RelCochain2& pair() const { return pair_; }
  const GaloisSetting& setting() const { return pair_.setting; }
  int modulus() const { return static_cast<int>(setting().modulus()); }
  std::size_t dim() const { return setting().n().size(); }  // over K
  std::size_t dimension_over_k() const {
    return dim() * static_cast<std::size_t>(setting().field().degree() / setting().field().base_degree());
  }
  bool is_simple() const { return nondegenerate(pair_.sigma); }

  MonomialAlgebra algebra() const {
    MonomialAlgebra a;
    a.modulus = modulus();
    a.dim = dim();
    a.component.assign(dim(), 0);
    a.units = {0};
    const auto sigma = std::make_shared<Cochain2>(pair_.sigma);
    a.product = [sigma](std::size_t x, std::size_t y) -> std::optional<std::pair<std::size_t, QZ>> {
      return std::make_pair(sigma->group.add(x, y), (*sigma)(x, y));
    };
    return a;
  }

  /// Action of s in S.
  MonomialMap action(std::size_t s) const {
    MonomialMap f;
    f.target.resize(dim());
    f.phase.resize(dim());
    f.unit.assign(dim(), setting().unit(s));
    for (std::size_t x = 0; x < dim(); ++x) {
      f.target[x] = x;
      f.phase[x] = pair_.g(s, x);
    }
    return f;
  }

 private:
  RelCochain2 pair_;
};

/// Ind_S^G(B): functions f : G -> B with f(s g) = s . f(g), stored by their values on right coset
/// representatives r_j. Basis e_{j,z} (index j |N| + z) is the function with f(r_j) = u_z.
class InducedAlgebra {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// `s_embed[s]` is the element of G representing s in S.
  InducedAlgebra(ActedAlgebra b, FiniteGroup g, std::vector<FiniteGroup::Index> s_embed)
      : b_(std::move(b)), g_(std::move(g)), s_embed_(std::move(s_embed)) {
    const auto& s = b_.setting().s();
    if (s_embed_.size() != s.size()) throw MathError("induce: embedding of S has the wrong size");
    s_of_.assign(g_.order(), npos);
    for (std::size_t a = 0; a < s.size(); ++a) {
      if (s_of_[s_embed_[a]] != npos) throw MathError("induce: S does not embed injectively");
      s_of_[s_embed_[a]] = a;
    }
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t c = 0; c < s.size(); ++c)
        if (g_.mul(s_embed_[a], s_embed_[c]) != s_embed_[s.add(a, c)])
          throw MathError("induce: S is not a subgroup of G under the given embedding");
    coset_of_.assign(g_.order(), npos);
    for (FiniteGroup::Index x = 0; x < g_.order(); ++x) {
      if (coset_of_[x] != npos) continue;
      const std::size_t j = reps_.size();
      reps_.push_back(x);
      for (auto e : s_embed_) coset_of_[g_.mul(e, x)] = j;
    }
  }

  const ActedAlgebra& base() const { return b_; }
  const FiniteGroup& group() const { return g_; }
  const std::vector<FiniteGroup::Index>& s_embedding() const { return s_embed_; }
  const std::vector<FiniteGroup::Index>& representatives() const { return reps_; }
  std::size_t index() const { return reps_.size(); }
  std::size_t coset_of(FiniteGroup::Index g) const { return coset_of_[g]; }
  /// The S-index of g, or npos.
  std::size_t s_of(FiniteGroup::Index g) const { return s_of_[g]; }
  std::size_t dim() const { return reps_.size() * b_.dim(); }
  int modulus() const { return b_.modulus(); }

  MonomialAlgebra algebra() const {
    MonomialAlgebra a;
    a.modulus = modulus();
    a.dim = dim();
    const std::size_t nn = b_.dim();
    a.component.resize(dim());
    for (std::size_t i = 0; i < dim(); ++i) a.component[i] = i / nn;
    for (std::size_t j = 0; j < reps_.size(); ++j) a.units.push_back(j * nn);
    const auto sigma = std::make_shared<Cochain2>(b_.pair().sigma);
    a.product = [sigma, nn](std::size_t p, std::size_t q) -> std::optional<std::pair<std::size_t, QZ>> {
      if (p / nn != q / nn) return std::nullopt;
      const std::size_t x = p % nn, y = q % nn;
      return std::make_pair(p / nn * nn + sigma->group.add(x, y), (*sigma)(x, y));
    };
    return a;
  }

  /// (g . f)(r_i) = f(r_i g) = s . f(r_j) where r_i g = s r_j.
  MonomialMap action(FiniteGroup::Index g) const {
    const std::size_t nn = b_.dim();
    MonomialMap f;
    f.target.resize(dim());
    f.phase.resize(dim());
    f.unit.resize(dim());
    const auto ginv = g_.inverse(g);
    for (std::size_t j = 0; j < reps_.size(); ++j) {
      const std::size_t i = coset_of_[g_.mul(reps_[j], ginv)];
      const std::size_t s = s_of_[g_.mul(g_.mul(reps_[i], g), g_.inverse(reps_[j]))];
      for (std::size_t z = 0; z < nn; ++z) {
        f.target[j * nn + z] = i * nn + z;
        f.phase[j * nn + z] = b_.pair().g(s, z);
        f.unit[j * nn + z] = b_.setting().unit(s);
      }
    }
    return f;
  }

 private:
  ActedAlgebra b_;
  FiniteGroup g_;
  std::vector<FiniteGroup::Index> s_embed_;
  std::vector<std::size_t> s_of_;
  std::vector<std::size_t> coset_of_;
  std::vector<FiniteGroup::Index> reps_;
};

/// S = G: the acted algebra viewed over the abstract group S.
inline FiniteGroup abelian_as_group(const FiniteAbelianGroup& s) {
  auto sp = std::make_shared<FiniteAbelianGroup>(s);
  std::vector<FiniteGroup::Key> keys(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) keys[i] = i;
  std::vector<FiniteGroup::Key> gens;
  for (std::size_t i = 0; i < s.rank(); ++i) gens.push_back(s.generator(i));
  return FiniteGroup::from_elements(std::move(keys), 0, [sp](FiniteGroup::Key a, FiniteGroup::Key b) {
    return static_cast<FiniteGroup::Key>(sp->add(a, b));
  }, gens);
}

inline InducedAlgebra induce(const ActedAlgebra& b, const FiniteGroup& g, const std::vector<FiniteGroup::Index>& s_embed) {
  return InducedAlgebra(b, g, s_embed);
}

/// First failure of the action axioms on generators: every g acts by an algebra automorphism and
/// g . (h . a) = (g h) . a for all g and generators h.
template <class ActionFn>
std::optional<std::string> action_violation(const MonomialAlgebra& alg, const FiniteGroup& g, ActionFn&& act) {
  std::vector<MonomialMap> maps(g.order());
  for (FiniteGroup::Index i = 0; i < g.order(); ++i) maps[i] = act(i);
  if (maps[g.identity()] != MonomialMap::identity(alg.dim)) return "identity acts nontrivially";
  for (auto h : g.generators())
    if (auto v = automorphism_violation(alg, maps[h])) return "generator " + std::to_string(h) + ": " + *v;
  for (FiniteGroup::Index i = 0; i < g.order(); ++i)
    for (auto h : g.generators())
      if (compose(maps[i], maps[h], alg.modulus) != maps[g.mul(i, h)])
        return "not multiplicative at (" + std::to_string(i) + ", " + std::to_string(h) + ")";
  return std::nullopt;
}

/// Q-dimension of the center of a monomial algebra.
inline std::size_t center_dimension(const MonomialAlgebra& alg) {
  const int m = alg.modulus;
  const auto phi = static_cast<std::size_t>(alg.phi());
  const std::size_t d = alg.rational_dim();
  // Rows: for each monomial e_b and each output coordinate, the functional v -> (v e_b - e_b v).
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t b = 0; b < alg.dim; ++b) {
    std::vector<std::vector<std::int64_t>> block(d, std::vector<std::int64_t>(d, 0));
    for (std::size_t a = 0; a < alg.dim; ++a)
      for (std::size_t r = 0; r < phi; ++r) {
        const std::size_t col = a * phi + r;
        if (auto ab = alg.product(a, b)) {
          const auto& pr = detail::power_row(m, static_cast<std::int64_t>(r) + detail::exponent_of(ab->second, m));
          for (std::size_t j = 0; j < phi; ++j) block[ab->first * phi + j][col] += pr[j];
        }
        if (auto ba = alg.product(b, a)) {
          const auto& pr = detail::power_row(m, static_cast<std::int64_t>(r) + detail::exponent_of(ba->second, m));
          for (std::size_t j = 0; j < phi; ++j) block[ba->first * phi + j][col] -= pr[j];
        }
      }
    for (auto& row : block) rows.push_back(std::move(row));
  }
  // The center contains K in every component.
  std::size_t comps = 0;
  for (auto c : alg.component) comps = std::max(comps, c + 1);
  return d - integer_rank(rows, d, d - comps * phi);
}

struct GaloisCheck {
  bool galois = false;
  std::size_t invariant_dim = 0;  // over Q
  std::size_t expected_invariant_dim = 0;
  std::size_t can_rank = 0;
  std::size_t can_target = 0;
  std::string reason;
};

/// A^G = k and bijectivity of can : A (x)_k A -> Map(G, A), a (x) b -> (g -> a (g . b)).
///
/// Everything is computed over Q. Invariants: kernel of the stacked (g - 1), g a generator. Since
/// dim_k A = |G| makes both sides of can equal in size, bijectivity is surjectivity, i.e. the
/// Q-span of the vectors (b_i (g . b_j))_g has dimension |G| dim_Q A.
template <class ActionFn>
GaloisCheck check_galois(const MonomialAlgebra& alg, int base_degree, const FiniteGroup& g, ActionFn&& act,
                         std::size_t budget = kDefaultBudget) {
  GaloisCheck out;
  const int m = alg.modulus;
  const auto phi = static_cast<std::size_t>(alg.phi());
  const std::size_t d = alg.rational_dim();
  const std::size_t kq = static_cast<std::size_t>(base_degree);
  out.expected_invariant_dim = kq;
  out.can_target = g.order() * d;
  if (out.can_target * out.can_target > budget)
    throw BudgetExceeded("check_galois: |G| dim_Q A = " + std::to_string(out.can_target) + " exceeds the budget");

  std::vector<MonomialMap> maps(g.order());
  for (FiniteGroup::Index i = 0; i < g.order(); ++i) maps[i] = act(i);

  std::vector<std::vector<std::int64_t>> rows;
  for (auto h : g.generators()) {
    auto mat = rational_matrix(maps[h], m);
    for (std::size_t i = 0; i < d; ++i) mat[i][i] -= 1;
    for (auto& r : mat) rows.push_back(std::move(r));
  }
  out.invariant_dim = rows.empty() ? d : d - integer_rank(rows, d, d - std::min(d, kq));
  if (out.invariant_dim != kq) {
    out.reason = "invariants have Q-dimension " + std::to_string(out.invariant_dim) + ", expected " + std::to_string(kq);
    return out;
  }
  if (d != kq * g.order()) {
    out.reason = "dim_k A = " + std::to_string(d / kq) + " differs from |G| = " + std::to_string(g.order());
    return out;
  }

  auto can_row = [&](std::size_t a, std::size_t r, std::size_t b, std::size_t q) {
    std::vector<std::int64_t> row(out.can_target, 0);
    for (FiniteGroup::Index gi = 0; gi < g.order(); ++gi) {
      const auto& f = maps[gi];
      const std::int64_t k = f.unit[b] * static_cast<std::int64_t>(q) + detail::exponent_of(f.phase[b], m);
      const auto prod = alg.product(a, f.target[b]);
      if (!prod) continue;
      const auto& pr = detail::power_row(m, k + static_cast<std::int64_t>(r) + detail::exponent_of(prod->second, m));
      for (std::size_t j = 0; j < phi; ++j) row[(gi * alg.dim + prod->first) * phi + j] = pr[j];
    }
    return row;
  };

  Echelon<Fp> ech(out.can_target, Fp(0), Fp(1));
  for (std::size_t b = 0; b < alg.dim && ech.rank() < out.can_target; ++b)
    for (std::size_t q = 0; q < phi && ech.rank() < out.can_target; ++q)
      for (std::size_t a = 0; a < alg.dim && ech.rank() < out.can_target; ++a)
        for (std::size_t r = 0; r < phi && ech.rank() < out.can_target; ++r) {
          const auto row = can_row(a, r, b, q);
          std::vector<Fp> v(row.size());
          for (std::size_t c = 0; c < row.size(); ++c) v[c] = Fp(row[c]);
          ech.add(std::move(v));
        }
  out.can_rank = ech.rank();
  if (out.can_rank < out.can_target) {
    // Exact recount over Q.
    Echelon<Rational> q(out.can_target, Rational(0), Rational(1));
    for (std::size_t b = 0; b < alg.dim; ++b)
      for (std::size_t qq = 0; qq < phi; ++qq)
        for (std::size_t a = 0; a < alg.dim; ++a)
          for (std::size_t r = 0; r < phi; ++r) {
            const auto row = can_row(a, r, b, qq);
            std::vector<Rational> v(row.size());
            for (std::size_t c = 0; c < row.size(); ++c) v[c] = Rational(static_cast<long>(row[c]));
            q.add(std::move(v));
          }
    out.can_rank = q.rank();
  }
  if (out.can_rank < out.can_target) {
    out.reason = "can has rank " + std::to_string(out.can_rank) + " < " + std::to_string(out.can_target);
    return out;
  }
  out.galois = true;
  return out;
}

inline GaloisCheck check_galois(const ActedAlgebra& b, std::size_t budget = kDefaultBudget) {
  const auto s = abelian_as_group(b.setting().s());
  return check_galois(b.algebra(), b.setting().field().base_degree(), s,
                      [&](FiniteGroup::Index i) { return b.action(s.key(i)); }, budget);
}

inline GaloisCheck check_galois(const InducedAlgebra& a, std::size_t budget = kDefaultBudget) {
  return check_galois(a.algebra(), a.base().setting().field().base_degree(), a.group(),
                      [&](FiniteGroup::Index i) { return a.action(i); }, budget);
}

/// An isomorphism B' -> B of S-algebras, c u_z -> t_omega(c) zeta^{eta(z)} u_{psi z}.
struct SAlgebraIso {
  std::size_t omega = 0;  // element of Gamma
  Cochain1 eta;
  std::vector<std::size_t> psi;  // permutation of N

  MonomialMap as_map(const GaloisSetting& st) const {
    MonomialMap f;
    const std::size_t nn = st.n().size();
    f.target = psi;
    f.phase = eta.values;
    f.unit.assign(nn, st.unit_of_gamma(omega));
    return f;
  }
};

/// All S-algebra isomorphisms alpha : B^(phi) -> B, where B^(phi) is B with S acting through
/// s -> phi(s) (phi a permutation of S that is an automorphism). alpha(phi(s) . b) = s . alpha(b)
/// forces t_{phi(s)} = t_s and psi = (phi|_N)^{-1}; eta then solves
///   (t_omega sigma - sigma o psi, t_omega gamma(phi s, z) - gamma(s, psi z)) = coboundary(eta).
inline std::vector<SAlgebraIso> s_algebra_isomorphisms(const ActedAlgebra& b, const std::vector<std::size_t>& phi) {
  const auto& st = b.setting();
  const auto& s = st.s();
  const std::size_t nn = st.n().size();
  if (phi.size() != s.size()) throw MathError("s_algebra_isomorphisms: phi has the wrong size");
  for (std::size_t x = 0; x < s.size(); ++x)
    if (st.unit(phi[x]) != st.unit(x)) return {};
  std::vector<std::size_t> psi(nn, nn);
  for (std::size_t z = 0; z < nn; ++z) {
    if (phi[z] >= nn) return {};
    psi[phi[z]] = z;
  }
  const auto& c = b.pair();
  RelCochain2 a = c;
  a.sigma = pullback(c.sigma, psi);
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t z = 0; z < nn; ++z) a.g_at(x, z) = c.g(x, psi[z]);
  std::vector<SAlgebraIso> out;
  for (std::size_t w = 0; w < st.gamma().size(); ++w) {
    const std::int64_t t = st.unit_of_gamma(w);
    RelCochain2 bb = c;
    for (auto& v : bb.sigma.values) v = st.act_unit(t, v);
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t z = 0; z < nn; ++z) bb.g_at(x, z) = st.act_unit(t, c.g(phi[x], z));
    for (auto& eta : rel_witnesses(a, bb, st.modulus())) out.push_back({w, std::move(eta), psi});
  }
  return out;
}

struct AutSResult {
  MapGroup group;
  std::vector<SAlgebraIso> elements;  // aligned with group.maps
};

/// Aut_S(B): pairs (eta, omega) with coboundary(eta) = omega(sigma, gamma) - (sigma, gamma).
inline AutSResult aut_S(const ActedAlgebra& b) {
  if (!b.is_simple()) throw MathError("aut_S: B is not simple (sigma is degenerate)");
  const auto& st = b.setting();
  std::vector<std::size_t> id(st.s().size());
  for (std::size_t x = 0; x < id.size(); ++x) id[x] = x;
  auto isos = s_algebra_isomorphisms(b, id);
  std::vector<MonomialMap> maps;
  for (const auto& i : isos) maps.push_back(i.as_map(st));
  return {map_group(std::move(maps), st.modulus()), std::move(isos)};
}

struct AutGResult {
  MapGroup group;
  std::size_t aut_s_order = 0;         // kernel of Aut_G -> N_G(S)/S
  std::size_t image_order = 0;         // cosets xS admitting an isomorphism
  std::size_t normalizer_index = 0;    // |N_G(S) / S|
  std::vector<FiniteGroup::Index> coset_of_map;  // the representative x used for each map
};

/// Aut_G(Ind_S^G B) through F(alpha, x) f (g) = alpha(f(x^{-1} g)), x over N_G(S)/S and alpha an
/// S-algebra isomorphism B^(phi_x) -> B with phi_x(s) = x^{-1} s x.
inline AutGResult aut_G_induced(const InducedAlgebra& ind) {
  const auto& b = ind.base();
  if (!b.is_simple()) throw MathError("aut_G_induced: B is not simple (sigma is degenerate)");
  const auto& g = ind.group();
  const auto& st = b.setting();
  const auto& s = st.s();
  const std::size_t nn = st.n().size();
  const std::size_t big = ind.dim();
  const auto alg = ind.algebra();

  std::vector<FiniteGroup::Index> s_gens;
  for (std::size_t i = 0; i < s.rank(); ++i) s_gens.push_back(ind.s_embedding()[s.generator(i)]);
  std::vector<bool> done(g.order(), false);
  std::vector<FiniteGroup::Index> reps;
  for (FiniteGroup::Index x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    bool normalizes = true;
    for (auto e : s_gens)
      if (ind.s_of(g.conjugate(x, e)) == InducedAlgebra::npos) normalizes = false;
    if (!normalizes) continue;
    reps.push_back(x);
    for (auto e : ind.s_embedding()) done[g.mul(e, x)] = true;
  }

  AutGResult out;
  out.normalizer_index = reps.size();
  std::vector<MonomialMap> maps;
  for (auto x : reps) {
    const auto xinv = g.inverse(x);
    std::vector<std::size_t> phi(s.size());
    for (std::size_t a = 0; a < s.size(); ++a) phi[a] = ind.s_of(g.conjugate(xinv, ind.s_embedding()[a]));
    const auto isos = s_algebra_isomorphisms(b, phi);
    if (isos.empty()) continue;
    ++out.image_order;
    if (ind.s_of(x) != InducedAlgebra::npos) out.aut_s_order = isos.size();
    // Source e_{j,z} lands in coset i with x^{-1} r_i = s' r_j.
    std::vector<std::size_t> dest(ind.index());
    std::vector<std::size_t> sprime(ind.index());
    for (std::size_t j = 0; j < ind.index(); ++j) {
      const auto rj = ind.representatives()[j];
      dest[j] = ind.coset_of(g.mul(x, rj));
      const auto ri = ind.representatives()[dest[j]];
      sprime[j] = ind.s_of(g.mul(g.mul(xinv, ri), g.inverse(rj)));
    }
    for (const auto& iso : isos) {
      const std::int64_t tw = st.unit_of_gamma(iso.omega);
      MonomialMap f;
      f.target.resize(big);
      f.phase.resize(big);
      f.unit.resize(big);
      for (std::size_t j = 0; j < ind.index(); ++j)
        for (std::size_t z = 0; z < nn; ++z) {
          const std::size_t src = j * nn + z;
          f.target[src] = dest[j] * nn + iso.psi[z];
          f.unit[src] = mod_pos(tw * st.unit(sprime[j]), st.modulus());
          f.phase[src] = st.act_unit(tw, b.pair().g(sprime[j], z)) + iso.eta(z);
        }
      maps.push_back(std::move(f));
      out.coset_of_map.push_back(x);
    }
  }
  // Every F must be a G-equivariant algebra automorphism.
  std::vector<MonomialMap> gen_actions;
  for (auto h : g.generators()) gen_actions.push_back(ind.action(h));
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (auto v = automorphism_violation(alg, maps[i])) throw MathError("aut_G_induced: map " + std::to_string(i) + ": " + *v);
    for (const auto& ga : gen_actions)
      if (compose(maps[i], ga, st.modulus()) != compose(ga, maps[i], st.modulus()))
        throw MathError("aut_G_induced: map " + std::to_string(i) + " is not G-equivariant");
  }
  out.group = map_group(std::move(maps), st.modulus());
  return out;
}

}  // namespace isocat
