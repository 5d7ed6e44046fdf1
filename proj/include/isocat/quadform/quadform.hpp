#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isocat/cohomology/cochain.hpp"
#include "isocat/error.hpp"
#include "isocat/group/abelian.hpp"
#include "isocat/group/automorphisms.hpp"
#include "isocat/group/finite_group.hpp"

namespace isocat {

/// GF(p^n) with elements 0..q-1 encoding polynomials in base p (low degree first), modulo the
/// lexicographically least monic irreducible of degree n.
class FiniteField {
 public:
  FiniteField() : FiniteField(2, 1) {}
  FiniteField(int p, int n) : p_(p), n_(n) {
    if (p < 2 || n < 1) throw MathError("finite field needs p >= 2 and n >= 1");
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw MathError(std::to_string(p) + " is not prime");
    q_ = 1;
    for (int i = 0; i < n; ++i) q_ *= p;
    if (q_ > 1024) throw BudgetExceeded("finite field of order > 1024");
    modulus_ = find_irreducible();
    mul_.assign(static_cast<std::size_t>(q_ * q_), 0);
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) mul_[static_cast<std::size_t>(a * q_ + b)] = mul_slow(a, b);
  }

  int p() const { return p_; }
  int n() const { return n_; }
  int q() const { return q_; }
  const std::vector<int>& modulus_polynomial() const { return modulus_; }

  int add(int a, int b) const {
    int r = 0, w = 1;
    for (int i = 0; i < n_; ++i, a /= p_, b /= p_, w *= p_) r += ((a % p_ + b % p_) % p_) * w;
    return r;
  }
  int neg(int a) const {
    int r = 0, w = 1;
    for (int i = 0; i < n_; ++i, a /= p_, w *= p_) r += ((p_ - a % p_) % p_) * w;
    return r;
  }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a * q_ + b)]; }
  int pow(int a, std::int64_t e) const {
    int r = 1;
    for (std::int64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  /// Tr(a) = a + a^p + ... + a^{p^{n-1}}, an element of the prime field (0 <= result < p).
  int trace(int a) const {
    int t = 0, x = a;
    for (int i = 0; i < n_; ++i) {
      t = add(t, x);
      x = pow(x, p_);
    }
    if (t >= p_) throw MathError("trace left the prime field");
    return t;
  }

 private:
  using Poly = std::vector<int>;  // low degree first, coefficients mod p

  Poly poly_mod(Poly a, const Poly& m) const {
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
      const int c = a.back();
      if (c != 0)
        for (std::size_t j = 0; j <= dm; ++j)
          a[a.size() - 1 - dm + j] = ((a[a.size() - 1 - dm + j] - c * m[j]) % p_ + p_) % p_;
      a.pop_back();
    }
    return a;
  }
  std::vector<int> find_irreducible() const {
    if (n_ == 1) return {0, 1};
    for (int code = 0; code < q_; ++code) {
      Poly f(static_cast<std::size_t>(n_) + 1, 0);
      int c = code;
      for (int i = 0; i < n_; ++i, c /= p_) f[static_cast<std::size_t>(i)] = c % p_;
      f[static_cast<std::size_t>(n_)] = 1;
      bool irreducible = f[0] != 0;
      for (int d = 1; irreducible && 2 * d <= n_; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p_;
        for (int g = 0; g < count && irreducible; ++g) {
          Poly h(static_cast<std::size_t>(d) + 1, 0);
          int gg = g;
          for (int i = 0; i < d; ++i, gg /= p_) h[static_cast<std::size_t>(i)] = gg % p_;
          h[static_cast<std::size_t>(d)] = 1;
          const Poly r = poly_mod(f, h);
          bool zero = true;
          for (int x : r) zero = zero && x == 0;
          if (zero) irreducible = false;
        }
      }
      if (irreducible) return f;
    }
    throw MathError("no irreducible polynomial found");
  }
  int mul_slow(int a, int b) const {
    Poly pa(static_cast<std::size_t>(n_)), pb(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i, a /= p_, b /= p_) {
      pa[static_cast<std::size_t>(i)] = a % p_;
      pb[static_cast<std::size_t>(i)] = b % p_;
    }
    Poly prod(static_cast<std::size_t>(2 * n_), 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        prod[static_cast<std::size_t>(i + j)] = (prod[static_cast<std::size_t>(i + j)] + pa[static_cast<std::size_t>(i)] * pb[static_cast<std::size_t>(j)]) % p_;
    const Poly r = poly_mod(prod, modulus_);
    int out = 0, w = 1;
    for (std::size_t i = 0; i < r.size(); ++i, w *= p_) out += r[i] * w;
    return out;
  }

  int p_, n_, q_ = 1;
  std::vector<int> modulus_;
  std::vector<int> mul_;
};

/// A form on F_q^dim, given by a coefficient matrix of field elements.
///   symplectic: <v, w> = sum_ij v_i C_ij w_j, C alternating.
///   quadratic:  q(v) = sum_{i <= j} C_ij v_i v_j, C upper triangular.
struct LinearFormSpace {
  enum class Kind { symplectic, quadratic };
  int p = 2;
  int n = 1;
  int dim = 2;
  Kind kind = Kind::symplectic;
  std::vector<std::vector<int>> coeffs;
};

/// V = F_q^dim viewed as (Z/p)^{n dim}; the index of a vector has base-q digits v_0, v_1, ...
struct FormContext {
  FiniteField field;
  FiniteAbelianGroup v;
  int dim = 0;

  explicit FormContext(const LinearFormSpace& s)
      : field(s.p, s.n), v(std::vector<std::int64_t>(static_cast<std::size_t>(s.n * s.dim), s.p)), dim(s.dim) {}
  int component(std::size_t x, int i) const {
    for (int k = 0; k < i; ++k) x /= static_cast<std::size_t>(field.q());
    return static_cast<int>(x % static_cast<std::size_t>(field.q()));
  }
};

struct SymplecticModule {
  FiniteAbelianGroup v;
  Bicharacter omega;
};

struct QuadraticModule {
  FiniteAbelianGroup v;
  std::vector<QZ> q;

  QZ operator()(std::size_t x) const { return q[x]; }
  /// omega_q(x, y) = q(x + y) - q(x) - q(y).
  Bicharacter polar() const {
    Bicharacter b(v);
    for (std::size_t x = 0; x < v.size(); ++x)
      for (std::size_t y = 0; y < v.size(); ++y) b.at(x, y) = q[v.add(x, y)] - q[x] - q[y];
    return b;
  }
};

inline std::optional<std::string> quadratic_violation(const QuadraticModule& m, bool require_nondegenerate = true) {
  if (m.q.size() != m.v.size()) return "table has the wrong size";
  if (!m.q[0].is_zero()) return "q(0) != 0";
  for (std::size_t x = 0; x < m.v.size(); ++x)
    if (m.q[m.v.neg(x)] != m.q[x]) return "q(-x) != q(x) at " + std::to_string(x);
  const auto b = m.polar();
  if (!is_bicharacter(b)) return "polar form is not a bicharacter";
  if (require_nondegenerate && radical(b).size() > 1) return "polar form is degenerate";
  return std::nullopt;
}

inline void require_symplectic(const SymplecticModule& m) {
  if (!is_skew(m.omega)) throw MathError("symplectic module: form is not skew-symmetric");
  if (radical(m.omega).size() > 1) throw MathError("symplectic module: form is degenerate");
}

/// omega(v, w) = Tr(<v, w>) / p.
inline SymplecticModule trace_symplectic(const LinearFormSpace& s) {
  if (s.kind != LinearFormSpace::Kind::symplectic) throw MathError("trace_symplectic expects a symplectic form");
  const FormContext ctx(s);
  const auto& f = ctx.field;
  if (static_cast<int>(s.coeffs.size()) != s.dim) throw MathError("coefficient matrix has the wrong size");
  for (int i = 0; i < s.dim; ++i) {
    if (s.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 0) throw MathError("form is not alternating");
    for (int j = 0; j < s.dim; ++j)
      if (f.add(s.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], s.coeffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) != 0)
        throw MathError("form is not alternating");
  }
  SymplecticModule m{ctx.v, Bicharacter(ctx.v)};
  for (std::size_t x = 0; x < ctx.v.size(); ++x)
    for (std::size_t y = 0; y < ctx.v.size(); ++y) {
      int acc = 0;
      for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j) {
          const int c = s.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          if (c != 0) acc = f.add(acc, f.mul(f.mul(ctx.component(x, i), c), ctx.component(y, j)));
        }
      m.omega.at(x, y) = QZ(f.trace(acc), s.p);
    }
  if (radical(m.omega).size() > 1) throw MathError("trace_symplectic: the form is degenerate");
  return m;
}

/// q^(v) = Tr(q(v)) / p.
inline QuadraticModule trace_quadratic(const LinearFormSpace& s) {
  if (s.kind != LinearFormSpace::Kind::quadratic) throw MathError("trace_quadratic expects a quadratic form");
  const FormContext ctx(s);
  const auto& f = ctx.field;
  if (static_cast<int>(s.coeffs.size()) != s.dim) throw MathError("coefficient matrix has the wrong size");
  for (int i = 0; i < s.dim; ++i)
    for (int j = 0; j < i; ++j)
      if (s.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0)
        throw MathError("quadratic coefficients must be upper triangular");
  QuadraticModule m{ctx.v, std::vector<QZ>(ctx.v.size())};
  for (std::size_t x = 0; x < ctx.v.size(); ++x) {
    int acc = 0;
    for (int i = 0; i < s.dim; ++i)
      for (int j = i; j < s.dim; ++j) {
        const int c = s.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (c != 0) acc = f.add(acc, f.mul(f.mul(ctx.component(x, i), c), ctx.component(x, j)));
      }
    m.q[x] = QZ(f.trace(acc), s.p);
  }
  if (radical(m.polar()).size() > 1) throw MathError("trace_quadratic: the form is defective");
  return m;
}

/// x -> b(x, x).
inline std::vector<QZ> trace_of(const Bicharacter& b) {
  std::vector<QZ> t(b.group.size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = b(x, x);
  return t;
}

/// A bicharacter b with b(x, x) = q(x). Rank one: b(g^i, g^j) = ij q(g); gluing A + C along the
/// last cyclic factor adds omega_q(a, c'). Unrolled this is
///   b(x, y) = sum_i q(e_i) x_i y_i + sum_{i<j} omega_q(e_i, e_j) x_i y_j.
inline Bicharacter quad_trace_section(const QuadraticModule& m) {
  if (auto v = quadratic_violation(m, false)) throw MathError("quad_trace_section: " + *v);
  const auto& v = m.v;
  for (const auto& x : m.q)
    if (!x.times(v.exponent()).is_zero()) throw MathError("quad_trace_section: q takes values outside mu_exp(V)");
  const auto w = m.polar();
  std::vector<std::vector<QZ>> mat(v.rank(), std::vector<QZ>(v.rank()));
  for (std::size_t i = 0; i < v.rank(); ++i) {
    mat[i][i] = m.q[v.generator(i)];
    for (std::size_t j = i + 1; j < v.rank(); ++j) mat[i][j] = w(v.generator(i), v.generator(j));
  }
  auto b = bicharacter_from_matrix(v, mat);
  if (trace_of(b) != m.q) throw MathError("quad_trace_section: q is not quadratic");
  return b;
}

/// delta eta is a bicharacter and eta(2x) = 2 eta(x).
inline bool is_c01(const Cochain1& eta) {
  if (!is_bicharacter(delta1(eta))) return false;
  const auto& v = eta.group;
  for (std::size_t x = 0; x < v.size(); ++x)
    if (eta(v.add(x, x)) != eta(x) + eta(x)) return false;
  return true;
}

/// eta in C_0^1 with delta eta = b, for b skew on a homogeneous module.
///
/// Split off the last cyclic factor, V = A + C: eta(a + c) = eta_A(a) + s(a + c) with
/// s(a + c) = -b(a, c); the cyclic base case is eta = 0. Unrolled:
///   eta(x) = -sum_{i<j} b(e_i, e_j) x_i x_j.
/// delta eta is symmetric, so this only reaches b with 2b = 0.
inline Cochain1 skew_c01_section(const Bicharacter& b) {
  const auto& v = b.group;
  if (!v.homogeneous()) throw MathError("skew_c01_section: module is not homogeneous");
  if (!is_skew(b)) throw MathError("skew_c01_section: form is not skew-symmetric");
  for (const auto& x : b.values)
    if (!(x + x).is_zero())
      throw MathError("skew_c01_section: coboundaries are symmetric, so only forms with 2b = 0 are reachable");
  const auto gm = generator_matrix(b);
  Cochain1 eta(v);
  for (std::size_t x = 0; x < v.size(); ++x) {
    QZ acc;
    for (std::size_t i = 0; i < v.rank(); ++i)
      for (std::size_t j = i + 1; j < v.rank(); ++j) acc -= gm[i][j].times(v.coord(x, i) * v.coord(x, j));
    eta.values[x] = acc;
  }
  if (delta1(eta) != b || !is_c01(eta)) throw MathError("skew_c01_section: construction failed");
  return eta;
}

/// b o (g x g).
inline Bicharacter transport(const Bicharacter& b, const AbelianAutomorphism& g) {
  return pullback(b, g.permutation(b.group));
}

inline bool preserves(const QuadraticModule& m, const AbelianAutomorphism& g) {
  for (std::size_t x = 0; x < m.v.size(); ++x)
    if (m.q[g.apply(m.v, x)] != m.q[x]) return false;
  return true;
}

inline bool preserves(const SymplecticModule& m, const AbelianAutomorphism& g) {
  const auto& v = m.v;
  for (std::size_t i = 0; i < v.rank(); ++i)
    for (std::size_t j = 0; j < v.rank(); ++j)
      if (m.omega(g.apply(v, v.generator(i)), g.apply(v, v.generator(j))) != m.omega(v.generator(i), v.generator(j)))
        return false;
  return true;
}

/// The C_0^1 characterization: g is orthogonal iff b^g - b = delta eta for some eta in C_0^1,
/// where Tr(b) = q. Returns the witness.
/// `b` is any bicharacter with trace q, e.g. quad_trace_section(m).
inline std::optional<Cochain1> orthogonality_witness(const Bicharacter& b, const AbelianAutomorphism& g) {
  const auto d = transport(b, g) - b;
  for (std::size_t x = 0; x < b.group.size(); ++x)
    if (!d(x, x).is_zero()) return std::nullopt;
  try {
    return skew_c01_section(d);
  } catch (const MathError&) {
    return std::nullopt;
  }
}

inline std::optional<Cochain1> orthogonality_witness(const QuadraticModule& m, const AbelianAutomorphism& g) {
  return orthogonality_witness(quad_trace_section(m), g);
}

/// r_v(x) = x + B(x, v) v for q(v) = 1/2 on an exponent-2 module, B = 2 omega_q as an F_2 value.
inline AbelianAutomorphism reflection(const QuadraticModule& m, std::size_t vv) {
  if (m.v.exponent() != 2) throw MathError("reflections are implemented for exponent 2");
  if (m.q[vv] != QZ(1, 2)) throw MathError("reflection along a singular vector");
  const auto w = m.polar();
  AbelianAutomorphism r;
  for (std::size_t i = 0; i < m.v.rank(); ++i) {
    const std::size_t e = m.v.generator(i);
    r.images.push_back(w(e, vv).is_zero() ? e : m.v.add(e, vv));
  }
  return r;
}

/// T_v(x) = x + p omega(x, v) v on an elementary abelian p-group.
inline AbelianAutomorphism transvection(const SymplecticModule& m, std::size_t vv) {
  const auto& v = m.v;
  const auto p = v.exponent();
  for (auto o : v.orders())
    if (o != p) throw MathError("transvections need an elementary abelian module");
  AbelianAutomorphism t;
  for (std::size_t i = 0; i < v.rank(); ++i) {
    const std::size_t e = v.generator(i);
    const QZ c = m.omega(e, vv);
    t.images.push_back(v.add(e, v.scale(vv, c.num() * (p / c.den()))));
  }
  return t;
}

enum class GroupRoute { automatic, filter, generators };

namespace detail {
inline bool filter_feasible(const FiniteAbelianGroup& v) { return v.size() <= 256 && v.rank() <= 4; }
}  // namespace detail

/// O(V, q) = {g : q o g = q}; filtered from Aut(V) at small size, else generated by reflections.
inline FiniteGroup orthogonal_group(const QuadraticModule& m, std::size_t budget = kDefaultBudget,
                                    GroupRoute route = GroupRoute::automatic) {
  if (auto v = quadratic_violation(m)) throw MathError("orthogonal_group: " + *v);
  if (route == GroupRoute::automatic)
    route = detail::filter_feasible(m.v) || m.v.exponent() != 2 ? GroupRoute::filter : GroupRoute::generators;
  if (route == GroupRoute::filter) {
    std::vector<AbelianAutomorphism> keep;
    for (const auto& g : aut_group(m.v, budget))
      if (preserves(m, g)) keep.push_back(g);
    return automorphism_group_from_list(m.v, keep);
  }
  std::vector<AbelianAutomorphism> gens;
  for (std::size_t x = 1; x < m.v.size(); ++x)
    if (m.q[x] == QZ(1, 2)) gens.push_back(reflection(m, x));
  return automorphism_group(m.v, gens, budget);
}

/// Sp(V, omega); filtered at small size, else generated by transvections.
inline FiniteGroup symplectic_group(const SymplecticModule& m, std::size_t budget = kDefaultBudget,
                                    GroupRoute route = GroupRoute::automatic) {
  require_symplectic(m);
  if (route == GroupRoute::automatic) route = detail::filter_feasible(m.v) ? GroupRoute::filter : GroupRoute::generators;
  if (route == GroupRoute::filter) {
    std::vector<AbelianAutomorphism> keep;
    for (const auto& g : aut_group(m.v, budget))
      if (preserves(m, g)) keep.push_back(g);
    return automorphism_group_from_list(m.v, keep);
  }
  std::vector<AbelianAutomorphism> gens;
  for (std::size_t x = 1; x < m.v.size(); ++x) gens.push_back(transvection(m, x));
  return automorphism_group(m.v, gens, budget);
}

/// rank(g - 1) mod 2 over F_2.
inline int dickson_invariant(const FiniteAbelianGroup& v, const AbelianAutomorphism& g) {
  if (v.exponent() != 2) throw MathError("Dickson invariant is defined here for F_2-modules");
  auto mat = automorphism_matrix(v, g);
  const std::size_t d = v.rank();
  for (std::size_t i = 0; i < d; ++i) mat[i][i] ^= 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < d && rank < d; ++c) {
    std::size_t piv = rank;
    while (piv < d && (mat[piv][c] & 1) == 0) ++piv;
    if (piv == d) continue;
    std::swap(mat[piv], mat[rank]);
    for (std::size_t r = 0; r < d; ++r)
      if (r != rank && (mat[r][c] & 1))
        for (std::size_t k = 0; k < d; ++k) mat[r][k] ^= mat[rank][k];
    ++rank;
  }
  return static_cast<int>(rank % 2);
}

/// The kernel of the Dickson invariant inside an orthogonal group.
inline FiniteGroup dickson_omega(const FiniteAbelianGroup& v, const FiniteGroup& o) {
  std::vector<FiniteGroup::Index> keep;
  for (FiniteGroup::Index i = 0; i < o.order(); ++i)
    if (dickson_invariant(v, decode_automorphism(v, o.key(i))) == 0) keep.push_back(i);
  return o.subgroup_from_elements(keep, greedy_generators(o, keep));
}

/// Standard plus-type form x1 x2 + x3 x4 + ... on F_2^{2k}; minus type adds x_{2k-1}^2 + x_{2k}^2.
inline LinearFormSpace standard_quadratic_f2(int dim, bool minus = false) {
  if (dim % 2 != 0) throw MathError("standard quadratic form needs even dimension");
  LinearFormSpace s;
  s.p = 2;
  s.n = 1;
  s.dim = dim;
  s.kind = LinearFormSpace::Kind::quadratic;
  s.coeffs.assign(static_cast<std::size_t>(dim), std::vector<int>(static_cast<std::size_t>(dim), 0));
  for (int i = 0; i + 1 < dim; i += 2) s.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = 1;
  if (minus) {
    s.coeffs[static_cast<std::size_t>(dim - 2)][static_cast<std::size_t>(dim - 2)] = 1;
    s.coeffs[static_cast<std::size_t>(dim - 1)][static_cast<std::size_t>(dim - 1)] = 1;
  }
  return s;
}

/// Standard symplectic form sum x_{2i} y_{2i+1} - x_{2i+1} y_{2i} on F_q^dim.
inline LinearFormSpace standard_symplectic(int p, int n, int dim) {
  if (dim % 2 != 0) throw MathError("symplectic form needs even dimension");
  LinearFormSpace s;
  s.p = p;
  s.n = n;
  s.dim = dim;
  s.kind = LinearFormSpace::Kind::symplectic;
  s.coeffs.assign(static_cast<std::size_t>(dim), std::vector<int>(static_cast<std::size_t>(dim), 0));
  for (int i = 0; i + 1 < dim; i += 2) {
    s.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = 1;
    s.coeffs[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = p - 1;
  }
  return s;
}

}  // namespace isocat
