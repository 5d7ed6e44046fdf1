#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isocat/error.hpp"
#include "isocat/group/abelian.hpp"
#include "isocat/group/finite_group.hpp"

namespace isocat {

/// X-crossed system over an abelian N (written additively):
/// action[x * |N| + n] = ^x n and theta[x * |X| + y] = theta(x, y), indices of X as in `x`.
struct CrossedSystem {
  FiniteAbelianGroup n;
  FiniteGroup x;
  std::vector<std::size_t> action;
  std::vector<std::size_t> theta;

  std::size_t act(FiniteGroup::Index g, std::size_t m) const { return action[static_cast<std::size_t>(g) * n.size() + m]; }
  std::size_t th(FiniteGroup::Index g, FiniteGroup::Index h) const {
    return theta[static_cast<std::size_t>(g) * x.order() + h];
  }
};

struct CrossedViolation {
  std::string axiom;
  std::vector<std::size_t> witness;  // the failing tuple
};

/// Checks the five crossed-system axioms on every tuple.
inline std::optional<CrossedViolation> crossed_violation(const CrossedSystem& cs) {
  const auto& N = cs.n;
  const auto& X = cs.x;
  const auto nx = static_cast<FiniteGroup::Index>(X.order());
  const auto one = X.identity();
  for (std::size_t m = 0; m < N.size(); ++m)
    if (cs.act(one, m) != m) return CrossedViolation{"unit acts trivially", {m}};
  for (FiniteGroup::Index g = 0; g < nx; ++g) {
    if (cs.th(g, one) != 0 || cs.th(one, g) != 0) return CrossedViolation{"theta normalized", {g}};
    for (std::size_t a = 0; a < N.size(); ++a)
      for (std::size_t b = 0; b < N.size(); ++b)
        if (cs.act(g, N.add(a, b)) != N.add(cs.act(g, a), cs.act(g, b)))
          return CrossedViolation{"action by homomorphisms", {g, a, b}};
  }
  for (FiniteGroup::Index g = 0; g < nx; ++g)
    for (FiniteGroup::Index h = 0; h < nx; ++h) {
      const auto gh = X.mul(g, h);
      const auto t = cs.th(g, h);
      for (std::size_t m = 0; m < N.size(); ++m)
        if (N.add(t, cs.act(gh, m)) != N.add(cs.act(g, cs.act(h, m)), t))
          return CrossedViolation{"twisted action", {g, h, m}};
      for (FiniteGroup::Index k = 0; k < nx; ++k) {
        const auto lhs = N.add(t, cs.th(gh, k));
        const auto rhs = N.add(cs.act(g, cs.th(h, k)), cs.th(g, X.mul(h, k)));
        if (lhs != rhs) return CrossedViolation{"cocycle", {g, h, k}};
      }
    }
  return std::nullopt;
}

/// N #_theta X with key n * |X| + x, product (n,x)(m,y) = (n + ^x m + theta(x,y), xy).
inline FiniteGroup crossed_product(const CrossedSystem& cs, bool validate = true) {
  if (validate)
    if (auto v = crossed_violation(cs)) throw MathError("crossed-system axiom violated: " + v->axiom);
  const std::size_t nx = cs.x.order();
  const std::size_t nn = cs.n.size();
  auto sys = std::make_shared<CrossedSystem>(cs);
  FiniteGroup::Op op = [sys, nx](FiniteGroup::Key a, FiniteGroup::Key b) {
    const auto ax = static_cast<FiniteGroup::Index>(a % nx), bx = static_cast<FiniteGroup::Index>(b % nx);
    const std::size_t an = a / nx, bn = b / nx;
    const std::size_t n = sys->n.add(sys->n.add(an, sys->act(ax, bn)), sys->th(ax, bx));
    return static_cast<FiniteGroup::Key>(n * nx + sys->x.mul(ax, bx));
  };
  std::vector<FiniteGroup::Key> elems(nn * nx);
  for (std::size_t k = 0; k < elems.size(); ++k) elems[k] = k;
  std::vector<FiniteGroup::Key> gens;
  for (std::size_t i = 0; i < cs.n.rank(); ++i) gens.push_back(cs.n.generator(i) * nx + cs.x.identity());
  for (auto g : cs.x.generators()) gens.push_back(g);  // (0, g)
  return FiniteGroup::from_elements(std::move(elems), cs.x.identity(), std::move(op), gens);
}

/// Element (n, x) of a crossed product built above.
inline FiniteGroup::Key crossed_key(const CrossedSystem& cs, std::size_t n, FiniteGroup::Index x) {
  return static_cast<FiniteGroup::Key>(n * cs.x.order() + x);
}

/// The semidirect product N x| X for an action given as a table.
inline CrossedSystem semidirect_system(FiniteAbelianGroup n, FiniteGroup x, std::vector<std::size_t> action) {
  CrossedSystem cs{std::move(n), std::move(x), std::move(action), {}};
  cs.theta.assign(cs.x.order() * cs.x.order(), 0);
  return cs;
}

}  // namespace isocat
