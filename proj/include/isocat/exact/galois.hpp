#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "isocat/error.hpp"
#include "isocat/exact/cyclotomic.hpp"
#include "isocat/exact/qz.hpp"

namespace isocat {

inline std::int64_t mod_pos(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

/// A subgroup Gamma of (Z/m)^* acting on Q(zeta_m) by zeta -> zeta^t.
class GaloisAction {
 public:
  GaloisAction() : GaloisAction(1, {}) {}

  /// Subgroup generated by `gens`; 1 is always included.
  GaloisAction(int m, const std::vector<std::int64_t>& gens) : m_(m) {
    if (m < 1) throw MathError("Galois modulus must be positive");
    std::set<std::int64_t> elems{mod_pos(1, m)};
    for (auto g : gens)
      if (std::gcd(mod_pos(g, m), static_cast<std::int64_t>(m)) != 1 && m != 1)
        throw MathError("Galois generator " + std::to_string(g) + " is not a unit mod " + std::to_string(m));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::int64_t> cur(elems.begin(), elems.end());
      for (auto a : cur)
        for (auto g : gens)
          if (elems.insert(mod_pos(a * g, m)).second) grew = true;
    }
    elements_.assign(elems.begin(), elems.end());
  }

  int modulus() const { return m_; }
  const std::vector<std::int64_t>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(std::int64_t t) const {
    return std::binary_search(elements_.begin(), elements_.end(), mod_pos(t, m_));
  }

  /// t acting on a root of unity a/b with b | m.
  QZ apply(std::int64_t t, QZ a) const {
    require(t);
    if (m_ % a.den() != 0)
      throw MathError("value " + a.str() + " is not a root of unity of K = Q(zeta_" + std::to_string(m_) + ")");
    return a.times(t);
  }
  Cyclotomic apply(std::int64_t t, const Cyclotomic& v) const {
    require(t);
    if (v.modulus() != m_) throw MathError("cyclotomic modulus mismatch in Galois action");
    return v.galois(t);
  }

  /// Largest e | m with t = 1 mod e for every t: the roots of unity of the fixed field.
  int fixed_roots_order() const {
    int best = 1;
    for (int e = 1; e <= m_; ++e) {
      if (m_ % e != 0) continue;
      if (std::all_of(elements_.begin(), elements_.end(), [&](std::int64_t t) { return mod_pos(t - 1, e) == 0; }))
        best = e;
    }
    return best;
  }

  friend bool operator==(const GaloisAction&, const GaloisAction&) = default;

 private:
  void require(std::int64_t t) const {
    if (!contains(t)) throw MathError("unit " + std::to_string(t) + " is not in the Galois group");
  }
  int m_ = 1;
  std::vector<std::int64_t> elements_;
};

/// Free functional form of the Galois action.
inline Cyclotomic galois_apply(const GaloisAction& act, std::int64_t t, const Cyclotomic& v) { return act.apply(t, v); }

/// K = Q(zeta_m) together with Gal(K|k); the modulus is kept even so that mu(K) = mu_m.
class CyclotomicField {
 public:
  CyclotomicField() : CyclotomicField(2, {}) {}
  CyclotomicField(int m, std::vector<std::int64_t> galois_generators) {
    if (m < 1) throw MathError("field modulus must be positive");
    if (m % 2 == 1) {
      // Q(zeta_m) = Q(zeta_2m) for odd m; lift each generator to an odd representative.
      for (auto& g : galois_generators)
        if (mod_pos(g, 2) == 0) g += m;
      m *= 2;
    }
    generators_.clear();
    for (auto g : galois_generators) {
      g = mod_pos(g, m);
      if (g != 1) generators_.push_back(g);
    }
    action_ = GaloisAction(m, generators_);
    // Orders of the generators; they must generate Gamma as a direct product.
    std::size_t prod = 1;
    for (auto g : generators_) {
      std::int64_t k = 1, x = g;
      while (x != 1) {
        x = mod_pos(x * g, m);
        ++k;
      }
      generator_orders_.push_back(k);
      prod *= static_cast<std::size_t>(k);
    }
    if (prod != action_.order())
      throw MathError("Galois generators are not independent; list a basis of Gal(K|k)");
  }

  int modulus() const { return action_.modulus(); }
  /// Order of mu(K).
  int roots_of_unity() const { return modulus(); }
  const GaloisAction& galois() const { return action_; }
  const std::vector<std::int64_t>& galois_generators() const { return generators_; }
  const std::vector<std::int64_t>& generator_orders() const { return generator_orders_; }
  int degree() const { return euler_phi(modulus()); }
  /// [k : Q] for the fixed field k.
  int base_degree() const { return degree() / static_cast<int>(action_.order()); }
  /// Order of the roots of unity contained in k.
  int base_roots_of_unity() const { return action_.fixed_roots_order(); }

  /// Unit attached to the abstract element with exponent vector `e` over the generators.
  std::int64_t unit(const std::vector<std::int64_t>& e) const {
    std::int64_t t = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::int64_t j = 0; j < e[i]; ++j) t = mod_pos(t * generators_[i], modulus());
    return t;
  }

  friend bool operator==(const CyclotomicField& a, const CyclotomicField& b) {
    return a.action_ == b.action_ && a.generators_ == b.generators_;
  }

 private:
  GaloisAction action_;
  std::vector<std::int64_t> generators_;
  std::vector<std::int64_t> generator_orders_;
};

}  // namespace isocat
