#pragma once

#include <cstdint>
#include <vector>

#include "isocat/group/finite_group.hpp"

namespace isocat {

/// A Sylow p-subgroup, grown one step at a time through p-elements of the normalizer.
///
/// If P is a p-subgroup that is not Sylow, N(P)/P has order divisible by p, so some
/// g in N(P) \ P has g^p in P; then <P, g> has order p|P|. Candidates are scanned in
/// index order, which makes the result deterministic.
inline FiniteGroup sylow_subgroup(const FiniteGroup& g, std::int64_t p) {
  std::size_t target = 1;
  for (std::size_t n = g.order(); n % static_cast<std::size_t>(p) == 0; n /= static_cast<std::size_t>(p))
    target *= static_cast<std::size_t>(p);
  std::vector<FiniteGroup::Index> gens;
  IndexSet cur = generated_subgroup(g, gens);
  while (cur.elements.size() < target) {
    bool grown = false;
    for (FiniteGroup::Index x = 0; x < g.order() && !grown; ++x) {
      if (cur.member[x] || !cur.member[g.power(x, p)]) continue;
      bool normalizes = true;
      for (auto h : gens)
        if (!cur.member[g.conjugate(x, h)]) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      gens.push_back(x);
      cur = generated_subgroup(g, gens);
      grown = true;
    }
    if (!grown) throw MathError("Sylow growth stalled; the group operation is inconsistent");
  }
  return g.subgroup_from_elements(cur.elements, gens);
}

inline FiniteGroup sylow2(const FiniteGroup& g) { return sylow_subgroup(g, 2); }

}  // namespace isocat
