#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isocat/error.hpp"
#include "isocat/group/finite_group.hpp"
#include "isocat/group/sylow.hpp"

namespace isocat {

inline constexpr std::size_t kClassCountLimit = 200'000;
inline constexpr std::size_t kFingerprintLimit = 2'000'000;
inline constexpr std::size_t kComplementSearchLimit = 512;

/// Whether G splits over O_p(G) for the smallest prime p with 1 < |O_p(G)| < |G|.
struct SplitInvariant {
  std::int64_t prime = 0;          // 0: no proper nontrivial O_p(G)
  std::size_t subgroup_order = 0;  // |O_p(G)|
  std::size_t search_size = 0;     // |O_p|^r lift tuples
  std::optional<bool> splits;      // empty when the search exceeds the limit
};

struct GroupFingerprint {
  std::size_t order = 0;
  std::map<std::int64_t, std::size_t> order_histogram;
  std::size_t center = 0;
  std::size_t derived = 0;
  std::vector<std::int64_t> abelianization;  // elementary divisors, sorted
  std::int64_t exponent = 1;
  std::size_t squares = 0;
  std::optional<std::size_t> classes;
};

namespace detail {

inline std::vector<std::int64_t> prime_factors(std::size_t n) {
  std::vector<std::int64_t> ps;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(static_cast<std::int64_t>(p));
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(static_cast<std::int64_t>(n));
  return ps;
}

/// Label of the coset xH for every x; H given by a membership mask.
inline std::vector<std::size_t> right_coset_labels(const FiniteGroup& g, const IndexSet& h, std::size_t& count) {
  std::vector<std::size_t> label(g.order(), static_cast<std::size_t>(-1));
  count = 0;
  for (FiniteGroup::Index x = 0; x < g.order(); ++x) {
    if (label[x] != static_cast<std::size_t>(-1)) continue;
    for (auto e : h.elements) label[g.mul(x, e)] = count;
    ++count;
  }
  return label;
}

inline std::vector<std::int64_t> abelian_invariants(const FiniteGroup& g, const IndexSet& derived) {
  // Orders of cosets in G / [G, G]; abelian, so the p-rank sequence gives the divisors.
  std::size_t nq = 0;
  const auto label = right_coset_labels(g, derived, nq);
  std::vector<FiniteGroup::Index> rep(nq);
  for (FiniteGroup::Index x = g.order(); x-- > 0;) rep[label[x]] = x;
  std::vector<std::int64_t> orders;
  for (auto x : rep) {
    std::int64_t k = 1;
    FiniteGroup::Index y = x;
    while (!derived.member[y]) {
      y = g.mul(y, x);
      ++k;
    }
    orders.push_back(k);
  }
  std::vector<std::int64_t> out;
  for (auto p : prime_factors(nq)) {
    // c[j] = log_p |Q[p^j]|
    std::vector<std::size_t> c{0};
    std::int64_t pj = 1;
    while (true) {
      pj *= p;
      std::size_t cnt = 0;
      for (auto o : orders) cnt += pj % o == 0;
      std::size_t lg = 0;
      for (std::size_t t = cnt; t > 1; t /= static_cast<std::size_t>(p)) ++lg;
      if (lg == c.back()) break;
      c.push_back(lg);
    }
    // Number of cyclic factors of order exactly p^j is (c_j - c_{j-1}) - (c_{j+1} - c_j).
    c.push_back(c.back());
    std::int64_t q = 1;
    for (std::size_t j = 1; j + 1 < c.size(); ++j) {
      q *= p;
      const auto exact = (c[j] - c[j - 1]) - (c[j + 1] - c[j]);
      for (std::size_t t = 0; t < exact; ++t) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t class_count(const FiniteGroup& g) {
  std::vector<bool> seen(g.order(), false);
  std::size_t classes = 0;
  std::vector<FiniteGroup::Index> stack;
  for (FiniteGroup::Index x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    ++classes;
    seen[x] = true;
    stack.push_back(x);
    while (!stack.empty()) {
      const auto y = stack.back();
      stack.pop_back();
      for (auto h : g.generators()) {
        const auto z = g.conjugate(h, y);
        if (!seen[z]) {
          seen[z] = true;
          stack.push_back(z);
        }
      }
    }
  }
  return classes;
}

/// O_p(G): the core of a Sylow p-subgroup.
inline IndexSet largest_normal_p_subgroup(const FiniteGroup& g, std::int64_t p) {
  const auto syl = sylow_subgroup(g, p);
  std::vector<bool> in(g.order(), false);
  for (FiniteGroup::Index i = 0; i < syl.order(); ++i) in[g.index_of(syl.key(i))] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (FiniteGroup::Index x = 0; x < g.order(); ++x) {
      if (!in[x]) continue;
      for (auto h : g.generators())
        if (!in[g.conjugate(h, x)]) {
          in[x] = false;
          changed = true;
          break;
        }
    }
  }
  IndexSet s;
  s.member = in;
  for (FiniteGroup::Index x = 0; x < g.order(); ++x)
    if (in[x]) s.elements.push_back(x);
  return s;
}

/// Subgroup generated by gens, or nothing once it exceeds `cap` elements.
inline std::optional<IndexSet> capped_subgroup(const FiniteGroup& g, const std::vector<FiniteGroup::Index>& gens,
                                               std::size_t cap) {
  IndexSet s;
  s.member.assign(g.order(), false);
  s.member[g.identity()] = true;
  s.elements.push_back(g.identity());
  for (std::size_t head = 0; head < s.elements.size(); ++head)
    for (auto x : gens) {
      const auto k = g.mul(s.elements[head], x);
      if (!s.member[k]) {
        if (s.elements.size() == cap) return std::nullopt;
        s.member[k] = true;
        s.elements.push_back(k);
      }
    }
  return s;
}

/// Elements of G whose images generate G/H (labels from right_coset_labels): a single
/// generator or a pair if one exists (searched when |G/H| <= 1024), else a greedy choice among
/// the generators of G.
inline std::vector<FiniteGroup::Index> quotient_generators(const FiniteGroup& g, const std::vector<std::size_t>& label,
                                                           std::size_t nq) {
  std::vector<FiniteGroup::Index> rep(nq);
  for (FiniteGroup::Index x = g.order(); x-- > 0;) rep[label[x]] = x;
  auto span_size = [&](const std::vector<FiniteGroup::Index>& gens) {
    std::vector<bool> seen(nq, false);
    std::vector<FiniteGroup::Index> todo{g.identity()};
    seen[label[g.identity()]] = true;
    std::size_t n = 1;
    while (!todo.empty()) {
      const auto x = todo.back();
      todo.pop_back();
      for (auto y : gens) {
        const auto z = g.mul(x, y);
        if (!seen[label[z]]) {
          seen[label[z]] = true;
          ++n;
          todo.push_back(rep[label[z]]);
        }
      }
    }
    return n;
  };
  if (nq == 1) return {};
  if (nq <= 1024) {
    for (std::size_t i = 1; i < nq; ++i)
      if (span_size({rep[i]}) == nq) return {rep[i]};
    for (std::size_t i = 1; i < nq; ++i)
      for (std::size_t j = i + 1; j < nq; ++j)
        if (span_size({rep[i], rep[j]}) == nq) return {rep[i], rep[j]};
  }
  std::vector<FiniteGroup::Index> gens;
  for (auto x : g.generators()) {
    if (span_size(gens) == nq) break;
    gens.push_back(x);
    if (span_size(gens) == span_size({gens.begin(), gens.end() - 1})) gens.pop_back();
  }
  return gens;
}

/// Class size of every element.
inline std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
  std::vector<std::size_t> size(g.order(), 0);
  std::vector<bool> seen(g.order(), false);
  std::vector<FiniteGroup::Index> orbit;
  for (FiniteGroup::Index x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    orbit.assign(1, x);
    seen[x] = true;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (auto h : g.generators()) {
        const auto z = g.conjugate(h, orbit[head]);
        if (!seen[z]) {
          seen[z] = true;
          orbit.push_back(z);
        }
      }
    for (auto y : orbit) size[y] = orbit.size();
  }
  return size;
}

/// (element order, class size) -> number of elements.
inline std::map<std::pair<std::int64_t, std::size_t>, std::size_t> order_class_histogram(const FiniteGroup& g) {
  const auto cs = class_sizes(g);
  std::map<std::pair<std::int64_t, std::size_t>, std::size_t> h;
  for (FiniteGroup::Index x = 0; x < g.order(); ++x) ++h[{g.element_order(x), cs[x]}];
  return h;
}

/// Ordered pairs of distinct commuting involutions.
inline std::size_t commuting_involution_pairs(const FiniteGroup& g) {
  std::vector<FiniteGroup::Index> inv;
  for (FiniteGroup::Index x = 0; x < g.order(); ++x)
    if (g.element_order(x) == 2) inv.push_back(x);
  std::size_t n = 0;
  for (auto a : inv)
    for (auto b : inv)
      if (a != b && g.mul(a, b) == g.mul(b, a)) ++n;
  return n;
}

}  // namespace detail

/// Complement search for H = O_p(G): lifts g_i h_i of generators of G/H, over all h_i in H.
inline SplitInvariant split_invariant(const FiniteGroup& g, std::size_t limit = kComplementSearchLimit) {
  SplitInvariant out;
  for (auto p : detail::prime_factors(g.order())) {
    const auto h = detail::largest_normal_p_subgroup(g, p);
    if (h.elements.size() > 1 && h.elements.size() < g.order()) {
      out.prime = p;
      out.subgroup_order = h.elements.size();
      std::size_t nq = 0;
      const auto label = detail::right_coset_labels(g, h, nq);
      const auto qgens = detail::quotient_generators(g, label, nq);
      out.search_size = 1;
      for (std::size_t i = 0; i < qgens.size() && out.search_size <= limit; ++i) out.search_size *= h.elements.size();
      if (out.search_size > limit) return out;
      std::vector<std::size_t> pick(qgens.size(), 0);
      bool found = false;
      while (!found) {
        std::vector<FiniteGroup::Index> lifts;
        for (std::size_t i = 0; i < qgens.size(); ++i) lifts.push_back(g.mul(qgens[i], h.elements[pick[i]]));
        if (const auto s = detail::capped_subgroup(g, lifts, nq); s && s->elements.size() == nq) {
          std::size_t meet = 0;
          for (auto e : s->elements) meet += h.member[e];
          found = meet == 1;
        }
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == h.elements.size()) pick[k++] = 0;
        if (k == pick.size()) break;
      }
      out.splits = found;
      return out;
    }
  }
  return out;
}

inline GroupFingerprint fingerprint(const FiniteGroup& g, std::size_t class_limit = kClassCountLimit) {
  if (g.order() > kFingerprintLimit) throw BudgetExceeded("fingerprint: group order exceeds the limit");
  GroupFingerprint f;
  f.order = g.order();
  std::vector<bool> square(g.order(), false);
  for (FiniteGroup::Index x = 0; x < g.order(); ++x) {
    const auto o = g.element_order(x);
    ++f.order_histogram[o];
    f.exponent = std::lcm(f.exponent, o);
    square[g.mul(x, x)] = true;
    bool central = true;
    for (auto h : g.generators())
      if (g.mul(h, x) != g.mul(x, h)) {
        central = false;
        break;
      }
    f.center += central;
  }
  f.squares = static_cast<std::size_t>(std::count(square.begin(), square.end(), true));
  std::vector<FiniteGroup::Index> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(g.commutator(gens[i], gens[j]));
  const auto derived = normal_closure(g, comms);
  f.derived = derived.elements.size();
  f.abelianization = detail::abelian_invariants(g, derived);
  if (g.order() <= class_limit) f.classes = detail::class_count(g);
  return f;
}

struct Certificate {
  bool inconclusive = true;
  std::string invariant;
  std::string value_a, value_b;
  std::size_t chain_position = 0;
  std::vector<std::string> chain;  // invariants compared, in order
};

namespace detail {

inline std::string histogram_str(const std::map<std::int64_t, std::size_t>& h) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [o, c] : h) {
    os << (first ? "" : ", ") << o << ": " << c;
    first = false;
  }
  os << "}";
  return os.str();
}

inline std::string list_str(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

inline std::string joint_str(const std::map<std::pair<std::int64_t, std::size_t>, std::size_t>& h) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, c] : h) {
    os << (first ? "" : ", ") << "(" << k.first << ", " << k.second << "): " << c;
    first = false;
  }
  os << "}";
  return os.str();
}

inline std::string split_str(const SplitInvariant& s) {
  if (s.prime == 0) return "no proper O_p";
  std::string r = "O_" + std::to_string(s.prime) + " of order " + std::to_string(s.subgroup_order) + ": ";
  if (!s.splits) return r + "search skipped (" + std::to_string(s.search_size) + " lifts)";
  return r + (*s.splits ? "complemented" : "no complement");
}

}  // namespace detail

/// First invariant of the fixed chain on which a and b differ. Never asserts isomorphism.
inline Certificate distinguish(const FiniteGroup& a, const FiniteGroup& b, std::size_t class_limit = kClassCountLimit,
                               std::size_t complement_limit = kComplementSearchLimit) {
  Certificate cert;
  auto step = [&](const std::string& name, const std::string& va, const std::string& vb) {
    cert.chain.push_back(name);
    if (!cert.inconclusive || va == vb) return;
    cert.inconclusive = false;
    cert.invariant = name;
    cert.value_a = va;
    cert.value_b = vb;
    cert.chain_position = cert.chain.size() - 1;
  };
  step("order", std::to_string(a.order()), std::to_string(b.order()));
  if (!cert.inconclusive) return cert;
  const auto fa = fingerprint(a, class_limit);
  const auto fb = fingerprint(b, class_limit);
  step("order_histogram", detail::histogram_str(fa.order_histogram), detail::histogram_str(fb.order_histogram));
  step("center", std::to_string(fa.center), std::to_string(fb.center));
  step("derived", std::to_string(fa.derived), std::to_string(fb.derived));
  step("abelianization", detail::list_str(fa.abelianization), detail::list_str(fb.abelianization));
  step("exponent", std::to_string(fa.exponent), std::to_string(fb.exponent));
  step("squares", std::to_string(fa.squares), std::to_string(fb.squares));
  if (fa.classes && fb.classes) step("classes", std::to_string(*fa.classes), std::to_string(*fb.classes));
  if (!cert.inconclusive) return cert;
  if (a.order() <= kComplementSearchLimit * kComplementSearchLimit) {
    const auto sa = split_invariant(a, complement_limit);
    const auto sb = split_invariant(b, complement_limit);
    if (sa.splits && sb.splits) step("complement", detail::split_str(sa), detail::split_str(sb));
    if (!cert.inconclusive) return cert;
  }
  // Refinements past the complement step; both are invariant under isomorphism.
  if (a.order() <= class_limit) {
    step("order_class_sizes", detail::joint_str(detail::order_class_histogram(a)),
         detail::joint_str(detail::order_class_histogram(b)));
    step("commuting_involution_pairs", std::to_string(detail::commuting_involution_pairs(a)),
         std::to_string(detail::commuting_involution_pairs(b)));
  }
  return cert;
}

}  // namespace isocat
