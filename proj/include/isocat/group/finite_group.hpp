#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "isocat/error.hpp"

namespace isocat {

/// A finite group whose elements are opaque 64-bit canonical keys.
///
/// Elements are indexed by the rank of their key, so the indexing depends only
/// on the element set and not on generator order or discovery order.
class FiniteGroup {
 public:
  using Key = std::uint64_t;
  using Index = std::uint32_t;
  using Op = std::function<Key(Key, Key)>;

  static constexpr std::size_t kTableLimit = 1024;

  /// The trivial group.
  FiniteGroup() { build({0}, 0, [](Key, Key) { return Key{0}; }, {}); }

  /// Breadth-first closure of `generators` under `op`.
  static FiniteGroup closure(const std::vector<Key>& generators, Key identity, Op op,
                             std::size_t budget = kDefaultBudget) {
    std::unordered_set<Key> seen{identity};
    std::vector<Key> order{identity};
    std::size_t head = 0;
    std::vector<Key> gens;
    for (auto g : generators)
      if (g != identity && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    while (head < order.size()) {
      const Key e = order[head++];
      for (auto g : gens) {
        const Key k = op(e, g);
        if (seen.insert(k).second) {
          order.push_back(k);
          if (order.size() > budget)
            throw BudgetExceeded("closure exceeded the budget of " + std::to_string(budget) + " elements");
        }
      }
    }
    return from_elements(std::move(order), identity, std::move(op), gens);
  }

  /// Trusted constructor: `elements` must already be closed under `op`.
  static FiniteGroup from_elements(std::vector<Key> elements, Key identity, Op op, const std::vector<Key>& generators) {
    FiniteGroup g(Tag{});
    g.build(std::move(elements), identity, std::move(op), generators);
    return g;
  }

  std::size_t order() const { return d_->keys.size(); }
  Key key(Index i) const { return d_->keys[i]; }
  const std::vector<Key>& keys() const { return d_->keys; }
  std::optional<Index> find(Key k) const {
    if (d_->dense) {
      if (k < d_->keys.size()) return static_cast<Index>(k);
      return std::nullopt;
    }
    auto it = d_->index.find(k);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }
  Index index_of(Key k) const {
    auto i = find(k);
    if (!i) throw MathError("element is not in the group");
    return *i;
  }
  bool contains(Key k) const { return find(k).has_value(); }

  Index identity() const { return d_->identity; }
  Index mul(Index a, Index b) const {
    if (!d_->table.empty()) return d_->table[static_cast<std::size_t>(a) * order() + b];
    return index_of(d_->op(d_->keys[a], d_->keys[b]));
  }
  Index inverse(Index a) const { return d_->inverse[a]; }
  Index power(Index a, std::int64_t k) const {
    if (k < 0) return power(inverse(a), -k);
    Index r = identity();
    Index base = a;
    while (k > 0) {
      if (k & 1) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }
  std::int64_t element_order(Index a) const { return d_->orders[a]; }
  Index conjugate(Index g, Index h) const { return mul(mul(g, h), inverse(g)); }  // g h g^-1
  Index commutator(Index a, Index b) const { return mul(mul(a, b), mul(inverse(a), inverse(b))); }

  const std::vector<Index>& generators() const { return d_->generators; }
  const Op& op() const { return d_->op; }
  Key identity_key() const { return d_->keys[d_->identity]; }

  /// Subgroup generated by the given elements, sharing this group's keys and operation.
  FiniteGroup subgroup(const std::vector<Index>& gens) const {
    std::vector<Key> keys;
    for (auto g : gens) keys.push_back(key(g));
    return closure(keys, identity_key(), d_->op, order());
  }
  /// Subgroup on an explicit closed element set.
  FiniteGroup subgroup_from_elements(const std::vector<Index>& elems, const std::vector<Index>& gens) const {
    std::vector<Key> keys, gkeys;
    for (auto e : elems) keys.push_back(key(e));
    for (auto g : gens) gkeys.push_back(key(g));
    return from_elements(std::move(keys), identity_key(), d_->op, gkeys);
  }

  /// Associativity on all triples (small groups) or on `samples` seeded random triples.
  std::optional<std::array<Index, 3>> associativity_violation(std::size_t samples = 10000,
                                                                std::uint64_t seed = 1) const {
    const std::size_t n = order();
    auto check = [&](Index a, Index b, Index c) { return mul(mul(a, b), c) == mul(a, mul(b, c)); };
    if (n <= kTableLimit) {
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
          for (Index c = 0; c < n; ++c)
            if (!check(a, b, c)) return std::array<Index, 3>{a, b, c};
      return std::nullopt;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) {
      const auto a = static_cast<Index>(pick(rng)), b = static_cast<Index>(pick(rng)), c = static_cast<Index>(pick(rng));
      if (!check(a, b, c)) return std::array<Index, 3>{a, b, c};
    }
    return std::nullopt;
  }

 private:
  struct Tag {};
  explicit FiniteGroup(Tag) {}

  struct Data {
    std::vector<Key> keys;
    std::unordered_map<Key, Index> index;
    bool dense = false;
    Op op;
    Index identity = 0;
    std::vector<Index> inverse;
    std::vector<std::int64_t> orders;
    std::vector<Index> generators;
    std::vector<Index> table;
  };

  void build(std::vector<Key> elements, Key identity, Op op, const std::vector<Key>& generators) {
    auto d = std::make_shared<Data>();
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    d->keys = std::move(elements);
    d->op = std::move(op);
    const std::size_t n = d->keys.size();
    d->dense = !d->keys.empty() && d->keys.front() == 0 && d->keys.back() == n - 1;
    if (!d->dense) {
      d->index.reserve(n * 2);
      for (std::size_t i = 0; i < n; ++i) d->index.emplace(d->keys[i], static_cast<Index>(i));
    }
    d_ = d;
    d->identity = index_of(identity);
    for (auto g : generators) {
      const Index gi = index_of(g);
      if (gi != d->identity && std::find(d->generators.begin(), d->generators.end(), gi) == d->generators.end())
        d->generators.push_back(gi);
    }
    if (n <= kTableLimit) {
      d->table.resize(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          d->table[a * n + b] = index_of(d->op(d->keys[a], d->keys[b]));
    }
    // Element orders and inverses by walking powers.
    d->inverse.assign(n, 0);
    d->orders.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      if (d->orders[a] != 0) continue;
      std::vector<Index> pw{static_cast<Index>(a)};
      Index cur = static_cast<Index>(a);
      while (cur != d->identity) {
        cur = mul(cur, static_cast<Index>(a));
        pw.push_back(cur);
        if (pw.size() > n + 1) throw MathError("operation does not define a group on the element set");
      }
      const auto k = static_cast<std::int64_t>(pw.size());
      // pw[i] = a^{i+1}; a^{i+1} has order k/gcd(i+1,k) and inverse a^{k-i-1}.
      for (std::int64_t i = 0; i < k; ++i) {
        const Index e = pw[static_cast<std::size_t>(i)];
        if (d->orders[e] != 0) continue;
        d->orders[e] = k / std::gcd(i + 1, k);
        d->inverse[e] = (i + 1 == k) ? d->identity : pw[static_cast<std::size_t>(k - i - 2)];
      }
    }
  }

  std::shared_ptr<Data> d_;
};

/// Sorted element indices of a subset, with a membership mask.
struct IndexSet {
  std::vector<FiniteGroup::Index> elements;
  std::vector<bool> member;
};

/// Elements of the subgroup generated by `gens` inside `g` (indices of g).
inline IndexSet generated_subgroup(const FiniteGroup& g, const std::vector<FiniteGroup::Index>& gens) {
  IndexSet s;
  s.member.assign(g.order(), false);
  s.member[g.identity()] = true;
  s.elements.push_back(g.identity());
  for (std::size_t head = 0; head < s.elements.size(); ++head) {
    const auto e = s.elements[head];
    for (auto x : gens) {
      const auto k = g.mul(e, x);
      if (!s.member[k]) {
        s.member[k] = true;
        s.elements.push_back(k);
      }
    }
  }
  std::sort(s.elements.begin(), s.elements.end());
  return s;
}

/// A small generating set for the subgroup on `elems` (closed, indices of g), scanning in order.
inline std::vector<FiniteGroup::Index> greedy_generators(const FiniteGroup& g, const std::vector<FiniteGroup::Index>& elems) {
  std::vector<FiniteGroup::Index> gens;
  IndexSet span = generated_subgroup(g, gens);
  for (auto e : elems) {
    if (span.elements.size() >= elems.size()) break;
    if (span.member[e]) continue;
    gens.push_back(e);
    span = generated_subgroup(g, gens);
  }
  return gens;
}

/// The same group with a greedy generating set attached.
inline FiniteGroup with_greedy_generators(const FiniteGroup& g) {
  std::vector<FiniteGroup::Index> all(g.order());
  std::iota(all.begin(), all.end(), FiniteGroup::Index{0});
  return g.subgroup_from_elements(all, greedy_generators(g, all));
}

/// Normal closure of `gens` in g.
inline IndexSet normal_closure(const FiniteGroup& g, const std::vector<FiniteGroup::Index>& gens) {
  std::vector<FiniteGroup::Index> cur = gens;
  while (true) {
    IndexSet s = generated_subgroup(g, cur);
    bool grew = false;
    for (auto x : g.generators()) {
      for (auto h : cur) {
        const auto c = g.conjugate(x, h);
        if (!s.member[c]) {
          cur.push_back(c);
          grew = true;
        }
      }
      if (grew) break;
    }
    if (!grew) return s;
  }
}

}  // namespace isocat
