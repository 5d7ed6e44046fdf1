#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "isocat/error.hpp"
#include "isocat/exact/qz.hpp"

namespace isocat {

using Coords = std::vector<std::int64_t>;

/// Z/n_1 + ... + Z/n_r with elements indexed in little-endian mixed radix.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
    size_ = 1;
    for (auto n : orders_) {
      if (n < 2) throw MathError("cyclic factor orders must be at least 2");
      strides_.push_back(size_);
      size_ *= static_cast<std::size_t>(n);
      if (size_ > (std::size_t{1} << 24)) throw BudgetExceeded("abelian group too large for dense tables");
    }
    if (size_ <= 1024) {
      auto table = std::make_shared<std::vector<std::uint32_t>>(size_ * size_);
      for (std::size_t a = 0; a < size_; ++a)
        for (std::size_t b = 0; b < size_; ++b) (*table)[a * size_ + b] = static_cast<std::uint32_t>(add_slow(a, b));
      add_table_ = std::move(table);
    }
  }

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::size_t size() const { return size_; }
  std::int64_t exponent() const {
    std::int64_t e = 1;
    for (auto n : orders_) e = std::lcm(e, n);
    return e;
  }
  bool homogeneous() const {
    for (auto n : orders_)
      if (n != orders_.front()) return false;
    return true;
  }

  std::int64_t coord(std::size_t x, std::size_t i) const {
    return static_cast<std::int64_t>((x / strides_[i]) % static_cast<std::size_t>(orders_[i]));
  }
  Coords coords(std::size_t x) const {
    Coords c(rank());
    for (std::size_t i = 0; i < rank(); ++i) c[i] = coord(x, i);
    return c;
  }
  std::size_t index(const Coords& c) const {
    if (c.size() != rank()) throw MathError("coordinate vector has wrong length");
    std::size_t x = 0;
    for (std::size_t i = 0; i < rank(); ++i)
      x += static_cast<std::size_t>(((c[i] % orders_[i]) + orders_[i]) % orders_[i]) * strides_[i];
    return x;
  }
  std::size_t generator(std::size_t i) const { return strides_[i]; }

  std::size_t add(std::size_t a, std::size_t b) const {
    if (add_table_) return (*add_table_)[a * size_ + b];
    return add_slow(a, b);
  }
  std::size_t neg(std::size_t a) const {
    std::size_t x = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      const auto n = static_cast<std::size_t>(orders_[i]);
      x += ((n - static_cast<std::size_t>(coord(a, i))) % n) * strides_[i];
    }
    return x;
  }
  std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }
  std::size_t scale(std::size_t a, std::int64_t k) const {
    std::size_t x = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::int64_t n = orders_[i];
      const std::int64_t v = (((coord(a, i) * (k % n)) % n) + n) % n;
      x += static_cast<std::size_t>(v) * strides_[i];
    }
    return x;
  }
  std::int64_t element_order(std::size_t a) const {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::int64_t c = coord(a, i);
      if (c != 0) o = std::lcm(o, orders_[i] / std::gcd(c, orders_[i]));
    }
    return o;
  }

  /// chi_j(x) = sum_i j_i x_i / n_i; characters share the element indexing.
  QZ character(std::size_t j, std::size_t x) const {
    QZ r;
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::int64_t p = coord(j, i) * coord(x, i);
      if (p != 0) r += QZ(p, orders_[i]);
    }
    return r;
  }

  FiniteAbelianGroup direct_sum(const FiniteAbelianGroup& other) const {
    auto o = orders_;
    o.insert(o.end(), other.orders_.begin(), other.orders_.end());
    return FiniteAbelianGroup(o);
  }

  std::string str() const {
    if (orders_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < rank(); ++i) s += (i ? " + Z/" : "Z/") + std::to_string(orders_[i]);
    return s;
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return a.orders_ == b.orders_; }

 private:
  std::size_t add_slow(std::size_t a, std::size_t b) const {
    std::size_t x = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      const auto n = static_cast<std::size_t>(orders_[i]);
      x += ((static_cast<std::size_t>(coord(a, i)) + static_cast<std::size_t>(coord(b, i))) % n) * strides_[i];
    }
    return x;
  }

  std::vector<std::int64_t> orders_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
  std::shared_ptr<const std::vector<std::uint32_t>> add_table_;
};

/// Automorphism given by the images of the standard generators.
struct AbelianAutomorphism {
  std::vector<std::size_t> images;

  std::size_t apply(const FiniteAbelianGroup& v, std::size_t x) const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < v.rank(); ++i) {
      const std::int64_t c = v.coord(x, i);
      if (c != 0) r = v.add(r, v.scale(images[i], c));
    }
    return r;
  }
  /// Image of every element, indexed by element.
  std::vector<std::size_t> permutation(const FiniteAbelianGroup& v) const {
    std::vector<std::size_t> p(v.size());
    for (std::size_t x = 0; x < v.size(); ++x) p[x] = apply(v, x);
    return p;
  }

  static AbelianAutomorphism identity(const FiniteAbelianGroup& v) {
    AbelianAutomorphism a;
    for (std::size_t i = 0; i < v.rank(); ++i) a.images.push_back(v.generator(i));
    return a;
  }

  friend bool operator==(const AbelianAutomorphism&, const AbelianAutomorphism&) = default;
};

/// outer o inner
inline AbelianAutomorphism compose(const FiniteAbelianGroup& v, const AbelianAutomorphism& outer,
                                   const AbelianAutomorphism& inner) {
  AbelianAutomorphism r;
  r.images.reserve(v.rank());
  for (auto img : inner.images) r.images.push_back(outer.apply(v, img));
  return r;
}

/// Key encoding sum_i images[i] * |V|^i (fits 64 bits for every group in scope).
inline std::uint64_t encode(const FiniteAbelianGroup& v, const AbelianAutomorphism& a) {
  std::uint64_t k = 0, base = 1;
  for (auto img : a.images) {
    k += img * base;
    base *= v.size();
  }
  return k;
}
inline AbelianAutomorphism decode_automorphism(const FiniteAbelianGroup& v, std::uint64_t key) {
  AbelianAutomorphism a;
  for (std::size_t i = 0; i < v.rank(); ++i) {
    a.images.push_back(static_cast<std::size_t>(key % v.size()));
    key /= v.size();
  }
  return a;
}

/// True when generator images respect orders and the induced map is bijective.
inline bool is_automorphism(const FiniteAbelianGroup& v, const AbelianAutomorphism& a) {
  if (a.images.size() != v.rank()) return false;
  for (std::size_t i = 0; i < v.rank(); ++i)
    if (v.orders()[i] % v.element_order(a.images[i]) != 0) return false;
  std::vector<bool> hit(v.size(), false);
  for (std::size_t x = 0; x < v.size(); ++x) {
    const std::size_t y = a.apply(v, x);
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

/// All automorphisms of V by backtracking over generator images.
inline std::vector<AbelianAutomorphism> aut_group(const FiniteAbelianGroup& v, std::size_t budget = kDefaultBudget) {
  if (v.size() > 4096) throw BudgetExceeded("aut_group: |V| > 2^12; supply generators instead");
  std::vector<AbelianAutomorphism> out;
  AbelianAutomorphism cur;
  // Elements reachable from the images chosen so far, to prune dependent choices early.
  std::function<void(std::size_t, std::vector<bool>&, std::size_t)> rec = [&](std::size_t i, std::vector<bool>& span,
                                                                             std::size_t span_size) {
    if (i == v.rank()) {
      if (span_size == v.size()) {
        out.push_back(cur);
        if (out.size() > budget) throw BudgetExceeded("aut_group: more automorphisms than the budget");
      }
      return;
    }
    const std::int64_t n = v.orders()[i];
    for (std::size_t y = 0; y < v.size(); ++y) {
      if (v.element_order(y) != n) continue;
      // <span, y> must have size span_size * n, i.e. k*y not in span for 0 < k < n.
      bool independent = true;
      for (std::int64_t k = 1; k < n && independent; ++k)
        if (span[v.scale(y, k)]) independent = false;
      if (!independent) continue;
      std::vector<bool> next(v.size(), false);
      std::size_t next_size = 0;
      for (std::size_t s = 0; s < v.size(); ++s) {
        if (!span[s]) continue;
        for (std::int64_t k = 0; k < n; ++k) {
          const std::size_t z = v.add(s, v.scale(y, k));
          if (!next[z]) {
            next[z] = true;
            ++next_size;
          }
        }
      }
      if (next_size != span_size * static_cast<std::size_t>(n)) continue;
      cur.images.push_back(y);
      rec(i + 1, next, next_size);
      cur.images.pop_back();
    }
  };
  std::vector<bool> span(v.size(), false);
  span[0] = true;
  rec(0, span, 1);
  return out;
}

}  // namespace isocat
