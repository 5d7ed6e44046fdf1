#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "isocat/error.hpp"

namespace isocat {

/// A root of unity e^{2 pi i a/b}, stored additively as the reduced fraction a/b in Q/Z.
class QZ {
 public:
  constexpr QZ() = default;

  QZ(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw MathError("QZ denominator must be positive");
    num %= den;
    if (num < 0) num += den;
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  /// Multiplicative order of the root of unity.
  std::int64_t order() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend QZ operator+(QZ a, QZ b) {
    const std::int64_t l = std::lcm(a.den_, b.den_);
    return QZ(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
  }
  friend QZ operator-(QZ a, QZ b) { return a + (-b); }
  QZ operator-() const { return QZ(den_ - num_, den_); }
  QZ& operator+=(QZ o) { return *this = *this + o; }
  QZ& operator-=(QZ o) { return *this = *this - o; }

  /// k-th power of the root of unity.
  QZ times(std::int64_t k) const {
    const std::int64_t r = ((k % den_) + den_) % den_;
    return QZ(num_ * r, den_);
  }
  /// A fixed n-th root: a/b -> a/(bn).
  QZ divided_by(std::int64_t n) const { return QZ(num_, den_ * n); }

  bool divides_order(std::int64_t m) const { return m % den_ == 0; }

  friend bool operator==(const QZ&, const QZ&) = default;
  friend auto operator<=>(const QZ&, const QZ&) = default;

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  static QZ parse(std::string_view s) {
    const auto slash = s.find('/');
    try {
      if (slash == std::string_view::npos) return QZ(std::stoll(std::string(s)), 1);
      return QZ(std::stoll(std::string(s.substr(0, slash))), std::stoll(std::string(s.substr(slash + 1))));
    } catch (const std::logic_error&) {
      throw InputError("malformed root of unity '" + std::string(s) + "'");
    }
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct QZHash {
  std::size_t operator()(const QZ& q) const noexcept {
    return std::hash<std::int64_t>{}(q.num() * 1000003 + q.den());
  }
};

}  // namespace isocat
