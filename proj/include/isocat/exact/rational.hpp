#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "isocat/error.hpp"

namespace isocat {

using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// Always "p/q", including integers ("3/1").
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(std::string_view s) {
  try {
    Rational r(std::string{s});
    if (r.get_den() == 0) throw InputError("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw InputError("malformed rational '" + std::string(s) + "'");
  }
}

}  // namespace isocat
