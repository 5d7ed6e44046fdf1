#include <gtest/gtest.h>

#include <functional>

#include "isocat/group/sylow.hpp"
#include "isocat/quadform/quadform.hpp"

using namespace isocat;

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Textbook orders.
std::uint64_t sp_order(std::uint64_t q, int k) {
  std::uint64_t r = ipow(q, k * k);
  for (int i = 1; i <= k; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}
std::uint64_t o_even_order(std::uint64_t q, int k, int eps) {
  std::uint64_t r = 2 * ipow(q, k * (k - 1)) * (ipow(q, k) - eps);
  for (int i = 1; i < k; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

// Every function V -> {0, 1/2} that is a quadratic function (q(0) = 0, polar a bicharacter).
std::vector<QuadraticModule> all_mu2_quadratic(const FiniteAbelianGroup& v) {
  std::vector<QuadraticModule> out;
  for (std::uint64_t mask = 0; mask < (1ULL << v.size()); ++mask) {
    if (mask & 1) continue;
    QuadraticModule m{v, std::vector<QZ>(v.size())};
    for (std::size_t x = 0; x < v.size(); ++x) m.q[x] = (mask >> x) & 1 ? QZ(1, 2) : QZ();
    if (!quadratic_violation(m, false)) out.push_back(m);
  }
  return out;
}

QuadraticModule f2_form(int dim, bool minus = false) { return trace_quadratic(standard_quadratic_f2(dim, minus)); }

}  // namespace

TEST(FiniteField, AxiomsAndTrace) {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {5, 1}}) {
    const FiniteField f(p, n);
    const int q = f.q();
    for (int a = 1; a < q; ++a) {
      int inverses = 0;
      for (int b = 1; b < q; ++b) inverses += f.mul(a, b) == 1;
      EXPECT_EQ(inverses, 1) << p << "^" << n << " element " << a;
    }
    std::vector<int> fibre(static_cast<std::size_t>(p), 0);
    for (int a = 0; a < q; ++a) {
      ++fibre[static_cast<std::size_t>(f.trace(a))];
      for (int b = 0; b < q; ++b) {
        EXPECT_EQ(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p);
        for (int c = 0; c < q; c += 3) EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
    // Trace is onto F_p with equal fibres.
    for (int c : fibre) EXPECT_EQ(c, q / p);
  }
  EXPECT_THROW(FiniteField(4, 1), MathError);
}

TEST(TraceForms, SymplecticOverF3AndF4) {
  const auto m3 = trace_symplectic(standard_symplectic(3, 1, 2));
  EXPECT_EQ(m3.v.size(), 9u);
  EXPECT_TRUE(is_skew(m3.omega));
  EXPECT_EQ(symplectic_group(m3).order(), sp_order(3, 1));

  // Restriction of scalars: Sp_2(4) sits inside Sp_4(2).
  const auto m4 = trace_symplectic(standard_symplectic(2, 2, 2));
  EXPECT_EQ(m4.v.orders(), (std::vector<std::int64_t>{2, 2, 2, 2}));
  EXPECT_EQ(radical(m4.omega).size(), 1u);
  EXPECT_EQ(symplectic_group(m4).order(), sp_order(2, 2));
}

TEST(TraceForms, DegenerateAndDefectiveAreRejected) {
  LinearFormSpace s = standard_symplectic(3, 1, 2);
  s.coeffs = {{0, 0}, {0, 0}};
  EXPECT_THROW(trace_symplectic(s), MathError);
  s.coeffs = {{1, 0}, {0, 0}};
  EXPECT_THROW(trace_symplectic(s), MathError);

  LinearFormSpace q = standard_quadratic_f2(2);
  q.coeffs = {{1, 0}, {0, 0}};  // x1^2 has zero polar form
  EXPECT_THROW(trace_quadratic(q), MathError);
  q.coeffs = {{0, 1}, {1, 0}};
  EXPECT_THROW(trace_quadratic(q), MathError);
}

TEST(TraceForms, QuadraticOverF4IsPlusType) {
  LinearFormSpace s;
  s.p = 2;
  s.n = 2;
  s.dim = 2;
  s.kind = LinearFormSpace::Kind::quadratic;
  s.coeffs = {{0, 1}, {0, 0}};
  const auto m = trace_quadratic(s);
  std::size_t zeros = 0;
  for (const auto& x : m.q) zeros += x.is_zero();
  // A plus-type form on F_2^4 has 2^3 + 2^1 zeros.
  EXPECT_EQ(zeros, 10u);
  EXPECT_EQ(orthogonal_group(m).order(), o_even_order(2, 2, +1));
}

TEST(TraceSection, AllQuadraticFunctionsOnSmallModules) {
  for (const auto& v : {FiniteAbelianGroup({2, 2}), FiniteAbelianGroup({2, 2, 2})}) {
    const auto forms = all_mu2_quadratic(v);
    EXPECT_EQ(forms.size(), v.size() == 4 ? 8u : 64u);
    for (const auto& m : forms) {
      const auto b = quad_trace_section(m);
      EXPECT_TRUE(is_bicharacter(b));
      EXPECT_EQ(trace_of(b), m.q);
      // The symmetrization of b is the polar form.
      for (std::size_t x = 0; x < v.size(); ++x)
        for (std::size_t y = 0; y < v.size(); ++y) EXPECT_EQ(b(x, y) + b(y, x), m.polar()(x, y));
    }
  }
}

TEST(TraceSection, OddModuleAndValueRange) {
  LinearFormSpace s;
  s.p = 3;
  s.n = 1;
  s.dim = 2;
  s.kind = LinearFormSpace::Kind::quadratic;
  s.coeffs = {{1, 0}, {0, 1}};
  const auto m = trace_quadratic(s);
  EXPECT_EQ(trace_of(quad_trace_section(m)), m.q);

  // q(x) = x^2 / 4 on Z/2 is quadratic but no bicharacter has it as trace.
  const QuadraticModule bad{FiniteAbelianGroup({2}), {QZ(), QZ(1, 4)}};
  EXPECT_FALSE(quadratic_violation(bad).has_value());
  EXPECT_THROW(quad_trace_section(bad), MathError);
}

TEST(SkewSection, AllAlternatingFormsOnZ2Cubed) {
  const FiniteAbelianGroup v({2, 2, 2});
  int count = 0;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<std::vector<QZ>> mat(3, std::vector<QZ>(3));
    const std::pair<int, int> slots[] = {{0, 1}, {0, 2}, {1, 2}};
    for (int k = 0; k < 3; ++k)
      if (mask >> k & 1) {
        mat[static_cast<std::size_t>(slots[k].first)][static_cast<std::size_t>(slots[k].second)] = QZ(1, 2);
        mat[static_cast<std::size_t>(slots[k].second)][static_cast<std::size_t>(slots[k].first)] = QZ(1, 2);
      }
    const auto b = bicharacter_from_matrix(v, mat);
    ASSERT_TRUE(is_skew(b));
    const auto eta = skew_c01_section(b);
    EXPECT_EQ(delta1(eta), b);
    EXPECT_TRUE(is_c01(eta));
    ++count;
  }
  EXPECT_EQ(count, 8);
}

TEST(SkewSection, ReachAndLimits) {
  const FiniteAbelianGroup v({4, 4});
  const auto half = bicharacter_from_matrix(v, {{QZ(), QZ(1, 2)}, {QZ(1, 2), QZ()}});
  EXPECT_EQ(delta1(skew_c01_section(half)), half);
  const auto quarter = bicharacter_from_matrix(v, {{QZ(), QZ(1, 4)}, {QZ(3, 4), QZ()}});
  EXPECT_THROW(skew_c01_section(quarter), MathError);
  const FiniteAbelianGroup mixed({2, 4});
  EXPECT_THROW(skew_c01_section(Bicharacter(mixed)), MathError);
}

TEST(Orthogonal, OrdersMatchFormulas) {
  EXPECT_EQ(orthogonal_group(f2_form(2)).order(), o_even_order(2, 1, +1));
  EXPECT_EQ(orthogonal_group(f2_form(2, true)).order(), o_even_order(2, 1, -1));
  EXPECT_EQ(orthogonal_group(f2_form(4)).order(), o_even_order(2, 2, +1));
  EXPECT_EQ(orthogonal_group(f2_form(4, true)).order(), o_even_order(2, 2, -1));
  // Reflections generate O^-_4(2) but not O^+_4(2) (the exceptional case).
  EXPECT_EQ(orthogonal_group(f2_form(4, true), kDefaultBudget, GroupRoute::generators).order(), 120u);
  EXPECT_LT(orthogonal_group(f2_form(4), kDefaultBudget, GroupRoute::generators).order(), 72u);
}

TEST(Orthogonal, PlusSixHasOrder40320) {
  const auto m = f2_form(6);
  const auto o = orthogonal_group(m);
  EXPECT_EQ(o.order(), 40320u);
  EXPECT_EQ(o.order(), o_even_order(2, 3, +1));
  EXPECT_EQ(sylow2(o).order(), 128u);
  for (FiniteGroup::Index i = 0; i < o.order(); i += 997) EXPECT_TRUE(preserves(m, decode_automorphism(m.v, o.key(i))));
  EXPECT_EQ(dickson_omega(m.v, o).order(), 20160u);
}

TEST(Orthogonal, CharacterizationAgreesOnF2Four) {
  for (bool minus : {false, true}) {
    const auto m = f2_form(4, minus);
    const auto b = quad_trace_section(m);
    std::size_t in_o = 0;
    for (const auto& g : aut_group(m.v)) {
      const auto w = orthogonality_witness(b, g);
      ASSERT_EQ(w.has_value(), preserves(m, g));
      if (w) {
        ++in_o;
        EXPECT_EQ(delta1(*w), transport(b, g) - b);
      }
    }
    EXPECT_EQ(in_o, o_even_order(2, 2, minus ? -1 : +1));
  }
}

TEST(Orthogonal, StrictlyInsideSymplectic) {
  const auto m = f2_form(4);
  const SymplecticModule s{m.v, m.polar()};
  const auto sp = symplectic_group(s);
  const auto o = orthogonal_group(m);
  EXPECT_EQ(sp.order(), sp_order(2, 2));
  EXPECT_EQ(sp.order(), symplectic_group(s, kDefaultBudget, GroupRoute::generators).order());
  EXPECT_LT(o.order(), sp.order());
  bool found = false;
  for (FiniteGroup::Index i = 0; i < sp.order() && !found; ++i) {
    const auto g = decode_automorphism(m.v, sp.key(i));
    if (!preserves(m, g)) {
      found = true;
      EXPECT_FALSE(orthogonality_witness(m, g).has_value());
    }
  }
  EXPECT_TRUE(found);
}

TEST(Dickson, IndexTwoAndReflectionsAreOdd) {
  const auto m = f2_form(4);
  const auto o = orthogonal_group(m);
  EXPECT_EQ(dickson_omega(m.v, o).order() * 2, o.order());
  for (std::size_t x = 1; x < m.v.size(); ++x)
    if (m.q[x] == QZ(1, 2)) {
      const auto r = reflection(m, x);
      EXPECT_TRUE(preserves(m, r));
      EXPECT_EQ(dickson_invariant(m.v, r), 1);
    }
}

TEST(Symplectic, TransvectionsGenerate) {
  const auto m = trace_symplectic(standard_symplectic(3, 1, 2));
  for (std::size_t x = 1; x < m.v.size(); ++x) EXPECT_TRUE(preserves(m, transvection(m, x)));
  EXPECT_EQ(symplectic_group(m, kDefaultBudget, GroupRoute::generators).order(), 24u);
}
