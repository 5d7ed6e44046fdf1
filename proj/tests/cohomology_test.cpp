#include <gtest/gtest.h>

#include <random>
#include <set>

#include "isocat/cohomology/cochain.hpp"
#include "isocat/cohomology/relative.hpp"

using namespace isocat;

namespace {

Cochain1 random_cochain(const FiniteAbelianGroup& n, std::int64_t den, std::mt19937& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, den - 1);
  Cochain1 eta(n);
  for (std::size_t x = 1; x < n.size(); ++x) eta.values[x] = QZ(d(rng), den);
  return eta;
}

// Standard form on (Z/3)^2: omega(x, y) = (x2 y1 - x1 y2)/3.
Bicharacter standard_omega3() {
  const FiniteAbelianGroup v({3, 3});
  return bicharacter_from_matrix(v, {{QZ(), QZ(2, 3)}, {QZ(1, 3), QZ()}});
}

// Independent delta2 straight from the bar-resolution formula.
bool oracle_is_cocycle(const Cochain2& s) {
  const auto& n = s.group;
  for (std::size_t x = 0; x < n.size(); ++x)
    for (std::size_t y = 0; y < n.size(); ++y)
      for (std::size_t z = 0; z < n.size(); ++z) {
        const QZ d = s(y, z) - s(n.add(x, y), z) + s(x, n.add(y, z)) - s(x, y);
        if (!d.is_zero()) return false;
      }
  return true;
}

}  // namespace

TEST(Delta, Examples) {
  const FiniteAbelianGroup z2({2});
  EXPECT_EQ(delta1(Cochain1(z2)), Cochain2(z2));
  Cochain1 eta(z2);
  eta.values[1] = QZ(1, 4);
  EXPECT_EQ(delta1(eta)(1, 1), QZ(1, 2));
}

TEST(Delta, DeltaSquaredVanishes) {
  std::mt19937 rng(5);
  for (const auto& n : {FiniteAbelianGroup({6, 6}), FiniteAbelianGroup({2, 2, 2})}) {
    for (int i = 0; i < 100; ++i) {
      const auto d = delta1(random_cochain(n, 12, rng));
      EXPECT_TRUE(oracle_is_cocycle(d));
      EXPECT_TRUE(is_cocycle(d));
      EXPECT_TRUE(is_symmetric(d));
    }
  }
}

TEST(Alt, Examples) {
  const FiniteAbelianGroup v({3, 3});
  const auto sigma = bicharacter_from_matrix(v, {{QZ(), QZ()}, {QZ(1, 3), QZ()}});  // x2 y1 / 3
  for (std::size_t x = 0; x < 9; ++x)
    for (std::size_t y = 0; y < 9; ++y)
      EXPECT_EQ(alt(sigma)(x, y), QZ(v.coord(x, 1) * v.coord(y, 0) - v.coord(x, 0) * v.coord(y, 1), 3));
  EXPECT_EQ(alt(sigma), standard_omega3());
  EXPECT_EQ(alt_section(standard_omega3()), sigma);
  EXPECT_EQ(alt_section(Bicharacter(v)), Cochain2(v));
  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(alt(delta1(random_cochain(v, 9, rng))), Bicharacter(v));
}

TEST(Alt, IsAHomomorphism) {
  const FiniteAbelianGroup v({2, 4});
  const auto a = bicharacter_from_matrix(v, {{QZ(1, 2), QZ(1, 2)}, {QZ(), QZ(1, 4)}});
  const auto b = bicharacter_from_matrix(v, {{QZ(), QZ()}, {QZ(1, 2), QZ(3, 4)}});
  EXPECT_EQ(alt(a + b), alt(a) + alt(b));
}

TEST(Alt, SectionInvertsAltOnAllSkewFormsOfRank3) {
  const FiniteAbelianGroup v({2, 2, 2});
  int count = 0;
  for (int code = 0; code < 8; ++code) {
    std::vector<std::vector<QZ>> m(3, std::vector<QZ>(3));
    int bit = 0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j, ++bit)
        if (code >> bit & 1) m[i][j] = m[j][i] = QZ(1, 2);
    const auto w = bicharacter_from_matrix(v, m);
    ASSERT_TRUE(is_skew(w));
    EXPECT_EQ(alt(alt_section(w)), w);
    ++count;
  }
  EXPECT_EQ(count, 8);
}

TEST(Nondegenerate, Examples) {
  EXPECT_FALSE(nondegenerate(Cochain2(FiniteAbelianGroup({3, 3}))));
  EXPECT_TRUE(nondegenerate(alt_section(standard_omega3())));
  const FiniteAbelianGroup z4({4});
  for (int k = 0; k < 4; ++k) EXPECT_FALSE(nondegenerate(bicharacter_from_matrix(z4, {{QZ(k, 4)}})));
  // Agreement with the radical of Alt.
  const FiniteAbelianGroup v({2, 2, 2});
  for (int code = 0; code < 512; code += 7) {
    std::vector<std::vector<QZ>> m(3, std::vector<QZ>(3));
    for (std::size_t i = 0; i < 9; ++i)
      if (code >> i & 1) m[i / 3][i % 3] = QZ(1, 2);
    const auto s = bicharacter_from_matrix(v, m);
    EXPECT_EQ(nondegenerate(s), radical(alt(s)).size() == 1);
  }
}

TEST(Cohomologous, KernelOfAltWithMu4Values) {
  // Enumerate normalized mu_4-valued 2-cocycles on (Z/2)^2 and compare with coboundaries.
  const FiniteAbelianGroup v({2, 2});
  std::set<std::vector<QZ>> kernel, cobound4, cobound8;
  for (std::size_t code = 0; code < (1u << 18); ++code) {
    Cochain2 s(v);
    std::size_t c = code;
    for (std::size_t x = 1; x < 4; ++x)
      for (std::size_t y = 1; y < 4; ++y) {
        s.at(x, y) = QZ(static_cast<std::int64_t>(c % 4), 4);
        c /= 4;
      }
    if (is_cocycle(s) && alt(s) == Bicharacter(v)) kernel.insert(s.values);
  }
  for (std::size_t code = 0; code < 64; ++code) {
    Cochain1 eta(v);
    for (std::size_t x = 1; x < 4; ++x) eta.values[x] = QZ(static_cast<std::int64_t>((code >> (2 * (x - 1))) & 3), 4);
    cobound4.insert(delta1(eta).values);
  }
  for (std::size_t code = 0; code < 512; ++code) {
    Cochain1 eta(v);
    for (std::size_t x = 1; x < 4; ++x) eta.values[x] = QZ(static_cast<std::int64_t>((code >> (3 * (x - 1))) & 7), 8);
    const auto d = delta1(eta);
    if (values_in(d.values, 4)) cobound8.insert(d.values);
  }
  // mu_4 is not divisible: the Z/8-extension class x1 y1 / 4 survives.
  EXPECT_EQ(cobound4.size(), 16u);
  EXPECT_EQ(kernel.size(), 64u);
  EXPECT_EQ(kernel, cobound8);
  for (const auto& b : cobound4) EXPECT_TRUE(kernel.count(b));
  Cochain2 carry(v);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) carry.at(x, y) = QZ(v.coord(x, 0) * v.coord(y, 0), 4);
  EXPECT_TRUE(kernel.count(carry.values));
  EXPECT_FALSE(cobound4.count(carry.values));
  // Over Q/Z the solver finds a witness, necessarily of order 8.
  const auto w = cohomologous(Cochain2(v), carry);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(delta1(*w), carry);
  EXPECT_FALSE(cohomologous(Cochain2(v), carry, 4).has_value());
}

TEST(RelCocycle, Examples) {
  const GaloisSetting st(FiniteAbelianGroup({2, 2}), CyclotomicField(4, {3}));
  EXPECT_TRUE(check_rel_cocycle(RelCochain2(st, Cochain2(st.n()), std::vector<QZ>(st.s().size() * 4))).ok);
  std::mt19937 rng(1);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(check_rel_cocycle(rel_coboundary(st, random_cochain(st.n(), 4, rng))).ok);
  const auto sigma = bicharacter_from_matrix(st.n(), {{QZ(), QZ()}, {QZ(1, 2), QZ()}});
  const auto pair = torsor_pair(st, sigma);
  EXPECT_TRUE(check_rel_cocycle(pair).ok);
  EXPECT_TRUE(in_normalized_subgroup(pair));
  auto bad = pair;
  bad.g_at(st.embed_gamma(1), 1) = QZ(1, 4);
  const auto rep = check_rel_cocycle(bad);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.equation, "C2");
}

TEST(Normalize, NormalizedInputIsFixed) {
  const GaloisSetting st(FiniteAbelianGroup({3, 3}), CyclotomicField(3, {}));
  const auto pair = torsor_pair(st, alt_section(standard_omega3()));
  const auto r = normalize_pair(pair);
  EXPECT_EQ(r.pair, pair);
  EXPECT_EQ(r.witness, Cochain1(st.n()));
}

TEST(Normalize, FormulaIsAltForBicharacters) {
  const FiniteAbelianGroup v({2, 4});
  for (int code = 0; code < 64; ++code) {
    const auto s = bicharacter_from_matrix(v, {{QZ(code & 1, 2), QZ(code >> 1 & 1, 2)},
                                               {QZ(code >> 2 & 1, 2), QZ(code >> 3 & 3, 4)}});
    EXPECT_EQ(normalization_gamma(s), alt(s));
  }
}

TEST(Normalize, AgreesWithBruteForceWitnessSearch) {
  // (Z/2)^2, S = N: search all 64 mu_4-valued witnesses for a normalized representative.
  const GaloisSetting st(FiniteAbelianGroup({2, 2}), CyclotomicField(4, {}));
  const auto sigma = bicharacter_from_matrix(st.n(), {{QZ(1, 2), QZ()}, {QZ(1, 2), QZ()}});
  const auto good = torsor_pair(st, sigma);
  auto skewed = good;
  // Add a symmetric bicharacter on the N x N block: still a cocycle, no longer normalized.
  const auto beta = bicharacter_from_matrix(st.n(), {{QZ(1, 2), QZ()}, {QZ(), QZ()}});
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) skewed.g_at(x, y) += beta(x, y);
  ASSERT_TRUE(check_rel_cocycle(skewed).ok);
  auto reachable = [&](const RelCochain2& c) {
    int hits = 0;
    for (std::size_t code = 0; code < 64; ++code) {
      Cochain1 eta(st.n());
      for (std::size_t x = 1; x < 4; ++x) eta.values[x] = QZ(static_cast<std::int64_t>((code >> (2 * (x - 1))) & 3), 4);
      if (in_normalized_subgroup(c + rel_coboundary(st, eta))) ++hits;
    }
    return hits;
  };
  EXPECT_EQ(reachable(good), 64);
  EXPECT_EQ(reachable(skewed), 0);
  EXPECT_NO_THROW(normalize_pair(good));
  EXPECT_THROW(normalize_pair(skewed), MathError);
}

TEST(Cohomologous, RelativeWitnesses) {
  const GaloisSetting st(FiniteAbelianGroup({2, 2}), CyclotomicField(4, {3}));
  const auto a = torsor_pair(st, bicharacter_from_matrix(st.n(), {{QZ(), QZ()}, {QZ(1, 2), QZ()}}));
  const auto w0 = cohomologous_rel(a, a);
  ASSERT_TRUE(w0.has_value());
  EXPECT_EQ(*w0, Cochain1(st.n()));
  std::mt19937 rng(17);
  for (int i = 0; i < 30; ++i) {
    const auto eta = random_cochain(st.n(), 4, rng);
    const auto b = a + rel_coboundary(st, eta);
    const auto w = cohomologous_rel(a, b);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(a + rel_coboundary(st, *w), b);
    // Symmetry by negation and transitivity by sums.
    const auto back = cohomologous_rel(b, a);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(b + rel_coboundary(st, *back), a);
    const auto eta2 = random_cochain(st.n(), 4, rng);
    const auto c = b + rel_coboundary(st, eta2);
    EXPECT_EQ(a + rel_coboundary(st, *w + eta2), c);
    EXPECT_TRUE(cohomologous_rel(a, c).has_value());
  }
  const auto other = torsor_pair(st, Cochain2(st.n()));
  EXPECT_FALSE(cohomologous_rel(a, other).has_value());
}

TEST(Hilbert90, Examples) {
  const GaloisAction conj(4, {3});
  EXPECT_EQ(hilbert90_solve({QZ(), QZ()}, conj), QZ());
  EXPECT_EQ(hilbert90_solve({QZ(), QZ(1, 2)}, conj), QZ(1, 4));
  const GaloisAction g8(8, {7});
  const auto x = hilbert90_solve({QZ(), QZ(1, 4)}, g8);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, QZ(3, 8));
  EXPECT_EQ(g8.apply(7, *x) - *x, QZ(1, 4));
  // Not a cocycle: c(1) must vanish.
  EXPECT_FALSE(hilbert90_solve({QZ(1, 2), QZ()}, conj).has_value());
}

TEST(Hilbert90, TrivializesTheGaloisPart) {
  const GaloisSetting st(FiniteAbelianGroup({2, 2}), CyclotomicField(4, {3}));
  const auto a = torsor_pair(st, bicharacter_from_matrix(st.n(), {{QZ(), QZ()}, {QZ(1, 2), QZ()}}));
  std::mt19937 rng(23);
  const auto b = a + rel_coboundary(st, random_cochain(st.n(), 4, rng));
  const auto t = galois_trivialize(b);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(b + rel_coboundary(st, t->witness), t->pair);
  for (std::size_t x = 0; x < 4; ++x) EXPECT_TRUE(t->pair.g(st.embed_gamma(1), x).is_zero());
  EXPECT_TRUE(check_rel_cocycle(t->pair).ok);
}
