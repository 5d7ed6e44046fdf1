#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "isocat/fingerprint/fingerprint.hpp"
#include "isocat/weil/weil.hpp"

using namespace isocat;

namespace {

FiniteGroup cyclic(std::int64_t n) { return abelian_as_group(FiniteAbelianGroup({n})); }

// Z/4 extended by Z/2 acting by -1, with theta(1, 1) = t: t = 0 gives D8, t = 2 gives Q8.
FiniteGroup dihedral_or_quaternion(std::size_t t) {
  const FiniteAbelianGroup n({4});
  const auto x = cyclic(2);
  std::vector<std::size_t> action(8);
  for (std::size_t m = 0; m < 4; ++m) {
    action[x.identity() * 4 + m] = m;
    action[(1 - x.identity()) * 4 + m] = n.neg(m);
  }
  CrossedSystem cs = semidirect_system(n, x, action);
  cs.theta[(1 - x.identity()) * 2 + (1 - x.identity())] = t;
  return crossed_product(cs);
}

// The same group with element ids shuffled.
FiniteGroup relabel(const FiniteGroup& g, std::uint64_t seed) {
  std::vector<FiniteGroup::Key> to(g.order());
  std::iota(to.begin(), to.end(), FiniteGroup::Key{100});
  std::mt19937_64 rng(seed);
  std::shuffle(to.begin(), to.end(), rng);
  auto from = std::make_shared<std::unordered_map<FiniteGroup::Key, FiniteGroup::Index>>();
  for (FiniteGroup::Index i = 0; i < g.order(); ++i) (*from)[to[i]] = i;
  auto fwd = std::make_shared<std::vector<FiniteGroup::Key>>(to);
  FiniteGroup::Op op = [g, from, fwd](FiniteGroup::Key a, FiniteGroup::Key b) {
    return (*fwd)[g.mul(from->at(a), from->at(b))];
  };
  std::vector<FiniteGroup::Key> gens;
  for (auto x : g.generators()) gens.push_back(to[x]);
  std::vector<FiniteGroup::Key> keys = to;
  std::shuffle(keys.begin(), keys.end(), rng);
  return FiniteGroup::from_elements(keys, to[g.identity()], op, gens);
}

void expect_same(const GroupFingerprint& a, const GroupFingerprint& b) {
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.order_histogram, b.order_histogram);
  EXPECT_EQ(a.center, b.center);
  EXPECT_EQ(a.derived, b.derived);
  EXPECT_EQ(a.abelianization, b.abelianization);
  EXPECT_EQ(a.exponent, b.exponent);
  EXPECT_EQ(a.squares, b.squares);
  EXPECT_EQ(a.classes, b.classes);
}

}  // namespace

TEST(Fingerprint, CyclicVersusKlein) {
  const auto c = distinguish(cyclic(4), abelian_as_group(FiniteAbelianGroup({2, 2})));
  ASSERT_FALSE(c.inconclusive);
  EXPECT_EQ(c.invariant, "order_histogram");
  EXPECT_EQ(c.value_a, "{1: 1, 2: 1, 4: 2}");
  EXPECT_EQ(c.value_b, "{1: 1, 2: 3}");
  EXPECT_EQ(c.chain_position, 1u);
}

TEST(Fingerprint, DihedralVersusQuaternion) {
  const auto d8 = dihedral_or_quaternion(0);
  const auto q8 = dihedral_or_quaternion(2);
  const auto fd = fingerprint(d8);
  const auto fq = fingerprint(q8);
  EXPECT_EQ(fd.order_histogram.at(2), 5u);
  EXPECT_EQ(fq.order_histogram.at(2), 1u);
  // Everything the character table sees agrees.
  EXPECT_EQ(fd.center, 2u);
  EXPECT_EQ(fq.center, 2u);
  EXPECT_EQ(fd.classes, fq.classes);
  EXPECT_EQ(fd.abelianization, (std::vector<std::int64_t>{2, 2}));
  EXPECT_EQ(distinguish(d8, q8).invariant, "order_histogram");
}

TEST(Fingerprint, AbelianInvariants) {
  const auto g = abelian_as_group(FiniteAbelianGroup({2, 4, 3, 9}));
  const auto f = fingerprint(g);
  EXPECT_EQ(f.abelianization, (std::vector<std::int64_t>{2, 3, 4, 9}));
  EXPECT_EQ(f.derived, 1u);
  EXPECT_EQ(f.center, g.order());
  EXPECT_EQ(f.exponent, 36);
  EXPECT_EQ(f.classes, g.order());
}

TEST(Fingerprint, InvariantUnderRelabeling) {
  const auto nd = semireal_datum(standard_f2_symplectic(2));
  const auto g = weil_group(weil_system(nd.pair, nd.st));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto h = relabel(g, seed);
    expect_same(fingerprint(g), fingerprint(h));
    EXPECT_TRUE(distinguish(g, h).inconclusive);
  }
}

TEST(Fingerprint, IsomorphicCopiesAreInconclusive) {
  const auto a = cyclic(6);
  const auto b = abelian_as_group(FiniteAbelianGroup({2, 3}));
  const auto c = distinguish(a, b);
  EXPECT_TRUE(c.inconclusive);
  EXPECT_EQ(c.chain.front(), "order");
  EXPECT_EQ(distinguish(a, cyclic(5)).invariant, "order");
}

TEST(Complement, SemidirectMemberSplits) {
  const auto nd = pseudo_symplectic_datum(trace_quadratic(standard_quadratic_f2(4)));
  const auto pair = build_isocat_pair(nd.pair, nd.st, false);
  for (const auto* g : {&pair.semidirect, &pair.crossed}) {
    const auto s = split_invariant(*g);
    EXPECT_EQ(s.prime, 2);
    EXPECT_EQ(s.subgroup_order, 16u);
    ASSERT_TRUE(s.splits.has_value());
    // In dimension 4 the crossed member splits too, so the two groups are isomorphic.
    EXPECT_TRUE(*s.splits);
  }
  EXPECT_TRUE(distinguish(pair.semidirect, pair.crossed).inconclusive);
}

TEST(Complement, DicyclicDoesNotSplitOverItsCenter) {
  EXPECT_EQ(split_invariant(dihedral_or_quaternion(2)).prime, 0);  // a p-group
  // Z/3 x| Z/4 with the generator inverting: O_2 is the central Z/2, and the quotient S_3 does
  // not lift because the group has a single involution.
  const FiniteAbelianGroup n({3});
  const auto x = cyclic(4);
  std::vector<std::size_t> action(12);
  for (FiniteGroup::Index g = 0; g < 4; ++g)
    for (std::size_t m = 0; m < 3; ++m) action[g * 3 + m] = x.key(g) % 2 ? n.neg(m) : m;
  const auto dic = crossed_product(semidirect_system(n, x, action));
  const auto s = split_invariant(dic);
  EXPECT_EQ(s.prime, 2);
  EXPECT_EQ(s.subgroup_order, 2u);
  EXPECT_FALSE(s.splits.value());
  // Z/4 x Z/3 splits over O_2 = Z/4.
  const auto t = split_invariant(abelian_as_group(FiniteAbelianGroup({4, 3})));
  EXPECT_EQ(t.subgroup_order, 4u);
  EXPECT_TRUE(t.splits.value());
}

TEST(Distinguish, SylowPairOfOrder8192) {
  const auto nd = pseudo_symplectic_datum(trace_quadratic(standard_quadratic_f2(6)), StRestriction::sylow2);
  ASSERT_EQ(nd.st.order(), 128u);
  const auto pair = build_isocat_pair(nd.pair, nd.st);
  ASSERT_EQ(pair.semidirect.order(), 8192u);
  ASSERT_EQ(pair.crossed.order(), 8192u);
  const auto c = distinguish(pair.semidirect, pair.crossed);
  ASSERT_FALSE(c.inconclusive);
  EXPECT_NE(c.value_a, c.value_b);
  EXPECT_EQ(c.chain[c.chain_position], c.invariant);
}
