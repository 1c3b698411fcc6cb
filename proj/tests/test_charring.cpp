#include "rsverify/charring.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace rsv;

namespace {

LaurentPoly poly(std::initializer_list<std::pair<Exponent, std::int64_t>> terms) {
  LaurentPoly p;
  for (const auto& [e, c] : terms) p.add(e, c);
  return p;
}

VirtualCharacter vc(std::initializer_list<std::pair<ProductWeight, std::int64_t>> terms) {
  VirtualCharacter v;
  for (const auto& [w, c] : terms) v.add(w, c);
  return v;
}

// Brute-force symmetric power: sum over multisets of the monomials of p
// (each monomial repeated by its coefficient).
LaurentPoly brute_sym_power(const LaurentPoly& p, int l) {
  std::vector<Exponent> eig;
  for (const auto& [e, c] : p.sorted_terms()) {
    EXPECT_GE(c, 0);
    for (std::int64_t i = 0; i < c; ++i) eig.push_back(e);
  }
  LaurentPoly out;
  std::vector<int> idx(l, 0);
  const int n = static_cast<int>(eig.size());
  if (l == 0) return LaurentPoly::constant(1);
  while (true) {
    Exponent e{};
    for (int i : idx) e = e + eig[i];
    out.add(e, 1);
    int pos = l - 1;
    while (pos >= 0 && idx[pos] == n - 1) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < l; ++j) idx[j] = idx[pos];
  }
  return out;
}

}  // namespace

TEST(CharA1, SmallWeights) {
  EXPECT_EQ(char_A1(A1Weight{0}), LaurentPoly::constant(1));
  EXPECT_EQ(char_A1(A1Weight{1}), poly({{{1, 0, 0}, 1}, {{-1, 0, 0}, 1}}));
  const LaurentPoly c3 = char_A1(A1Weight{3});
  EXPECT_EQ(c3, poly({{{3, 0, 0}, 1}, {{1, 0, 0}, 1}, {{-1, 0, 0}, 1}, {{-3, 0, 0}, 1}}));
  EXPECT_EQ(c3.value_at_identity(), 4);
}

TEST(CharA1, RejectsNegativeWeight) { EXPECT_THROW(char_A1(A1Weight{-1}), std::invalid_argument); }

TEST(CharB2, FundamentalRepresentations) {
  EXPECT_EQ(char_B2(B2Weight{0, 0}), LaurentPoly::constant(1));
  EXPECT_EQ(char_B2(B2Weight{1, 0}),
            poly({{{0, 2, 0}, 1}, {{0, -2, 0}, 1}, {{0, 0, 2}, 1}, {{0, 0, -2}, 1}, {{0, 0, 0}, 1}}));
  EXPECT_EQ(char_B2(B2Weight{0, 1}),
            poly({{{0, 1, 1}, 1}, {{0, 1, -1}, 1}, {{0, -1, 1}, 1}, {{0, -1, -1}, 1}}));
}

TEST(CharB2, AdjointHasTwoZeroWeights) {
  // so(5) adjoint B2[0,2]: 8 roots plus a 2-dimensional zero weight space.
  const LaurentPoly adj = char_B2(B2Weight{0, 2});
  EXPECT_EQ(adj.value_at_identity(), 10);
  EXPECT_EQ(adj.coefficient({0, 0, 0}), 2);
  EXPECT_EQ(adj.coefficient({0, 2, 2}), 1);
  EXPECT_EQ(adj.coefficient({0, 2, 0}), 1);
}

TEST(DimIrrep, Examples) {
  EXPECT_EQ(dim_irrep(weight(0, 0, 0)), 1);
  EXPECT_EQ(dim_irrep(weight(0, 1, 0)), 5);
  EXPECT_EQ(dim_irrep(weight(1, 0, 1)), 8);
  EXPECT_EQ(dim_irrep(weight(0, 1, 1)), 16);
  EXPECT_EQ(dim_irrep(weight(0, 2, 0)), 14);
}

TEST(DimIrrep, MatchesCharacterAtIdentity) {
  for (int m = 0; m <= 12; ++m) EXPECT_EQ(char_A1(A1Weight{m}).value_at_identity(), dim_irrep(weight(m, 0, 0)));
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + b <= 8; ++b)
      EXPECT_EQ(char_B2(B2Weight{a, b}).value_at_identity(), dim_irrep(weight(0, a, b))) << a << "," << b;
}

TEST(CharB2, WeylInvariantUpToWeightSum8) {
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + b <= 8; ++b) EXPECT_TRUE(char_B2(B2Weight{a, b}).is_weyl_invariant()) << a << "," << b;
}

TEST(CharB2, HighestWeightHasMultiplicityOne) {
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; a + b <= 5; ++b) {
      const Exponent top = highest_exponent(weight(0, a, b));
      EXPECT_EQ(char_B2(B2Weight{a, b}).coefficient(top), 1);
      EXPECT_EQ(top.e1, 2 * a + b);
      EXPECT_EQ(top.e2, b);
    }
}

TEST(Weight, RejectsNegative) {
  EXPECT_THROW(weight(-1, 0, 0), std::invalid_argument);
  EXPECT_THROW(weight(0, 0, -2), std::invalid_argument);
}

TEST(Decompose, Examples) {
  EXPECT_EQ(decompose(LaurentPoly::constant(1)), VirtualCharacter::trivial());
  EXPECT_EQ(decompose(char_A1(A1Weight{1}) * char_A1(A1Weight{1})), vc({{weight(2, 0, 0), 1}, {weight(0, 0, 0), 1}}));
  const LaurentPoly sq = char_B2(B2Weight{1, 0}) * char_B2(B2Weight{1, 0});
  EXPECT_EQ(decompose(sq), vc({{weight(0, 2, 0), 1}, {weight(0, 0, 2), 1}, {weight(0, 0, 0), 1}}));
}

TEST(Decompose, RejectsNonInvariant) {
  EXPECT_THROW(decompose(poly({{{0, 2, 0}, 1}})), std::invalid_argument);
  EXPECT_THROW(decompose(poly({{{1, 0, 0}, 1}})), std::invalid_argument);
}

TEST(Decompose, VirtualDifference) {
  const LaurentPoly d = char_B2(B2Weight{1, 0}) - LaurentPoly::constant(1);
  EXPECT_EQ(decompose(d), vc({{weight(0, 1, 0), 1}, {weight(0, 0, 0), -1}}));
}

TEST(Decompose, RoundTripOnRandomVirtualCharacters) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    VirtualCharacter v;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      const int a = static_cast<int>(rng() % 7);
      const int b = static_cast<int>(rng() % (7 - a));
      v.add(weight(static_cast<int>(rng() % 7), a, b), static_cast<std::int64_t>(rng() % 7) - 3);
    }
    EXPECT_EQ(decompose(expand(v)), v) << v.to_string();
  }
}

TEST(TensorDecompose, Examples) {
  const auto vec = VirtualCharacter::irreducible(weight(0, 1, 0));
  const auto spin = VirtualCharacter::irreducible(weight(0, 0, 1));
  EXPECT_EQ(tensor_decompose(VirtualCharacter::trivial(), spin), spin);
  EXPECT_EQ(tensor_decompose(spin, vec), vc({{weight(0, 1, 1), 1}, {weight(0, 0, 1), 1}}));
  EXPECT_EQ(tensor_decompose(vec, vec), vc({{weight(0, 2, 0), 1}, {weight(0, 0, 2), 1}, {weight(0, 0, 0), 1}}));
}

TEST(TensorDecompose, ConservesDimensionAndCommutes) {
  for (int a1 = 0; a1 <= 2; ++a1)
    for (int b1 = 0; b1 <= 2; ++b1)
      for (int a2 = 0; a2 <= 2; ++a2)
        for (int b2 = 0; b2 <= 2; ++b2) {
          const auto x = VirtualCharacter::irreducible(weight(1, a1, b1));
          const auto y = VirtualCharacter::irreducible(weight(a2, a2, b2));
          const auto xy = tensor_decompose(x, y);
          EXPECT_EQ(xy.dimension(), x.dimension() * y.dimension());
          EXPECT_EQ(xy, tensor_decompose(y, x));
          EXPECT_TRUE(xy.is_genuine());
        }
}

TEST(SymPower, Examples) {
  const auto vec = VirtualCharacter::irreducible(weight(0, 1, 0));
  EXPECT_EQ(sym_power_decompose(vec, 0), VirtualCharacter::trivial());
  EXPECT_EQ(sym_power_decompose(vec, 1), vec);
  EXPECT_EQ(sym_power_decompose(vec, 2), vc({{weight(0, 2, 0), 1}, {weight(0, 0, 0), 1}}));
}

TEST(SymPower, MatchesMultisetEnumeration) {
  for (const auto& w : {weight(0, 1, 0), weight(1, 0, 1), weight(0, 0, 1), weight(2, 0, 0)})
    for (int l = 0; l <= 4; ++l) {
      const auto v = VirtualCharacter::irreducible(w);
      EXPECT_EQ(sym_power_decompose(v, l), decompose(brute_sym_power(expand(v), l))) << to_string(w) << " l=" << l;
    }
}

TEST(SymPower, RejectsVirtualInput) {
  const auto v = vc({{weight(0, 1, 0), 1}, {weight(0, 0, 0), -1}});
  EXPECT_THROW(sym_power_decompose(v, 2), std::invalid_argument);
  EXPECT_THROW(sym_power_decompose(VirtualCharacter::trivial(), -1), std::invalid_argument);
}

TEST(Pieri, Examples) {
  EXPECT_EQ(pieri_tensor({0, 0, false}, 1), VirtualCharacter::irreducible(weight(0, 1, 0)));
  EXPECT_EQ(pieri_tensor({1, 0, false}, 1), vc({{weight(0, 2, 0), 1}, {weight(0, 0, 2), 1}, {weight(0, 0, 0), 1}}));
  EXPECT_EQ(pieri_tensor({0, 0, true}, 1), vc({{weight(0, 1, 1), 1}, {weight(0, 0, 1), 1}}));
}

TEST(Pieri, PartitionToWeight) {
  EXPECT_EQ((Partition2{3, 1, false}.b2_weight()), (B2Weight{2, 2}));
  EXPECT_EQ((Partition2{3, 1, true}.b2_weight()), (B2Weight{2, 3}));
  EXPECT_THROW((Partition2{1, 2, false}.b2_weight()), std::invalid_argument);
}

TEST(Pieri, MatchesCharacterOracle) {
  for (bool spinor : {false, true})
    for (int r1 = 0; r1 <= 5; ++r1)
      for (int r2 = 0; r2 <= r1; ++r2)
        for (int k = 0; k <= 6; ++k) {
          const Partition2 lam{r1, r2, spinor};
          const B2Weight w = lam.b2_weight();
          const auto oracle = tensor_decompose(VirtualCharacter::irreducible(weight(0, w.a, w.b)),
                                               VirtualCharacter::irreducible(weight(0, k, 0)));
          EXPECT_EQ(pieri_tensor(lam, k), oracle) << r1 << "," << r2 << (spinor ? " spin" : "") << " k=" << k;
        }
}

TEST(Gpsr, Examples) {
  EXPECT_EQ(gpsr_sym(0), VirtualCharacter::trivial());
  EXPECT_EQ(gpsr_sym(1), VirtualCharacter::irreducible(weight(1, 0, 1)));
  const auto two = vc({{weight(0, 0, 0), 1}, {weight(2, 0, 2), 1}, {weight(0, 1, 0), 1}});
  EXPECT_EQ(gpsr_sym(2), two);
  EXPECT_EQ(two.dimension(), 36);
}

TEST(Gpsr, MatchesSymmetricPowers) {
  const auto base = VirtualCharacter::irreducible(weight(1, 0, 1));
  for (int l = 0; l <= 8; ++l) EXPECT_EQ(gpsr_sym(l), sym_power_decompose(base, l)) << "l=" << l;
}

TEST(LaurentPoly, AdamsAndEvaluation) {
  const LaurentPoly p = char_B2(B2Weight{0, 1});
  const LaurentPoly p2 = p.adams(2);
  EXPECT_EQ(p2.coefficient({0, 2, 2}), 1);
  EXPECT_EQ(p2.value_at_identity(), 4);
  // spin character at (y1, y2) = (2, 3): (2 + 1/2)(3 + 1/3)
  EXPECT_EQ(p.evaluate(1, 2, 3), Rational(25, 3));
}

TEST(ExactDivide, ThrowsWhenNotExact) {
  const LaurentPoly den = poly({{{0, 1, 0}, 1}, {{0, 0, 0}, -1}});
  const LaurentPoly num = poly({{{0, 2, 0}, 1}, {{0, 0, 0}, -1}});
  EXPECT_EQ(exact_divide(num, den), poly({{{0, 1, 0}, 1}, {{0, 0, 0}, 1}}));
  EXPECT_THROW(exact_divide(num + LaurentPoly::constant(1), den), std::logic_error);
}

TEST(CharacterTable, SnapshotAndInsert) {
  CharacterTable table;
  EXPECT_EQ(table.b2_size(), 0u);
  (void)table.b2(B2Weight{1, 1});
  EXPECT_EQ(table.b2_size(), 1u);
  const auto snap = table.b2_snapshot();
  CharacterTable other;
  other.insert_b2(snap[0].first, *snap[0].second);
  EXPECT_EQ(*other.b2(B2Weight{1, 1}), char_B2(B2Weight{1, 1}));
  other.clear();
  EXPECT_EQ(other.b2_size(), 0u);
}
