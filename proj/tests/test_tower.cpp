#include "towerdigits/tower.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <optional>

using namespace towerdigits;

namespace {

constexpr double kBitBudget = 400'000;

// Exact value of the height-h tower over b, or nothing if it would exceed the bit budget.
std::optional<BigInt> exact_tower(const BigInt& b, std::uint64_t h) {
  if (h == 0) return BigInt(1);
  auto below = exact_tower(b, h - 1);
  if (!below) return std::nullopt;
  const double bits = static_cast<double>(msb(b) + 1);
  if (*below > BigInt(static_cast<std::uint64_t>(kBitBudget)) || static_cast<double>(*below) * bits > kBitBudget)
    return std::nullopt;
  return boost::multiprecision::pow(b, static_cast<unsigned>(*below));
}

}  // namespace

TEST(TetMod, SmallExamples) {
  EXPECT_EQ(tet_mod({3, 0, 0, 1, 2}, 4), 27);
  EXPECT_EQ(tet_mod({3, 0, 0, 1, 3}, 4), 4987);
  EXPECT_EQ(tet_mod({3, 0, 0, 1, 0}, 4), 1);
  EXPECT_EQ(tet_mod({7, 1, 0, 1, 1}, 3), 49);
}

TEST(TetMod, PrintedResidues) {
  EXPECT_EQ(to_digits(tet_mod({4599, 8, 5, 1, 5}, 40), 40), "0574081590929428693334403581932320000001");
  EXPECT_EQ(tet_mod({4599, 8, 5, 1, 4}, 40), BigInt("3530881590929428693334403581932320000001"));
  EXPECT_EQ(tet_mod({1251, 2, 4, 1, 6}, 30), BigInt("47934155568039465330081250001"));
  EXPECT_EQ(tet_mod({1251, 2, 4, 1, 7}, 30), BigInt("297934155568039465330081250001"));
}

TEST(TetMod, RejectsBadInput) {
  EXPECT_THROW(tet_mod({10, 1, 1, 1, 3}, 5), std::invalid_argument);
  EXPECT_THROW(tet_mod({1, 1, 1, 1, 3}, 5), std::invalid_argument);
  EXPECT_THROW(tet_mod({3, 1, 1, 5, 3}, 5), std::invalid_argument);
  EXPECT_THROW(tet_mod({3, 1, 1, 2, 3}, 5), std::invalid_argument);
  EXPECT_THROW(tet_mod({3, 1, 1, 1, 3}, 0), std::invalid_argument);
  EXPECT_THROW(tet_mod({3, 1, 1, 1, 3}, digit_cap() + 1), std::invalid_argument);
}

TEST(StableResidue, Examples) {
  EXPECT_EQ(stable_residue(255, 4, 3, 1, 34), BigInt("6154363253735937178134918212890625"));
  EXPECT_EQ(stable_residue(5, 0, 0, 1, 2), 25);
  EXPECT_EQ(stable_residue(2, 0, 0, 1, 1), 6);
}

TEST(MinStableHeight, Examples) {
  EXPECT_EQ(min_stable_height(4599, 8, 5, 1, 40).u_min, 5u);
  EXPECT_EQ(min_stable_height(1251, 2, 4, 1, 30).u_min, 7u);
  EXPECT_EQ(min_stable_height(63, 5, 2, 3, 15).u_min, 4u);
  // 3, 27, 7625597484987: the last digit is fixed from height 2.
  EXPECT_EQ(min_stable_height(3, 0, 0, 1, 1).u_min, 2u);
}

TEST(MinStableHeight, NonUnitBaseNeverStableAtZero) {
  for (std::uint64_t q : {2ull, 4ull, 5ull, 6ull, 25ull, 128ull})
    for (unsigned n = 1; n <= 6; ++n) EXPECT_GE(min_stable_height(q, 2, 1, 1, n).u_min, 1u) << q;
}

TEST(Tower, ProjectsToFewerDigits) {
  for (std::uint64_t q : {3ull, 7ull, 12ull, 99ull, 255ull, 4599ull})
    for (std::uint64_t h = 0; h <= 6; ++h) {
      const BigInt wide = tet_mod({q, 2, 1, 1, h}, 20);
      for (unsigned n = 1; n < 20; ++n) ASSERT_EQ(tet_mod({q, 2, 1, 1, h}, n), wide % pow10(n)) << q << " h=" << h;
    }
}

TEST(Tower, CrtOfPrimePowerParts) {
  for (std::uint64_t q : {3ull, 6ull, 15ull, 49ull, 192ull})
    for (unsigned n : {1u, 4u, 9u, 25u})
      for (std::uint64_t h = 1; h <= 5; ++h) {
        const BigInt e = tower_exponent(3, 1, 7);
        const BigInt r2 = tower_residue(ModulusChain(SmoothModulus{n, 0}), q, e, h);
        const BigInt r5 = tower_residue(ModulusChain(SmoothModulus{0, n}), q, e, h);
        ASSERT_EQ(crt_combine(r2, r5, n), tet_mod({q, 3, 1, 7, h}, n)) << q << " n=" << n << " h=" << h;
      }
}

TEST(Tower, StableAboveChainLength) {
  for (std::uint64_t q : {2ull, 3ull, 5ull, 11ull, 77ull, 255ull})
    for (unsigned n : {1u, 3u, 8u, 19u, 30u}) {
      const BigInt stable = stable_residue(q, 2, 0, 1, n);
      for (std::uint64_t h = stable_height(n); h <= stable_height(n) + 5; ++h)
        ASSERT_EQ(tet_mod({q, 2, 0, 1, h}, n), stable) << q << " n=" << n << " h=" << h;
    }
}

TEST(Tower, MatchesExactTowers) {
  std::size_t checked = 0;
  for (std::uint64_t q = 2; q <= 7; ++q)
    for (unsigned x = 0; x <= 3; ++x) {
      const BigInt e = BigInt(1) << x;
      const BigInt base = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(e));
      for (std::uint64_t h = 0; h <= 3; ++h) {
        auto exact = exact_tower(base, h);
        if (!exact) continue;
        for (unsigned n = 1; n <= 6; ++n) {
          ASSERT_EQ(tet_mod({q, x, 0, 1, h}, n), *exact % pow10(n)) << q << "^" << e << " h=" << h << " n=" << n;
          ++checked;
        }
      }
    }
  EXPECT_GT(checked, 100u);
}

TEST(Tower, FastAndWidePathsAgree) {
  // n = 18 uses 64-bit arithmetic; n = 19 switches to multiprecision.
  for (std::uint64_t q : {3ull, 8ull, 65ull, 4599ull})
    for (std::uint64_t h = 0; h <= 8; ++h)
      ASSERT_EQ(tet_mod({q, 2, 2, 3, h}, 18), tet_mod({q, 2, 2, 3, h}, 19) % pow10(18)) << q << " h=" << h;
}

TEST(Tower, ExponentBelowThresholdIsExact) {
  // 2^2 = 4 and 4^4 = 256: the exponent at the second level is small, so the
  // lift must not replace it by a reduced value.
  EXPECT_EQ(tet_mod({2, 0, 0, 1, 2}, 3), 4);
  EXPECT_EQ(tet_mod({2, 1, 0, 1, 2}, 3), 256);
  EXPECT_EQ(tet_mod({2, 1, 0, 1, 3}, 6), boost::multiprecision::pow(BigInt(4), 256) % pow10(6));
}

TEST(MinStableHeight, MonotoneInDigits) {
  for (std::uint64_t q : {3ull, 12ull, 51ull, 125ull, 4599ull}) {
    auto records = min_stable_heights(q, 2, 1, 1, 30);
    for (std::size_t i = 1; i < records.size(); ++i) ASSERT_LE(records[i - 1].u_min, records[i].u_min) << q;
  }
}

TEST(MinStableHeight, BatchedAgreesWithSingle) {
  for (std::uint64_t q : {2ull, 9ull, 17ull, 45ull, 243ull})
    for (unsigned x : {0u, 2u, 4u}) {
      auto records = min_stable_heights(q, x, 1, 3, 22);
      for (unsigned n = 1; n <= 22; ++n) ASSERT_EQ(records[n - 1], min_stable_height(q, x, 1, 3, n)) << q << " n=" << n;
    }
}

TEST(MinStableHeight, HeightIsTight) {
  for (std::uint64_t q : {7ull, 11ull, 99ull, 255ull})
    for (unsigned n : {2u, 7u, 16u}) {
      const auto rec = min_stable_height(q, 2, 1, 1, n);
      for (std::uint64_t h = rec.u_min; h <= stable_height(n); ++h)
        ASSERT_EQ(tet_mod({q, 2, 1, 1, h}, n), rec.stable_digits);
      if (rec.u_min > 0) EXPECT_NE(tet_mod({q, 2, 1, 1, rec.u_min - 1}, n), rec.stable_digits);
    }
}

TEST(DigitCap, Adjustable) {
  const unsigned saved = digit_cap();
  set_digit_cap(5);
  EXPECT_THROW(tet_mod({3, 0, 0, 1, 2}, 6), std::invalid_argument);
  EXPECT_NO_THROW(tet_mod({3, 0, 0, 1, 2}, 5));
  EXPECT_THROW(set_digit_cap(0), std::invalid_argument);
  set_digit_cap(saved);
}
