#include <gtest/gtest.h>

#include <numeric>

#include "galdesc/ntheory.hpp"
#include "galdesc/rng.hpp"

using namespace galdesc;
using namespace galdesc::nt;

namespace {
bool trial_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}
}  // namespace

TEST(NumberTheory, PrimalityMatchesTrialDivision) {
  for (u64 n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), trial_prime(n)) << n;
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
  EXPECT_FALSE(is_prime(18446744073709551557ULL - 2));
}

TEST(NumberTheory, FactorRecomposes) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const u64 n = 2 + rng.below(1ULL << 62);
    u64 prod = 1;
    for (auto [p, k] : factor(n)) {
      EXPECT_TRUE(is_prime(p));
      prod *= ipow(p, k);
    }
    EXPECT_EQ(prod, n);
  }
  // 2^62 - 1 = 3 * 715827883 * 2147483647
  auto f = factor((1ULL << 62) - 1);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[2].first, 2147483647ULL);
}

TEST(NumberTheory, MoebiusAndDivisors) {
  EXPECT_EQ(moebius(1), 1);
  EXPECT_EQ(moebius(6), 1);
  EXPECT_EQ(moebius(12), 0);
  EXPECT_EQ(moebius(30), -1);
  EXPECT_EQ(divisors(12), (std::vector<u64>{1, 2, 3, 4, 6, 12}));
}

TEST(NumberTheory, BezoutAndInverse) {
  auto b = ext_gcd(3, 7);
  EXPECT_EQ(b.g, 1);
  EXPECT_EQ(3 * b.x + 7 * b.y, 1);
  EXPECT_EQ(invmod(3, 7), 5u);
  EXPECT_THROW(invmod(3, 6), Error);
  EXPECT_EQ(mult_order_mod(2, 5), 4u);
  EXPECT_EQ(mult_order_mod(2, 7), 3u);
  EXPECT_EQ(euler_phi(24), 8u);
}

TEST(NumberTheory, CoprimeDegreesGiveGcdQMinusOne) {
  for (u64 q : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL, 8ULL, 9ULL})
    for (unsigned m = 1; m <= 6; ++m)
      for (unsigned n = 1; n <= 6; ++n) {
        if (std::gcd(m, n) != 1 || ipow(q, m + n) > (1ULL << 40)) continue;
        EXPECT_EQ(std::gcd(ipow(q, m) - 1, ipow(q, n) - 1), q - 1) << q << " " << m << " " << n;
      }
}

TEST(Rng, SeedDerivationIsStableAndTagged) {
  EXPECT_EQ(derive_seed(1, "a"), derive_seed(1, "a"));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
  EXPECT_NE(derive_seed(1, "a", 0), derive_seed(1, "a", 1));
  Rng r(derive_seed(5, "x"));
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.below(7), 7u);
}
