#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "qpi/check/oracles.hpp"
#include "qpi/integer.hpp"
#include "qpi/scalar.hpp"
#include "qpi/text.hpp"

using namespace qpi;

namespace {

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Scalar random_scalar(check::Rng& rng) {
  static const std::int64_t conductors[] = {1, 3, 4, 5, 6, 12};
  const std::int64_t l = conductors[check::uniform(rng, 0, 5)];
  Scalar::Terms raw;
  for (int k = 0, n = static_cast<int>(check::uniform(rng, 1, 4)); k < n; ++k) {
    raw[{check::uniform(rng, -2, 2), check::uniform(rng, 0, l - 1)}] +=
        Rational(check::uniform(rng, -4, 4), check::uniform(rng, 1, 3));
  }
  return Scalar::from_terms(l, raw);
}

} // namespace

TEST(Integer, ExtendedGcd) {
  const ExtendedGcd e = extended_gcd(240, 46);
  EXPECT_EQ(e.gcd, 2);
  EXPECT_EQ(240 * e.x + 46 * e.y, 2);
  const ExtendedGcd n = extended_gcd(-3, 7);
  EXPECT_EQ(n.gcd, 1);
  EXPECT_EQ(-3 * n.x + 7 * n.y, 1);
}

TEST(Integer, OverflowIsResourceError) {
  EXPECT_THROW(checked_mul(INT64_MAX / 2, 3), ResourceError);
  EXPECT_THROW(checked_add(INT64_MAX, 1), ResourceError);
  EXPECT_EQ(checked_mul(-4, 5), -20);
}

TEST(Integer, FactorizeAndDivisors) {
  EXPECT_EQ(factorize(360), (std::vector<std::pair<std::int64_t, int>>{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_EQ(divisors(12), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(floor_mod(-7, 3), 2);
  EXPECT_EQ(lcm(4, 6), 12);
}

TEST(Cyclotomic, SmallCases) {
  EXPECT_EQ(cyclotomic_poly(1), (IntPoly{-1, 1}));
  EXPECT_EQ(cyclotomic_poly(4), (IntPoly{1, 0, 1}));
  EXPECT_EQ(cyclotomic_poly(6), (IntPoly{1, -1, 1}));
  EXPECT_EQ(cyclotomic_poly(12), (IntPoly{1, 0, -1, 0, 1}));
  EXPECT_THROW(cyclotomic_poly(0), DomainError);
}

TEST(Cyclotomic, AgreesWithMoebiusProduct) {
  for (std::int64_t n = 1; n <= 300; ++n) {
    EXPECT_EQ(cyclotomic_poly(n), check::moebius_cyclotomic(n)) << "n = " << n;
    EXPECT_EQ(static_cast<std::int64_t>(cyclotomic_poly(n).size()) - 1, euler_phi(n));
  }
}

TEST(Cyclotomic, ProductOverDivisorsIsTnMinusOne) {
  for (std::int64_t n = 1; n <= 60; ++n) {
    IntPoly prod{1};
    for (std::int64_t d : divisors(n)) prod = poly_mul(prod, cyclotomic_poly(d));
    IntPoly expected(static_cast<std::size_t>(n) + 1, 0);
    expected[0] = -1;
    expected[static_cast<std::size_t>(n)] = 1;
    EXPECT_EQ(prod, expected) << "n = " << n;
  }
}

TEST(Cyclotomic, CapIsEnforced) {
  const std::int64_t saved = max_conductor();
  set_max_conductor(10);
  EXPECT_THROW(Scalar::zeta(12, 1), ResourceError);
  EXPECT_NO_THROW(Scalar::zeta(10, 1));
  set_max_conductor(saved);
}

TEST(QSpecTest, RootOfUnityNeedsOrderAtLeastThree) {
  EXPECT_THROW(QSpec::root_of_unity(2), DomainError);
  EXPECT_THROW(QSpec::root_of_unity(1), DomainError);
  EXPECT_TRUE(q_power_is_one(0, QSpec::transcendental()));
  EXPECT_FALSE(q_power_is_one(5, QSpec::transcendental()));
  EXPECT_TRUE(q_power_is_one(6, QSpec::root_of_unity(3)));
  EXPECT_FALSE(q_power_is_one(4, QSpec::root_of_unity(3)));
  EXPECT_TRUE(q_power_is_one(-9, QSpec::root_of_unity(3)));
}

TEST(ScalarTest, Examples) {
  const Scalar z = Scalar::zeta(3, 1);
  EXPECT_TRUE((Scalar(1) + z + z * z).is_zero());
  const QSpec trans = QSpec::transcendental();
  EXPECT_TRUE((Scalar::q_power(1, trans) * Scalar::q_power(-1, trans)).is_one());
  EXPECT_TRUE(Scalar::q_power(5, QSpec::root_of_unity(5)).is_one());
  EXPECT_EQ(Scalar::q_power(1, QSpec::root_of_unity(4)).pow(2), Scalar(-1));
  EXPECT_EQ(Scalar::zeta(3, 1).lifted(6), Scalar::zeta(6, 2));
  EXPECT_EQ(Scalar::zeta(6, 1) + Scalar::zeta(6, 5), Scalar(1));
}

TEST(ScalarTest, ZetaPowerIsOneExactlyAtMultiples) {
  for (std::int64_t n = 1; n <= 30; ++n) {
    for (std::int64_t k = -2 * n; k <= 2 * n; ++k) {
      const bool zero = (Scalar::zeta(n, k) - Scalar(1)).is_zero();
      EXPECT_EQ(zero, k % n == 0) << "N = " << n << ", k = " << k;
    }
  }
}

TEST(ScalarTest, RingAxioms) {
  check::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(ScalarTest, TextRoundTrip) {
  check::Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const Scalar a = random_scalar(rng);
    EXPECT_EQ(parse_scalar(a.to_string()), a) << a.to_string();
  }
  EXPECT_EQ(Scalar::zeta(4, 1).to_string(), "conductor=4; z");
  EXPECT_EQ(parse_scalar("-3 + 1/2*q^-1").to_string(), "1/2*q^-1 - 3");
}

TEST(UnitTest, PowersAndInverses) {
  const Unit u = Unit::root_of_unity(6, 1);
  EXPECT_TRUE(u.pow(6).to_scalar(QSpec::transcendental()).is_one());
  EXPECT_FALSE(u.pow(3).to_scalar(QSpec::transcendental()).is_one());
  const Unit v = Unit{Rational(2, 3), 2, 4, 1};
  EXPECT_TRUE((v * v.inverse()).to_scalar(QSpec::transcendental()).is_one());
  EXPECT_TRUE(check::has_exact_order(Unit::root_of_unity(12, 5), 12));
  EXPECT_FALSE(check::has_exact_order(Unit::root_of_unity(12, 2), 12));
}
