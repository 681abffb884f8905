#include "toricdt/rational_fn.hpp"
#include "toricdt/gwref.hpp"

#include <gtest/gtest.h>

using namespace toricdt;

namespace {

std::vector<Rational> alternating_naturals(int count)
{
  std::vector<Rational> c;
  for (int n = 1; n <= count; ++n)
    c.emplace_back(n % 2 ? n : -n);
  return c;
}

} // namespace

TEST(UPoly, Arithmetic)
{
  const UPoly a{Rational(1), Rational(1)};
  EXPECT_EQ(a * a, (UPoly{Rational(1), Rational(2), Rational(1)}));
  const auto [q, r] = divmod(a * a, a);
  EXPECT_EQ(q, a);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(poly_gcd(a * a, a * UPoly{Rational(-1), Rational(1)}), a);
  EXPECT_EQ((a * a)(Rational(2)), 9);
}

TEST(Pade, ConstantSeries)
{
  const std::vector<Rational> one{Rational(1), Rational(0), Rational(0)};
  const auto r = pade_reconstruct(one, 0, {0, 0});
  EXPECT_EQ(r, RationalFn::constant(1));
}

TEST(Pade, GeometricSeries)
{
  const std::vector<Rational> c(6, Rational(1));
  const auto r = pade_reconstruct(c, 0, {0, 1});
  EXPECT_EQ(r.numerator, UPoly{Rational(1)});
  EXPECT_EQ(r.denominator, (UPoly{Rational(1), Rational(-1)}));
}

TEST(Pade, ConifoldDegreeOne)
{
  const auto r = pade_reconstruct(alternating_naturals(9), 1, {1, 2});
  EXPECT_EQ(r.shift, 1);
  EXPECT_EQ(r.numerator, UPoly{Rational(1)});
  EXPECT_EQ(r.denominator, (UPoly{Rational(1), Rational(2), Rational(1)}));
  EXPECT_TRUE(symmetry_check(r));
}

TEST(Pade, InsufficientCoefficients)
{
  EXPECT_THROW(pade_reconstruct(alternating_naturals(5), 1, {1, 2}), InsufficientCoefficients);
  EXPECT_NO_THROW(pade_reconstruct(alternating_naturals(6), 1, {1, 2}));
}

TEST(Pade, NoFitDetected)
{
  // 1/(1-q)^3 does not fit (1,2)
  std::vector<Rational> c;
  for (int n = 0; n < 10; ++n)
    c.emplace_back((n + 1) * (n + 2) / 2);
  EXPECT_THROW(pade_reconstruct(c, 0, {1, 2}), NoRationalFit);
  EXPECT_NO_THROW(pade_reconstruct(c, 0, {0, 3}));
}

TEST(Pade, VerificationCoefficientsMatter)
{
  // agrees with q/(1+q)^2 through 6 terms, then breaks
  auto c = alternating_naturals(8);
  c.back() += 1;
  EXPECT_THROW(pade_reconstruct(c, 1, {1, 2}), NoRationalFit);
}

TEST(Symmetry, Detects)
{
  RationalFn sym{UPoly{Rational(1)}, UPoly{Rational(1), Rational(2), Rational(1)}, 1};
  EXPECT_TRUE(symmetry_check(sym));
  RationalFn asym{UPoly{Rational(1)}, UPoly{Rational(1), Rational(-1)}, 0};
  EXPECT_FALSE(symmetry_check(asym));
  EXPECT_TRUE(symmetry_check(RationalFn::constant(5)));
}

TEST(GwExpansion, MatchesSineOracle)
{
  RationalFn r{UPoly{Rational(1)}, UPoly{Rational(1), Rational(2), Rational(1)}, 1};
  const auto u = gw_expansion(r, 6);
  const auto oracle = inverse_sine_square_series(6);
  EXPECT_EQ(u.lowest, -2);
  for (int p = -2; p <= 6; ++p)
    EXPECT_EQ(u.at(p), oracle[static_cast<std::size_t>(p + 2)]) << p;
  EXPECT_EQ(u.at(0), Rational(1, 12));
  EXPECT_EQ(u.at(2), Rational(1, 240));
}

TEST(GwExpansion, RejectsHighPole)
{
  RationalFn r{UPoly{Rational(1)}, UPoly{Rational(1), Rational(3), Rational(3), Rational(1)}, 0};
  r.normalize();
  EXPECT_THROW(gw_expansion(r, 2), PoleOrderError);
}

TEST(GwExpansion, RegularFunction)
{
  const auto u = gw_expansion(RationalFn::constant(3), 4);
  EXPECT_EQ(u.at(0), 3);
  EXPECT_EQ(u.at(2), 0);
}
