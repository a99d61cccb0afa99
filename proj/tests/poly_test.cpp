#include <gtest/gtest.h>

#include <random>

#include "ilab/errors.hpp"
#include "ilab/poly.hpp"

using namespace ilab;

namespace {

Polynomial random_poly(const FiniteField& f, int max_deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::int64_t> idx(0, f.size() - 1);
  std::vector<FieldElement> c;
  int n = deg(rng);
  for (int k = 0; k <= n; ++k) c.push_back(FieldElement::from_index(f, idx(rng)));
  return Polynomial(f, c);
}

}  // namespace

TEST(Polynomial, Product) {
  auto f = FiniteField::prime(5);
  auto a = Polynomial::from_ints(f, {1, 0, 1});
  auto b = Polynomial::from_ints(f, {-1, 1});
  EXPECT_EQ(a * b, Polynomial::from_ints(f, {-1, 1, -1, 1}));
}

TEST(Polynomial, DivRem) {
  auto f = FiniteField::prime(7);
  auto [q, r] = Polynomial::from_ints(f, {0, 0, 0, 1}).divrem(Polynomial::from_ints(f, {-1, 1}));
  EXPECT_EQ(q, Polynomial::from_ints(f, {1, 1, 1}));
  EXPECT_EQ(r, Polynomial::from_ints(f, {1}));
}

TEST(Polynomial, DivByZeroThrows) {
  auto f = FiniteField::prime(7);
  EXPECT_THROW(Polynomial::from_ints(f, {1, 1}).divrem(Polynomial(f)), Error);
}

TEST(Polynomial, EvalLinearInX) {
  auto f = FiniteField::prime(5);
  XLinearPoly g{Polynomial::from_ints(f, {0, 0, -1, 0, 0, 1}), Polynomial::from_ints(f, {-1})};
  auto zero = FieldElement::zero(f);
  EXPECT_TRUE(g.c0.eval(zero).is_zero());
  EXPECT_EQ(g.c1.eval(zero), FieldElement(f, -1));
}

TEST(Polynomial, DerivativeExamples) {
  for (int p : {5, 7, 11}) {
    auto f = FiniteField::prime(p);
    std::vector<std::int64_t> c(static_cast<std::size_t>(p) + 1, 0);
    c[static_cast<std::size_t>(p)] = 1;
    c[2] = -1;
    EXPECT_EQ(Polynomial::from_ints(f, c).derivative(), Polynomial::from_ints(f, {0, -2}));
  }
  auto f3 = FiniteField::prime(3);
  EXPECT_TRUE(Polynomial::from_ints(f3, {4}).derivative().is_zero());
  EXPECT_TRUE(Polynomial::from_ints(f3, {-1, 1}).pow(3).derivative().is_zero());
}

TEST(Polynomial, DerivativeLinearAndLeibniz) {
  std::mt19937_64 rng(7);
  for (int p : {5, 7, 11, 13}) {
    for (auto f : {FiniteField::prime(p), FiniteField::quadratic(p)}) {
      for (int k = 0; k < 100; ++k) {
        auto a = random_poly(f, 12, rng);
        auto b = random_poly(f, 12, rng);
        ASSERT_EQ((a + b).derivative(), a.derivative() + b.derivative());
        ASSERT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
      }
    }
  }
}

TEST(Polynomial, DivRemIdentityRandom) {
  std::mt19937_64 rng(11);
  auto f = FiniteField::quadratic(11);
  for (int k = 0; k < 300; ++k) {
    auto a = random_poly(f, 15, rng);
    auto b = random_poly(f, 6, rng);
    if (b.is_zero()) continue;
    auto [q, r] = a.divrem(b);
    ASSERT_EQ(q * b + r, a);
    ASSERT_LT(r.degree(), b.degree());
  }
}

TEST(Polynomial, NonzeroConstant) {
  auto f = FiniteField::prime(7);
  EXPECT_TRUE(is_nonzero_constant(Polynomial::from_ints(f, {2})));
  EXPECT_FALSE(is_nonzero_constant(Polynomial(f)));
  EXPECT_FALSE(is_nonzero_constant(Polynomial::from_ints(f, {2, 1})));
}

TEST(Polynomial, RootMultiplicities) {
  auto f = FiniteField::prime(7);
  auto lin = [&](int r) { return Polynomial::from_ints(f, {-r, 1}); };
  auto counts = root_multiplicities(lin(1).pow(3) * lin(2) * lin(5));
  ASSERT_EQ(counts.size(), 4u);
  EXPECT_EQ(counts[1], 2);
  EXPECT_EQ(counts[2], 0);
  EXPECT_EQ(counts[3], 1);
  // Multiplicity above p, coprime to p.
  auto big = root_multiplicities(lin(3).pow(9) * lin(4));
  EXPECT_EQ(big[9], 1);
  EXPECT_EQ(big[1], 1);
  // y^p has a multiplicity divisible by p.
  std::vector<std::int64_t> c(8, 0);
  c[7] = 1;
  EXPECT_THROW(root_multiplicities(Polynomial::from_ints(f, c)), Error);
  // Irreducible quadratic: y^2 - 3 over F_7 has two simple roots outside F_7.
  EXPECT_EQ(root_multiplicities(Polynomial::from_ints(f, {-3, 0, 1}))[1], 2);
}

TEST(Resultant, AgreesWithSylvesterDeterminant) {
  std::mt19937_64 rng(3);
  for (int p : {5, 7, 11}) {
    auto f = FiniteField::quadratic(p);
    for (int k = 0; k < 200; ++k) {
      auto a = random_poly(f, 8, rng);
      auto b = random_poly(f, 8, rng);
      if (a.degree() < 1) continue;
      const int n = std::max(b.degree(), 0) + static_cast<int>(rng() % 3);
      ASSERT_EQ(resultant(a, b, n), sylvester_resultant(a, a.degree(), b, n));
    }
  }
}

TEST(Resultant, Examples) {
  auto f = FiniteField::prime(7);
  auto y1 = Polynomial::from_ints(f, {-1, 1});
  EXPECT_TRUE(resultant(y1, y1).is_zero());
  // Res_y(y^2 - x, 2y) = 2 sqrt(x) * (-2 sqrt(x)) = -4x.
  XLinearPoly g{Polynomial::from_ints(f, {0, 0, 1}), Polynomial::from_ints(f, {-1})};
  auto res = resultant_y(g, g.derivative_y());
  ASSERT_EQ(unit_times_power_of_x(res), 1);
  EXPECT_EQ(res.coeff(1), FieldElement(res.field(), -4));
}

TEST(Resultant, DegreePFamilyPolynomialIsUnitTimesX) {
  for (int p : {5, 7, 11, 13}) {
    auto f = FiniteField::prime(p);
    std::vector<std::int64_t> c(static_cast<std::size_t>(p) + 1, 0);
    c[static_cast<std::size_t>(p)] = 1;
    c[2] = -1;
    XLinearPoly g{Polynomial::from_ints(f, c), Polynomial::from_ints(f, {-1})};
    auto res = resultant_y(g, g.derivative_y());
    EXPECT_EQ(unit_times_power_of_x(res), 1) << p;
  }
}

TEST(Interpolation, RecoversPolynomial) {
  std::mt19937_64 rng(5);
  auto f = FiniteField::quadratic(7);
  for (int k = 0; k < 50; ++k) {
    auto a = random_poly(f, 10, rng);
    std::vector<FieldElement> xs, ys;
    for (int i = 0; i <= 10; ++i) {
      xs.push_back(FieldElement::from_index(f, i));
      ys.push_back(a.eval(xs.back()));
    }
    ASSERT_EQ(interpolate(xs, ys), a);
  }
}
