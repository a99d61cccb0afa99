#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ilab/errors.hpp"
#include "ilab/number.hpp"
#include "ilab/perm.hpp"

using namespace ilab;

namespace {

Perm random_perm(int d, std::mt19937_64& rng) {
  std::vector<int> images(static_cast<std::size_t>(d));
  std::iota(images.begin(), images.end(), 0);
  std::shuffle(images.begin(), images.end(), rng);
  return Perm(images);
}

}  // namespace

TEST(Perm, ComposeAppliesRightFirst) {
  auto a = Perm::parse("(1 2)", 3);
  auto b = Perm::parse("(2 3)", 3);
  // b sends 2 -> 3, a fixes 3.
  EXPECT_EQ((a * b)(1), 2);
  EXPECT_EQ(compose(a, b).to_string(), "(1 2 3)");
}

TEST(Perm, ConjugateTauByTheta) {
  auto tau = make_tau(5, 5);
  auto theta = make_theta(5, 5);
  EXPECT_EQ(theta.to_string(), "(2 3 5 4)");
  EXPECT_EQ(conjugate(tau, theta).to_string(), "(1 3 5 2 4)");
  EXPECT_EQ(conjugate(tau, theta), tau.pow(2));
}

TEST(Perm, InverseAndPower) {
  EXPECT_TRUE(Perm(6).inverse().is_identity());
  EXPECT_TRUE(Perm::parse("(1 2 3)", 3).pow(3).is_identity());
  EXPECT_EQ(Perm::parse("(1 2 3)", 3).pow(-1), Perm::parse("(1 3 2)", 3));
}

TEST(Perm, DegreeMismatch) {
  try {
    (void)(Perm(3) * Perm(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeMismatch);
  }
}

TEST(Perm, CycleTypeParityOrder) {
  for (int p : {5, 7, 11}) {
    for (int t : {1, 3, 5}) {
      const int d = p + t;
      auto c = Perm::from_cycle_type(d, {p + t - 1});
      EXPECT_TRUE(c.is_even());
    }
  }
  auto id = Perm(4);
  EXPECT_EQ(id.cycle_type().parts, (std::vector<int>{1, 1, 1, 1}));
  EXPECT_TRUE(id.is_even());
  EXPECT_EQ(id.order(), 1);
  auto seven = Perm::from_cycle_type(8, {7});
  EXPECT_EQ(seven.cycle_type().to_string(), "(7,1)");
  EXPECT_TRUE(seven.is_even());
  EXPECT_EQ(seven.order(), 7);
}

TEST(Perm, TauExamples) {
  auto tau = make_tau(5, 8);
  EXPECT_EQ(tau.to_string(), "(1 2 3 4 5)");
  EXPECT_EQ(tau.cycle_type().parts, (std::vector<int>{5, 1, 1, 1}));
  EXPECT_EQ(make_tau(5, 5).cycle_type().parts, (std::vector<int>{5}));
  EXPECT_THROW(make_tau(7, 5), Error);
}

TEST(Perm, ThetaNormalizesTau) {
  for (int p : {5, 7, 11, 13, 17, 19, 23}) {
    const int d = p + 3;
    auto tau = make_tau(p, d);
    auto theta = make_theta(p, d);
    const auto g = smallest_primitive_root(p);
    EXPECT_EQ(theta * tau * theta.inverse(), tau.pow(g)) << p;
    EXPECT_EQ(theta.order(), p - 1) << p;
    EXPECT_FALSE(theta.is_even());
    for (int x = p; x < d; ++x) EXPECT_EQ(theta(x), x);
    EXPECT_EQ(theta(0), 0);
  }
}

TEST(Perm, TextRoundTrip) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 500; ++k) {
    const int d = 1 + static_cast<int>(rng() % 20);
    auto x = random_perm(d, rng);
    ASSERT_EQ(Perm::parse(x.to_string(), d), x);
  }
  EXPECT_EQ(Perm(5).to_string(), "()");
  EXPECT_TRUE(Perm::parse("()", 5).is_identity());
  EXPECT_THROW(Perm::parse("(1 2", 5), Error);
  EXPECT_THROW(Perm::parse("(1 9)", 5), Error);
  EXPECT_THROW(Perm::parse("(1 2)(2 3)", 5), Error);
}

TEST(Perm, ConjugateIffSameCycleType) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 500; ++k) {
    const int d = 1 + static_cast<int>(rng() % 10);
    auto a = random_perm(d, rng);
    auto x = random_perm(d, rng);
    auto b = conjugate(a, x);
    auto c = conjugator(a, b);
    ASSERT_TRUE(c.has_value());
    ASSERT_EQ(conjugate(a, *c), b);
    auto other = random_perm(d, rng);
    auto c2 = conjugator(a, other);
    ASSERT_EQ(c2.has_value(), a.cycle_type() == other.cycle_type());
    if (c2) ASSERT_EQ(conjugate(a, *c2), other);
  }
}
