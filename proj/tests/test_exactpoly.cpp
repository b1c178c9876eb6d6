#include <gtest/gtest.h>

#include <random>

#include "qkoshy/exactpoly.hpp"

using qkoshy::ArithOp;
using qkoshy::IntPolynomial;
using qkoshy::Integer;
using qkoshy::RationalForm;

namespace {

IntPolynomial random_poly(std::mt19937_64& rng, int max_deg, long bound) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<long> coef(-bound, bound);
  std::vector<Integer> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coef(rng);
  return IntPolynomial(std::move(c));
}

// Nonnegative, reciprocal, unimodal: a symmetric mountain of random steps.
IntPolynomial random_mountain(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> half(0, 6);
  std::uniform_int_distribution<int> step(0, 3);
  std::uniform_int_distribution<int> odd(0, 1);
  const int h = half(rng);
  std::vector<Integer> rise;
  Integer v = 1 + step(rng);
  for (int i = 0; i < h; ++i) {
    rise.push_back(v);
    v += step(rng);
  }
  std::vector<Integer> c = rise;
  if (odd(rng)) c.push_back(v);
  c.insert(c.end(), rise.rbegin(), rise.rend());
  if (c.empty()) c.push_back(1);
  return qkoshy::shift(IntPolynomial(std::move(c)), static_cast<std::size_t>(step(rng)));
}

}  // namespace

TEST(ExactPoly, CanonicalForm) {
  IntPolynomial p(std::vector<Integer>{1, 2, 0, 0});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_TRUE(IntPolynomial(std::vector<Integer>{0, 0}).is_zero());
  EXPECT_EQ(IntPolynomial{}.degree(), IntPolynomial::kZeroDegree);
  EXPECT_EQ((IntPolynomial{1, 1} - IntPolynomial{1, 1}).size(), 0u);
}

TEST(ExactPoly, Arith) {
  EXPECT_EQ(arith(IntPolynomial{1, 1}, IntPolynomial{}, ArithOp::add), (IntPolynomial{1, 1}));
  EXPECT_EQ(arith(IntPolynomial{1, -1}, IntPolynomial{1, 1, 1}, ArithOp::mul), (IntPolynomial{1, 0, 0, -1}));
  // (1+q^2)(1+q^2+q^4) expanded term by term
  EXPECT_EQ(arith(IntPolynomial{1, 0, 1}, IntPolynomial{1, 0, 1, 0, 1}, ArithOp::mul),
            (IntPolynomial{1, 0, 2, 0, 2, 0, 1}));
  EXPECT_EQ(arith(IntPolynomial{1, 2}, IntPolynomial{1, 2}, ArithOp::sub), IntPolynomial{});
}

TEST(ExactPoly, Transform) {
  using qkoshy::TransformKind;
  EXPECT_EQ(transform(IntPolynomial{1, 1, 1}, TransformKind::negate_variable), (IntPolynomial{1, -1, 1}));
  EXPECT_EQ(transform(IntPolynomial{1, 1, 1}, TransformKind::power_substitute, 2), (IntPolynomial{1, 0, 1, 0, 1}));
  EXPECT_EQ(transform(IntPolynomial{1, 1}, TransformKind::shift, 2), (IntPolynomial{0, 0, 1, 1}));
}

TEST(ExactPoly, ExactDiv) {
  EXPECT_EQ(qkoshy::exact_div(IntPolynomial{1, 0, 0, -1}, IntPolynomial{1, -1}), (IntPolynomial{1, 1, 1}));
  EXPECT_EQ(qkoshy::exact_div(IntPolynomial{1, 0, 1, 0, 1}, IntPolynomial{1, 1, 1}), (IntPolynomial{1, -1, 1}));
  try {
    qkoshy::exact_div(IntPolynomial{1, 1}, IntPolynomial{1, -1});
    FAIL() << "expected DivisionInexact";
  } catch (const qkoshy::DivisionInexact& e) {
    ASSERT_EQ(e.remainder_coeffs().size(), 1u);
    EXPECT_EQ(e.remainder_coeffs()[0], 2);
  }
  EXPECT_THROW(qkoshy::exact_div(IntPolynomial{1, 1}, IntPolynomial{1, 2}), qkoshy::UnsupportedDivisor);
  EXPECT_EQ(qkoshy::exact_div(IntPolynomial{}, IntPolynomial{1, 1}), IntPolynomial{});
}

TEST(ExactPoly, SparseFactorOps) {
  const IntPolynomial a{3, -1, 4, 1, -5, 9};
  for (int sign : {-1, 1}) {
    for (std::size_t k = 1; k < 8; ++k) {
      IntPolynomial f = qkoshy::mul_one_plus(IntPolynomial{1}, sign, k);
      EXPECT_EQ(qkoshy::mul_one_plus(a, sign, k), a * f);
      EXPECT_EQ(qkoshy::div_one_plus(a * f, sign, k), a);
    }
  }
  EXPECT_THROW(qkoshy::div_one_plus(IntPolynomial{1, 1}, -1, 1), qkoshy::DivisionInexact);
  EXPECT_THROW(qkoshy::div_one_plus(IntPolynomial{1, 0, 1, 1}, 1, 2), qkoshy::DivisionInexact);
}

TEST(ExactPoly, PolyRemainder) {
  EXPECT_EQ(qkoshy::poly_remainder(IntPolynomial{0, 0, 1}, IntPolynomial{1, 0, 1}), (IntPolynomial{-1}));
  // [4 choose 2]_q at q = -1 is 1 - 1 + 2 - 1 + 1
  EXPECT_EQ(qkoshy::poly_remainder(IntPolynomial{1, 1, 2, 1, 1}, IntPolynomial{1, 1}), (IntPolynomial{2}));
  const IntPolynomial a{5, -3, 0, 7, 2};
  EXPECT_EQ(qkoshy::poly_remainder(a, IntPolynomial{-1, 1}), IntPolynomial::constant(a.evaluate(1)));
  EXPECT_THROW(qkoshy::poly_remainder(a, IntPolynomial{1, 2}), qkoshy::NonMonicModulus);
  EXPECT_THROW(qkoshy::poly_remainder(a, IntPolynomial{3}), qkoshy::NonMonicModulus);
}

TEST(ExactPoly, ShapeExamples) {
  auto s = qkoshy::shape(IntPolynomial{1, 1, 2, 2, 2, 2, 1, 1});
  EXPECT_TRUE(s.is_nonnegative && s.is_reciprocal && s.is_unimodal);
  EXPECT_EQ(s.nonneg_prefix_degree, 7);

  s = qkoshy::shape(IntPolynomial{0, 0, 1, -1, 1});
  EXPECT_FALSE(s.is_nonnegative);
  EXPECT_TRUE(s.is_reciprocal);
  EXPECT_FALSE(s.is_unimodal);
  EXPECT_EQ(s.nonneg_prefix_degree, 2);
  EXPECT_EQ(s.first_unimodal_violation, 4);

  s = qkoshy::shape(IntPolynomial{});
  EXPECT_TRUE(s.is_nonnegative && s.is_reciprocal && s.is_unimodal);

  // interior zero between positive coefficients
  s = qkoshy::shape(IntPolynomial{1, 0, 1});
  EXPECT_FALSE(s.is_unimodal);
  EXPECT_TRUE(qkoshy::shape(IntPolynomial{7}).is_unimodal);
  EXPECT_EQ(qkoshy::shape(IntPolynomial{-1, 2}).nonneg_prefix_degree, -1);
}

TEST(ExactPoly, RationalEqual) {
  using qkoshy::rational_equal;
  EXPECT_TRUE(rational_equal(RationalForm({1, 1}, {1, 0, -1}), RationalForm({1}, {1, -1})));
  EXPECT_TRUE(rational_equal(RationalForm({1, 0, 0, 1}, {1, 1}), RationalForm({1, -1, 1}, {1})));
  EXPECT_FALSE(rational_equal(RationalForm({1, 1}, {1}), RationalForm({1, 0, 1}, {1})));
  EXPECT_THROW(RationalForm({1}, IntPolynomial{}), qkoshy::DomainError);
}

TEST(ExactPoly, Rendering) {
  EXPECT_EQ(to_string(IntPolynomial{1, 1, 2}), "1 + q + 2*q^2");
  EXPECT_EQ(to_string(IntPolynomial{}), "0");
  EXPECT_EQ(to_string(IntPolynomial{-1, 1}), "-1 + q");
  EXPECT_EQ(to_string(IntPolynomial{0, 0, 1, -1, 1}), "q^2 - q^3 + q^4");
  EXPECT_EQ(to_string(IntPolynomial{0, -3}), "-3*q");
}

TEST(ExactPolyProperty, RingAxioms) {
  std::mt19937_64 rng(20261015);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_poly(rng, 12, 50), b = random_poly(rng, 12, 50), c = random_poly(rng, 12, 50);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    for (const auto& p : {a + b, a - b, a * b}) {
      if (!p.is_zero()) {
        EXPECT_NE(p.leading(), 0);
      }
    }
  }
}

TEST(ExactPolyProperty, DivisionInvertsProduct) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_poly(rng, 15, 1000);
    auto b = random_poly(rng, 8, 9);
    std::vector<Integer> bc(b.coeffs().begin(), b.coeffs().end());
    if (bc.empty()) bc.push_back(0);
    bc.back() = (trial % 2) ? 1 : -1;
    b = IntPolynomial(std::move(bc));
    EXPECT_EQ(qkoshy::exact_div(a * b, b), a);
    // remainder law for monic moduli
    if (b.leading() == 1 && b.degree() >= 1) {
      auto [quot, rem] = qkoshy::divide_unit_leading(a, b);
      EXPECT_LT(rem.degree(), b.degree());
      EXPECT_EQ(qkoshy::poly_remainder(a * b + rem, b), rem);
      EXPECT_EQ(quot * b + rem, a);
    }
  }
}

TEST(ExactPolyProperty, TransformInvolutions) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_poly(rng, 20, 100);
    EXPECT_EQ(qkoshy::negate_variable(qkoshy::negate_variable(a)), a);
    EXPECT_EQ(qkoshy::power_substitute(a, 1), a);
  }
}

TEST(ExactPolyProperty, UnimodalReciprocalProducts) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto f = random_mountain(rng), g = random_mountain(rng);
    ASSERT_TRUE(qkoshy::shape(f).is_unimodal && qkoshy::shape(f).is_reciprocal);
    auto s = qkoshy::shape(f * g);
    EXPECT_TRUE(s.is_nonnegative);
    EXPECT_TRUE(s.is_reciprocal);
    EXPECT_TRUE(s.is_unimodal) << to_string(f) << " * " << to_string(g);
  }
}
