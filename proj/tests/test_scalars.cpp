#include <gtest/gtest.h>

#include <random>

#include "qons/scalar.hpp"

using qons::Scalar;

namespace {

Scalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<long> c(-5, 5);
  std::uniform_int_distribution<int> e(-3, 3);
  Scalar num, den;
  for (int k = 0; k < 3; ++k) num += Scalar(c(rng)) * Scalar::q_pow(e(rng));
  for (int k = 0; k < 2; ++k) den += Scalar(c(rng)) * Scalar::q_pow(e(rng));
  if (den.is_zero()) den = Scalar(1);
  return num / den;
}

}  // namespace

TEST(QInt, Values) {
  EXPECT_TRUE(qons::qint(0).is_zero());
  EXPECT_EQ(qons::qint(1), Scalar(1));
  EXPECT_EQ(qons::qint(2), Scalar::q() + Scalar::q_pow(-1));
  EXPECT_EQ(qons::qint(-3), -qons::qint(3));
  EXPECT_EQ(qons::qint(3), Scalar::q_pow(2) + Scalar(1) + Scalar::q_pow(-2));
}

TEST(QInt, DefinitionAsQuotient) {
  for (int k = -7; k <= 7; ++k) EXPECT_EQ(qons::qint(k), (Scalar::q_pow(k) - Scalar::q_pow(-k)) / qons::qdiff()) << k;
}

TEST(QBinom, Examples) {
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(qons::qbinom(k, 0), Scalar(1));
  EXPECT_EQ(qons::qbinom(3, 1), qons::qint(3));
  EXPECT_EQ(qons::qbinom(3, 2), qons::qint(3));
  EXPECT_EQ(qons::qbinom(4, 2), qons::qint(4) * qons::qint(3) / qons::qint(2));
  EXPECT_THROW(qons::qbinom(2, 3), std::domain_error);
}

TEST(Specialize, Values) {
  EXPECT_DOUBLE_EQ(qons::qint(2).specialize({2, 0}).real(), 2.5);
  EXPECT_EQ(Scalar(1).specialize({0.7, 0.2}), qons::cplx(1, 0));
  EXPECT_THROW(qons::qdiff().inv().specialize({1, 0}), qons::EvaluationError);
}

TEST(Specialize, RootOfUnityGuard) {
  EXPECT_NO_THROW(qons::check_not_root_of_unity({1.3, 0}));
  EXPECT_THROW(qons::check_not_root_of_unity(std::polar(1.0, 2 * M_PI / 5)), std::domain_error);
}

TEST(Parse, Syntax) {
  EXPECT_EQ(Scalar::parse("q^4"), Scalar::q_pow(4));
  EXPECT_EQ(Scalar::parse("1/(q-q^-1)"), qons::qdiff().inv());
  EXPECT_EQ(Scalar::parse("3*q^2-1"), Scalar(3) * Scalar::q_pow(2) - Scalar(1));
  EXPECT_EQ(Scalar::parse("(q^2-1)/(q)"), Scalar::q() - Scalar::q_pow(-1));
  EXPECT_THROW(Scalar::parse("q^"), qons::ParseError);
  EXPECT_THROW(Scalar::parse("1/0"), std::exception);
}

TEST(ScalarProperty, FieldAxioms) {
  std::mt19937 rng(11);
  for (int t = 0; t < 60; ++t) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inv(), Scalar(1));
    }
  }
}

TEST(ScalarProperty, CanonicalFormIsUnique) {
  std::mt19937 rng(12);
  for (int t = 0; t < 40; ++t) {
    Scalar a = random_scalar(rng), b = random_scalar(rng);
    EXPECT_EQ((a - b).is_zero(), a.str() == b.str());
    if (!b.is_zero()) {
      EXPECT_EQ(((a * b) / b).str(), a.str());
    }
    EXPECT_EQ(Scalar::parse(a.str()), a);
  }
}

TEST(ScalarProperty, SpecializeIsRingHomomorphism) {
  std::mt19937 rng(13);
  const qons::cplx q0(1.3, 0.1);
  for (int t = 0; t < 40; ++t) {
    Scalar a = random_scalar(rng), b = random_scalar(rng);
    EXPECT_LT(std::abs((a + b).specialize(q0) - (a.specialize(q0) + b.specialize(q0))), 1e-9);
    EXPECT_LT(std::abs((a * b).specialize(q0) - a.specialize(q0) * b.specialize(q0)), 1e-9 * (1 + std::abs(a.specialize(q0) * b.specialize(q0))));
  }
}
