#include <gtest/gtest.h>

#include "qons/loop_sl2.hpp"

using qons::LoopModule;
using qons::Matrix;
using qons::Scalar;

namespace {

int g_plus = 0, g_minus = 0;
int trial_plus(int, int) { return g_plus; }
int trial_minus(int, int) { return g_minus; }

std::vector<Scalar> sample_points() { return {Scalar(1), Scalar::q(), Scalar::q_pow(2), Scalar::q_pow(-1)}; }

}  // namespace

// Oracle for the geometric factors: exhaustive search over the two q-shift
// exponents of the 2x2 model. The relations fix their difference; the highest
// Drinfeld polynomial 1 - az (ψ_1 = a(q^2 - 1) on v_0) fixes the rest.
TEST(Evaluation, ExponentsFromBruteForceSolve) {
  const Scalar a = Scalar::q();
  std::vector<std::pair<int, int>> relations, passing;
  for (g_plus = -4; g_plus <= 4; ++g_plus)
    for (g_minus = -4; g_minus <= 4; ++g_minus) {
      LoopModule v = qons::build_evaluation_unchecked({1, a}, 2, 2, trial_plus, trial_minus);
      if (!qons::verify_drinfeld_relations(v, 2).pass()) continue;
      relations.emplace_back(g_plus, g_minus);
      if (v.psi[1](0, 0) == a * (Scalar::q_pow(2) - Scalar(1))) passing.emplace_back(g_plus, g_minus);
    }
  for (const auto& [gp, gm] : relations) EXPECT_EQ(gp - gm, relations.front().first - relations.front().second);
  ASSERT_EQ(passing.size(), 1u);
  EXPECT_EQ(passing[0].first, qons::eval_exponent_plus(1, 1));
  EXPECT_EQ(passing[0].second, qons::eval_exponent_minus(1, 0));
}

TEST(Evaluation, TrivialModule) {
  LoopModule t = qons::trivial_module();
  EXPECT_EQ(t.dim, 1u);
  EXPECT_EQ(t.K, Matrix::identity(1));
  for (int k = -3; k <= 3; ++k) {
    EXPECT_TRUE(t.x(1, k).is_zero());
    EXPECT_TRUE(t.x(-1, k).is_zero());
  }
  for (int k = 1; k <= 6; ++k) {
    EXPECT_TRUE(t.psi_at(k).is_zero());
    EXPECT_TRUE(t.phi_at(-k).is_zero());
  }
  EXPECT_TRUE(t.km.E[0].is_zero());
  EXPECT_TRUE(t.km.F[1].is_zero());
  EXPECT_EQ(t.km.K[0], Matrix::identity(1));
}

TEST(Evaluation, V1Basics) {
  LoopModule v = qons::build_evaluation({1, Scalar::q()});
  EXPECT_EQ(qons::commutator(v.x(1, 0), v.x(-1, 0)), qons::qdiff().inv() * (v.K - v.K.inverse()));
  EXPECT_EQ(v.km.K[0] * v.km.K[1], Matrix::identity(2));
  EXPECT_EQ(v.grading.deg[1], qons::DegVec{-1});
}

TEST(Evaluation, CertificationGrid) {
  for (int n = 0; n <= 3; ++n)
    for (const auto& a : sample_points()) {
      LoopModule v = qons::build_evaluation({n, a}, 3, 3);
      EXPECT_TRUE(qons::verify_drinfeld_relations(v, 3).pass()) << n << " " << a;
      EXPECT_TRUE(qons::verify_kac_moody(v.km, qons::cartan_affine_sl2()).pass()) << n << " " << a;
    }
}

TEST(Evaluation, PerturbationIsDetected) {
  LoopModule v = qons::build_evaluation({1, Scalar::q()});
  v.xp[1] = Scalar::q() * v.xp[1];
  qons::Report r = qons::verify_drinfeld_relations(v, 3);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.first_failure().empty());
}

TEST(Evaluation, RejectsZeroPoint) { EXPECT_THROW(qons::build_evaluation({1, Scalar()}), std::invalid_argument); }

TEST(Tensor, Examples) {
  LoopModule v = qons::build_evaluation({1, Scalar::q()}), w = qons::build_evaluation({1, Scalar::q_pow(3)});
  LoopModule vw = qons::tensor(v, w);
  EXPECT_EQ(vw.km.K[1], Matrix::diag({Scalar::q_pow(2), Scalar(1), Scalar(1), Scalar::q_pow(-2)}));
  EXPECT_TRUE(qons::verify_kac_moody(vw.km, qons::cartan_affine_sl2()).pass());
  LoopModule vt = qons::tensor(v, qons::trivial_module());
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(vt.km.E[i], v.km.E[i]);
    EXPECT_EQ(vt.km.F[i], v.km.F[i]);
    EXPECT_EQ(vt.km.K[i], v.km.K[i]);
  }
}

TEST(PhiSeries, TrivialAndDiagonal) {
  auto [ph, ps] = qons::phi_series(qons::trivial_module(), 4);
  EXPECT_EQ(ph[0], Matrix::identity(1));
  EXPECT_EQ(ps[0], Matrix::identity(1));
  for (int k = 1; k <= 4; ++k) EXPECT_TRUE(ps[static_cast<std::size_t>(k)].is_zero());
  auto [ph2, ps2] = qons::phi_series(qons::build_evaluation({2, Scalar::q()}), 4);
  for (int k = 0; k <= 4; ++k) EXPECT_TRUE(ps2[static_cast<std::size_t>(k)].is_diagonal());
}

TEST(AuxIdentities, EvaluationModules) {
  EXPECT_TRUE(qons::verify_aux_identities(qons::trivial_module(), 4).pass());
  EXPECT_TRUE(qons::verify_aux_identities(qons::build_evaluation({1, Scalar::q()}), 4).pass());
  EXPECT_TRUE(qons::verify_aux_identities(qons::build_evaluation({2, Scalar::q()}), 4).pass());
}
