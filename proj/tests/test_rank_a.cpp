#include <gtest/gtest.h>

#include "qons/rank_a.hpp"

using qons::AffineTypeA;
using qons::BExpr;
using qons::LoopModule;
using qons::Matrix;
using qons::RankNFamily;
using qons::RankParams;
using qons::Report;
using qons::Scalar;
using qons::WeylWord;

namespace {

std::vector<Scalar> kk_values(const RankParams& p) {
  std::vector<Scalar> kk;
  for (int j = 0; j <= p.N(); ++j) kk.push_back(p.KK(j));
  return kk;
}

RankParams twisted_params() { return {{Scalar::q_pow(2), Scalar(1), Scalar::q_pow(-2)}, {Scalar(), Scalar(), Scalar()}}; }

Matrix word_value(const AffineTypeA& t, const WeylWord& w, int j, const std::vector<Matrix>& b, const RankParams& p) {
  return qons::qsp_apply_word(t, w, BExpr::generator(j, t.nodes())).eval(b, kk_values(p));
}

}  // namespace

TEST(Weyl, OmegaWords) {
  EXPECT_EQ(qons::omega_word(1, 5).str(), "π s5 s4 s3 s2 s1");
  EXPECT_EQ(qons::omega_word(5, 5).str(), "π^5 s1 s2 s3 s4 s5");
  EXPECT_EQ(qons::omega_word(2, 5).length(), 8u);
  for (int N = 1; N <= 5; ++N)
    for (int i = 1; i <= N; ++i) {
      EXPECT_EQ(static_cast<int>(qons::omega_word(i, N).length()), i * (N - i + 1));
      EXPECT_EQ(qons::omega_prime_word(i, N).length() + 1, qons::omega_word(i, N).length());
    }
  EXPECT_THROW(qons::omega_word(0, 3), std::invalid_argument);
  EXPECT_THROW(qons::omega_word(4, 3), std::invalid_argument);
}

TEST(Weyl, CartanAndRotation) {
  AffineTypeA t1(1), t3(3);
  EXPECT_EQ(t1.a(0, 1), -2);
  EXPECT_EQ(t3.a(0, 3), -1);
  EXPECT_EQ(t3.a(1, 3), 0);
  EXPECT_EQ(t3.a(2, 2), 2);
  EXPECT_EQ(t3.pi(3), 0);
  EXPECT_EQ(t3.pi(0, -1), 3);
  EXPECT_EQ(t3.pi(1, 5), 2);
}

TEST(VectorModule, Certified) {
  for (int N = 1; N <= 3; ++N) {
    LoopModule v = qons::build_vector_evaluation(N, Scalar::q_pow(3));
    EXPECT_EQ(v.dim, static_cast<std::size_t>(N + 1));
    Matrix prod = Matrix::identity(v.dim);
    for (const auto& k : v.km.K) prod = prod * k;
    EXPECT_EQ(prod, Matrix::identity(v.dim));
    EXPECT_TRUE(qons::verify_kac_moody(v.km, AffineTypeA(N).cartan()).pass());
  }
  EXPECT_THROW(qons::build_vector_evaluation(2, Scalar()), std::invalid_argument);
}

TEST(VectorModule, RankOneIsV1) {
  const Scalar a = Scalar::q_pow(3);
  LoopModule v = qons::build_vector_evaluation(1, a);
  LoopModule w = qons::build_evaluation({1, -a * Scalar::q_pow(-2)}, 3, 6);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(v.km.E[i], w.km.E[i]);
    EXPECT_EQ(v.km.F[i], w.km.F[i]);
    EXPECT_EQ(v.km.K[i], w.km.K[i]);
  }
}

TEST(Braid, GeneratorImages) {
  AffineTypeA t(3);
  BExpr b1 = BExpr::generator(1, 4), b2 = BExpr::generator(2, 4);
  // 𝐓_2(B_1) = B_1 B_2 - q B_2 B_1, 𝐓_3(B_1) = B_1
  BExpr want = b1 * b2 + (-Scalar::q()) * (b2 * b1);
  EXPECT_EQ(qons::qsp_braid_step(t, 2, b1).terms, want.terms);
  EXPECT_EQ(qons::qsp_braid_step(t, 3, b1).terms, b1.terms);
  // 𝐓_i(B_i) = 𝕂_i^-1 B_i
  auto self = qons::qsp_braid_step(t, 1, b1);
  ASSERT_EQ(self.terms.size(), 1u);
  EXPECT_EQ(self.terms.begin()->first.first, (std::vector<int>{0, -1, 0, 0}));
  // rotation
  EXPECT_EQ(qons::qsp_rotate(t, 1, b1).terms, b2.terms);
  EXPECT_EQ(qons::qsp_rotate(t, 1, BExpr::generator(3, 4)).terms, BExpr::generator(0, 4).terms);
}

TEST(Braid, UnsupportedCartanEntryThrows) {
  AffineTypeA t(1);
  EXPECT_THROW(qons::qsp_braid_step(t, 1, BExpr::generator(0, 2)), std::domain_error);
  EXPECT_NO_THROW(qons::qsp_braid_step(t, 1, BExpr::generator(1, 2)));
}

TEST(Braid, RelationsOnVectorModule) {
  for (int N : {2, 3}) {
    AffineTypeA t(N);
    RankParams p = N == 2 ? twisted_params() : RankParams::standard(N);
    LoopModule v = qons::build_vector_evaluation(N, Scalar::q());
    auto b = qons::eta_embed_rank(p, v);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= N; ++j) {
        if (i == j) continue;
        WeylWord lhs, rhs;
        if (t.a(i, j) == 0) {
          lhs.letters = {i, j};
          rhs.letters = {j, i};
        } else {
          lhs.letters = {i, j, i};
          rhs.letters = {j, i, j};
        }
        for (int k = 0; k <= N; ++k)
          EXPECT_EQ(word_value(t, lhs, k, b, p), word_value(t, rhs, k, b, p)) << "N=" << N << " " << lhs.str() << " on B_" << k;
      }
  }
}

TEST(Brackets, NestedForms) {
  LoopModule v = qons::build_vector_evaluation(3, Scalar::q());
  auto b = qons::eta_embed_rank(RankParams::standard(3), v);
  std::vector<Matrix> y{b[1], b[2], b[3]};
  ASSERT_TRUE(qons::commutator(b[1], b[3]).is_zero());
  EXPECT_EQ(qons::pk_bracket(y), qons::pk_prime_bracket(y));
  EXPECT_EQ(qons::pk_bracket({b[1], b[2]}), qons::qbracket(b[1], b[2], Scalar::q()));
  EXPECT_THROW(qons::pk_bracket({}), std::invalid_argument);
}

TEST(Brackets, ChainOfBraidsIsPk) {
  AffineTypeA t(3);
  RankParams p = RankParams::standard(3);
  LoopModule v = qons::build_vector_evaluation(3, Scalar::q_pow(-1));
  auto b = qons::eta_embed_rank(p, v);
  for (int m = 2; m <= 3; ++m) {
    WeylWord w;
    for (int j = m; j >= 2; --j) w.letters.push_back(j);
    std::vector<Matrix> y(b.begin() + 1, b.begin() + 1 + m);
    EXPECT_EQ(word_value(t, w, 1, b, p), qons::pk_bracket(y)) << "m=" << m;
  }
}

TEST(AiMinusOne, ClosedFormMatchesWord) {
  for (int N = 1; N <= 3; ++N)
    for (const auto& p : {RankParams::standard(N), N == 2 ? twisted_params() : RankParams::standard(N)}) {
      LoopModule v = qons::build_vector_evaluation(N, Scalar::q_pow(2));
      auto b = qons::eta_embed_rank(p, v);
      for (int i = 1; i <= N; ++i) EXPECT_EQ(qons::build_Ai_minus1(i, b, p), qons::build_Ai_minus1_word(i, b, p)) << "N=" << N << " i=" << i;
    }
}

TEST(AiMinusOne, RankOneReducesToB0) {
  RankParams p{{Scalar::q_pow(2), Scalar(3)}, {Scalar(), Scalar()}};
  LoopModule v = qons::build_vector_evaluation(1, Scalar::q());
  auto b = qons::eta_embed_rank(p, v);
  EXPECT_EQ(qons::build_Ai_minus1(1, b, p), (Scalar::q_pow(-2) * p.c[0].inv()) * b[0]);
}

TEST(Family, GrelHold) {
  for (int N : {2, 3}) {
    RankParams p = N == 2 ? twisted_params() : RankParams::standard(N);
    RankNFamily f = qons::generate_rankn_family(p, qons::build_vector_evaluation(N, Scalar::q_pow(3)), 8, 8);
    Report r = qons::verify_grel(f, 2, 3);
    EXPECT_TRUE(r.pass()) << "N=" << N << ": " << r.first_failure();
  }
}

TEST(Family, UnsignedFamilyFailsOddCrossRelations) {
  RankParams p = RankParams::standard(2);
  LoopModule v = qons::build_vector_evaluation(2, Scalar::q_pow(3));
  RankNFamily f = qons::generate_rankn_family(p, v, 8, 8);
  // rebuild node 2 without the alternating sign
  qons::OnsagerParams op{Scalar::q_pow(-2) * p.Ci(2).inv(), p.c[2], Scalar(), Scalar()};
  Matrix b0 = (Scalar::q_pow(2) * op.c0) * qons::build_Ai_minus1(2, f.B, p);
  f.node[1] = qons::generate_family(b0, f.B[2], op, 8, 8, "unsigned");
  Report r = qons::verify_grel(f, 2, 3);
  EXPECT_FALSE(r.pass());
}

TEST(Family, BraidCompatibility) {
  for (int N = 1; N <= 3; ++N) {
    LoopModule v = qons::build_vector_evaluation(N, Scalar::q());
    for (int i = 1; i <= N; ++i) {
      Report r = qons::braid_compat_check(i, v, RankParams::standard(N));
      EXPECT_TRUE(r.pass()) << "N=" << N << " i=" << i << ": " << r.first_failure();
    }
  }
}

TEST(Family, SpectralStructure) {
  for (int N : {2, 3}) {
    RankParams p = N == 2 ? twisted_params() : RankParams::standard(N);
    RankNFamily f = qons::generate_rankn_family(p, qons::build_vector_evaluation(N, Scalar::q()), 8, 6);
    std::vector<qons::NodeSpectrum> sp;
    Report r = qons::rankn_spectral_check(f, 6, qons::cplx(1.3, 0), 1e-9, &sp);
    EXPECT_TRUE(r.pass()) << "N=" << N << ": " << r.first_failure();
    EXPECT_FALSE(sp.empty());
  }
}

TEST(QDifference, SolvesRatio) {
  // D(z) = F(q^-1 z)/F(qz) for F = 1 - 2z
  qons::RatFn d{qons::SPoly({Scalar(1), Scalar(-2) * Scalar::q_pow(-1)}), qons::SPoly({Scalar(1), Scalar(-2) * Scalar::q()})};
  auto ds = qons::expand_at_zero(d, 6);
  auto f = qons::qdifference_solve(ds);
  ASSERT_GE(f.size(), 3u);
  EXPECT_EQ(f[0], Scalar(1));
  EXPECT_EQ(f[1], Scalar(-2));
  for (std::size_t k = 2; k < f.size(); ++k) EXPECT_TRUE(f[k].is_zero());
}
