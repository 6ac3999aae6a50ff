#include <gtest/gtest.h>

#include <random>

#include "qons/grading.hpp"
#include "qons/numeric.hpp"

using qons::Matrix;
using qons::Scalar;

namespace {

Matrix random_matrix(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<long> c(-3, 3);
  std::uniform_int_distribution<int> e(-2, 2);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(c(rng)) * Scalar::q_pow(e(rng));
  return m;
}

}  // namespace

TEST(QBracket, Examples) {
  std::mt19937 rng(3);
  Matrix a = random_matrix(3, rng), b = random_matrix(3, rng);
  EXPECT_TRUE(qons::qbracket(a, a, Scalar(1)).is_zero());
  Scalar v = Scalar::q_pow(3);
  EXPECT_EQ(qons::qbracket(Matrix::identity(3), b, v), (Scalar(1) - v) * b);
  // standard sl2 pair on C^2
  Matrix e = Matrix::unit(2, 0, 1), f = Matrix::unit(2, 1, 0), k = Matrix::diag({Scalar::q(), Scalar::q_pow(-1)});
  EXPECT_EQ(qons::commutator(e, f), qons::qdiff().inv() * (k - k.inverse()));
  EXPECT_THROW(qons::qbracket(Matrix(2, 2), Matrix(3, 3), Scalar(1)), std::invalid_argument);
}

TEST(MatrixOps, InverseAndKron) {
  std::mt19937 rng(4);
  Matrix a = random_matrix(3, rng) + Scalar(7) * Matrix::identity(3);
  EXPECT_EQ(a * a.inverse(), Matrix::identity(3));
  Matrix b = random_matrix(2, rng), c = random_matrix(3, rng), d = random_matrix(2, rng);
  EXPECT_EQ(qons::kron(b, c) * qons::kron(d, a), qons::kron(b * d, c * a));
}

TEST(MatrixOps, CharpolyCayleyHamilton) {
  std::mt19937 rng(5);
  Matrix a = random_matrix(3, rng);
  auto c = qons::charpoly(a);
  Matrix acc(3, 3), p = Matrix::identity(3);
  for (const auto& x : c) {
    acc += x * p;
    p = p * a;
  }
  EXPECT_TRUE(acc.is_zero());
  EXPECT_EQ(c[2], -a.trace());
}

TEST(MatrixOps, SolveLinear) {
  Matrix a(2, 2);
  a(0, 0) = Scalar::q();
  a(0, 1) = Scalar(1);
  a(1, 0) = Scalar(1);
  a(1, 1) = Scalar::q();
  std::vector<Scalar> x;
  ASSERT_TRUE(qons::solve_linear(a, {Scalar(1), Scalar(0)}, x));
  EXPECT_EQ(a(0, 0) * x[0] + a(0, 1) * x[1], Scalar(1));
  EXPECT_TRUE((a(1, 0) * x[0] + a(1, 1) * x[1]).is_zero());
  Matrix s(2, 2);
  s(0, 0) = Scalar(1);
  s(1, 0) = Scalar(1);
  EXPECT_FALSE(qons::solve_linear(s, {Scalar(1), Scalar(2)}, x));
}

TEST(DegreeComponents, Examples) {
  qons::Grading g = qons::Grading::scalar({0, -1});
  Matrix d = Matrix::diag({Scalar(2), Scalar::q()});
  auto gd = qons::degree_components(d, g);
  ASSERT_EQ(gd.components.size(), 1u);
  EXPECT_EQ(gd.components.begin()->first, qons::DegVec{0});
  auto gr = qons::degree_components(Matrix::unit(2, 0, 1, Scalar::q()), g);
  ASSERT_EQ(gr.components.size(), 1u);
  EXPECT_EQ(gr.components.begin()->first, qons::DegVec{1});
}

TEST(DegreeComponents, ReassemblyProperty) {
  std::mt19937 rng(6);
  qons::Grading g = qons::Grading::scalar({0, -1, -1, -2});
  for (int t = 0; t < 10; ++t) {
    Matrix a = random_matrix(4, rng);
    auto gd = qons::degree_components(a, g);
    EXPECT_EQ(gd.reassemble(), a);
    for (const auto& [shift, m] : gd.components)
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if (!m(i, j).is_zero()) {
            EXPECT_EQ(g.deg[i][0] - g.deg[j][0], shift[0]);
          }
  }
}

TEST(BlockTriangular, Examples) {
  qons::Grading g = qons::Grading::scalar({0, -1, -2});
  Matrix u(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) u(i, j) = Scalar(static_cast<long>(1 + i + 2 * j));
  auto r = qons::assert_block_triangular(u, g, qons::Direction::raising);
  EXPECT_TRUE(r.ok);
  ASSERT_EQ(r.blocks.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(r.blocks[k].block(0, 0), u(k, k));
  auto bad = qons::assert_block_triangular(Matrix::unit(3, 1, 0), g, qons::Direction::raising);
  EXPECT_FALSE(bad.ok);
  EXPECT_FALSE(bad.witness.empty());
}

TEST(Numeric, GeneralizedEigenspaces) {
  qons::CMatrix d(3, 3);
  d(0, 0) = 2;
  d(1, 1) = 2;
  d(2, 2) = 3;
  auto es = qons::generalized_eigenspaces(d);
  ASSERT_EQ(es.size(), 2u);
  EXPECT_NEAR(es[0].lambda.real(), 2, 1e-9);
  EXPECT_EQ(es[0].multiplicity, 2u);
  EXPECT_EQ(es[1].multiplicity, 1u);
  qons::CMatrix j(2, 2);
  j(0, 0) = 1;
  j(0, 1) = 1;
  j(1, 1) = 1;
  auto ej = qons::generalized_eigenspaces(j);
  ASSERT_EQ(ej.size(), 1u);
  EXPECT_EQ(ej[0].multiplicity, 2u);
  EXPECT_NEAR(ej[0].lambda.real(), 1, 1e-6);
}

TEST(Numeric, PolyRoots) {
  auto r = qons::poly_roots({qons::cplx(6), qons::cplx(-5), qons::cplx(1)});
  ASSERT_EQ(r.size(), 2u);
  std::sort(r.begin(), r.end(), [](auto a, auto b) { return a.real() < b.real(); });
  EXPECT_NEAR(r[0].real(), 2, 1e-12);
  EXPECT_NEAR(r[1].real(), 3, 1e-12);
}
