#pragma once
// Numeric backend: generalized eigenspaces and polynomial roots at a
// specialized q (Eigen).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qons/matrix.hpp"

namespace qons {

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using EMatrix = Eigen::MatrixXcd;

inline EMatrix to_eigen(const CMatrix& m) {
  EMatrix e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

struct EigenSpace {
  cplx lambda;
  std::size_t multiplicity = 0;
  std::vector<std::vector<cplx>> basis;
  double residual = 0;  // max ||(A - λ)^m v|| / ||v||
};

// Clusters eigenvalues (Jordan blocks split them by ~eps^(1/m)) and returns
// the null space of (A - λ)^m for each cluster.
inline std::vector<EigenSpace> generalized_eigenspaces(const CMatrix& a, double tol = 1e-9) {
  if (!a.square()) throw std::invalid_argument("generalized_eigenspaces: matrix not square");
  const auto n = static_cast<Eigen::Index>(a.rows());
  EMatrix m = to_eigen(a);
  if (n == 0) return {};
  Eigen::ComplexEigenSolver<EMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw NumericError("generalized_eigenspaces: eigenvalue iteration failed");
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  const double scale = std::max(1.0, m.norm());
  const double cluster_tol = std::max(1e-6, std::sqrt(tol)) * scale;
  std::vector<std::vector<cplx>> clusters;
  for (const auto& l : ev) {
    bool placed = false;
    for (auto& c : clusters)
      if (std::abs(c[0] - l) <= cluster_tol) {
        c.push_back(l);
        placed = true;
        break;
      }
    if (!placed) clusters.push_back({l});
  }
  std::vector<EigenSpace> out;
  for (const auto& c : clusters) {
    cplx lam = 0;
    for (const auto& x : c) lam += x;
    lam /= static_cast<double>(c.size());
    EMatrix s = m - lam * EMatrix::Identity(n, n);
    EMatrix p = EMatrix::Identity(n, n);
    for (std::size_t k = 0; k < c.size(); ++k) p = p * s;
    Eigen::JacobiSVD<EMatrix> svd(p, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const auto mult = static_cast<Eigen::Index>(c.size());
    EigenSpace e;
    e.lambda = lam;
    e.multiplicity = c.size();
    double gap_hi = mult < n ? sv(n - mult - 1) : scale;
    double gap_lo = sv(n - 1 - (mult - 1));
    if (gap_hi <= 1e3 * gap_lo && gap_lo > 0) throw NumericError("generalized_eigenspaces: ill-conditioned cluster near " + std::to_string(lam.real()));
    for (Eigen::Index k = n - mult; k < n; ++k) {
      Eigen::VectorXcd v = svd.matrixV().col(k);
      e.residual = std::max(e.residual, (p * v).norm() / v.norm());
      e.basis.emplace_back(v.data(), v.data() + n);
    }
    if (e.residual > std::max(tol, 1e-6) * std::pow(scale, static_cast<double>(c.size()))) throw NumericError("generalized_eigenspaces: residual above tolerance");
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const EigenSpace& x, const EigenSpace& y) {
    if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
    return x.lambda.imag() < y.lambda.imag();
  });
  return out;
}

// roots of Σ c_k z^k (lowest first) via the companion matrix, Newton-polished
inline std::vector<cplx> poly_roots(std::vector<cplx> c) {
  while (!c.empty() && c.back() == cplx(0)) c.pop_back();
  if (c.size() <= 1) return {};
  const auto d = static_cast<Eigen::Index>(c.size() - 1);
  EMatrix comp = EMatrix::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) comp(i, i - 1) = 1;
  for (Eigen::Index i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<EMatrix> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  auto eval = [&](cplx z, cplx& dv) {
    cplx v = 0;
    dv = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      dv = dv * z + v;
      v = v * z + *it;
    }
    return v;
  };
  for (auto& r : roots)
    for (int it = 0; it < 8; ++it) {
      cplx dv;
      cplx v = eval(r, dv);
      if (std::abs(dv) < 1e-300) break;
      cplx nr = r - v / dv;
      if (!std::isfinite(nr.real()) || !std::isfinite(nr.imag())) break;
      cplx dn;
      if (std::abs(eval(nr, dn)) >= std::abs(v)) break;
      r = nr;
    }
  return roots;
}

}  // namespace qons
