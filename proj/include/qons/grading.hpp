#pragma once
// Degree gradings on a module basis and degree-shift decomposition of operators.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qons/matrix.hpp"

namespace qons {

using DegVec = std::vector<int>;

struct Grading {
  std::vector<DegVec> deg;  // one degree vector per basis index

  static Grading scalar(const std::vector<int>& d) {
    Grading g;
    for (int x : d) g.deg.push_back({x});
    return g;
  }
  std::size_t size() const { return deg.size(); }
  std::size_t rank() const { return deg.empty() ? 0 : deg[0].size(); }

  // coordinatewise sum of two gradings on the tensor basis (first index slow)
  static Grading tensor_sum(const Grading& a, const Grading& b) {
    Grading g;
    for (const auto& x : a.deg)
      for (const auto& y : b.deg) {
        DegVec s(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) s[k] = x[k] + y[k];
        g.deg.push_back(s);
      }
    return g;
  }
  // grading of V⊗W by the degree of one factor only
  static Grading tensor_factor(const Grading& a, const Grading& b, int which) {
    Grading g;
    for (const auto& x : a.deg)
      for (const auto& y : b.deg) g.deg.push_back(which == 0 ? x : y);
    return g;
  }
};

inline DegVec deg_sub(const DegVec& a, const DegVec& b) {
  DegVec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

inline bool deg_is_zero(const DegVec& d) {
  for (int x : d)
    if (x != 0) return false;
  return true;
}

// nonzero with all coordinates >= 0
inline bool deg_is_positive(const DegVec& d) {
  bool any = false;
  for (int x : d) {
    if (x < 0) return false;
    if (x > 0) any = true;
  }
  return any;
}

inline std::string deg_str(const DegVec& d) {
  std::string s = "(";
  for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
  return s + ")";
}

struct GradedOperator {
  Matrix matrix;
  std::map<DegVec, Matrix> components;

  Matrix reassemble() const {
    Matrix r(matrix.rows(), matrix.cols());
    for (const auto& [shift, m] : components) r += m;
    return r;
  }
};

inline GradedOperator degree_components(const Matrix& a, const Grading& g) {
  if (g.size() != a.rows() || g.size() != a.cols()) throw std::invalid_argument("degree_components: grading size mismatch");
  GradedOperator out{a, {}};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      DegVec s = deg_sub(g.deg[i], g.deg[j]);
      auto it = out.components.find(s);
      if (it == out.components.end()) it = out.components.emplace(s, Matrix(a.rows(), a.cols())).first;
      it->second(i, j) = a(i, j);
    }
  return out;
}

// component of A with the given degree shift (zero matrix if absent)
inline Matrix degree_component(const Matrix& a, const Grading& g, const DegVec& shift) {
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && deg_sub(g.deg[i], g.deg[j]) == shift) r(i, j) = a(i, j);
  return r;
}

enum class Direction { raising, lowering };

struct DiagonalBlock {
  int degree = 0;
  std::vector<std::size_t> indices;
  Matrix block;
};

struct TriangularResult {
  bool ok = true;
  std::string witness;
  std::vector<DiagonalBlock> blocks;  // ordered by decreasing degree
};

inline TriangularResult assert_block_triangular(const Matrix& a, const Grading& g, Direction dir) {
  if (g.rank() != 1) throw std::invalid_argument("assert_block_triangular: needs a one-dimensional grading");
  TriangularResult res;
  for (std::size_t i = 0; i < a.rows() && res.ok; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      int s = g.deg[i][0] - g.deg[j][0];
      bool allowed = s == 0 || (dir == Direction::raising ? s > 0 : s < 0);
      if (!allowed) {
        res.ok = false;
        res.witness = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") degrees (" + std::to_string(g.deg[i][0]) + "," +
                      std::to_string(g.deg[j][0]) + ") value " + a(i, j).str();
        break;
      }
    }
  std::map<int, std::vector<std::size_t>, std::greater<>> pieces;
  for (std::size_t i = 0; i < g.size(); ++i) pieces[g.deg[i][0]].push_back(i);
  for (const auto& [d, idx] : pieces) res.blocks.push_back({d, idx, a.block(idx, idx)});
  return res;
}

}  // namespace qons
