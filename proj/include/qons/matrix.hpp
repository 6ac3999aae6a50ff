#pragma once
// Dense matrices over Scalar (exact) or cplx (numeric).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qons/scalar.hpp"

namespace qons {

template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}

  static Mat identity(std::size_t n) { return diag(std::vector<T>(n, T(1))); }
  static Mat scalar(std::size_t n, const T& v) { return diag(std::vector<T>(n, v)); }
  static Mat diag(const std::vector<T>& d) {
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  // single entry v at (i, j)
  static Mat unit(std::size_t n, std::size_t i, std::size_t j, const T& v = T(1)) {
    Mat m(n, n);
    m(i, j) = v;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!(x == T(0))) return false;
    return true;
  }

  friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  Mat& operator+=(const Mat& b) {
    same_shape(b);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
    return *this;
  }
  Mat& operator-=(const Mat& b) {
    same_shape(b);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= b.a_[k];
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  Mat operator-() const {
    Mat r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }

  friend Mat operator*(const T& s, const Mat& m) {
    Mat r(m.r_, m.c_);
    if (s == T(0)) return r;
    for (std::size_t k = 0; k < m.a_.size(); ++k)
      if (!(m.a_[k] == T(0))) r.a_[k] = s * m.a_[k];
    return r;
  }
  friend Mat operator*(const Mat& m, const T& s) { return s * m; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("Mat: dimension mismatch in product");
    Mat r(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (x == T(0)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) {
          const T& y = b(k, j);
          if (y == T(0)) continue;
          r(i, j) += x * y;
        }
      }
    return r;
  }

  Mat transpose() const {
    Mat r(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j)
        if (i != j && !((*this)(i, j) == T(0))) return false;
    return true;
  }

  std::vector<T> diagonal() const {
    std::vector<T> d;
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) d.push_back((*this)(i, i));
    return d;
  }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
  }

  Mat pow(unsigned k) const {
    Mat r = identity(r_), b = *this;
    while (k) {
      if (k & 1u) r = r * b;
      k >>= 1u;
      if (k) b = b * b;
    }
    return r;
  }

  // Gauss-Jordan inverse; throws if singular
  Mat inverse() const {
    if (!square()) throw std::invalid_argument("Mat: inverse of non-square matrix");
    const std::size_t n = r_;
    if (is_diagonal()) {
      Mat r(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        if ((*this)(i, i) == T(0)) throw std::domain_error("Mat: singular matrix");
        r(i, i) = T(1) / (*this)(i, i);
      }
      return r;
    }
    Mat a = *this, r = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t p = col;
      while (p < n && a(p, col) == T(0)) ++p;
      if (p == n) throw std::domain_error("Mat: singular matrix");
      if (p != col)
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a(p, j), a(col, j));
          std::swap(r(p, j), r(col, j));
        }
      T inv = T(1) / a(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(col, j) = a(col, j) * inv;
        r(col, j) = r(col, j) * inv;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == col || a(i, col) == T(0)) continue;
        T f = a(i, col);
        for (std::size_t j = 0; j < n; ++j) {
          a(i, j) -= f * a(col, j);
          r(i, j) -= f * r(col, j);
        }
      }
    }
    return r;
  }

  Mat block(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Mat b(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) b(i, j) = (*this)(rows[i], cols[j]);
    return b;
  }

  const std::vector<T>& data() const { return a_; }

 private:
  void same_shape(const Mat& b) const {
    if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("Mat: dimension mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using Matrix = Mat<Scalar>;
using CMatrix = Mat<cplx>;

// [A, B]_v = AB - v BA
template <class T>
Mat<T> qbracket(const Mat<T>& a, const Mat<T>& b, const T& v) {
  if (!a.square() || a.rows() != b.rows() || !b.square()) throw std::invalid_argument("qbracket: dimension mismatch");
  return a * b - v * (b * a);
}

template <class T>
Mat<T> commutator(const Mat<T>& a, const Mat<T>& b) {
  return qbracket(a, b, T(1));
}

template <class T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == T(0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!(b(k, l) == T(0))) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

inline CMatrix specialize(const Matrix& m, cplx q0) {
  CMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).specialize(q0);
  return r;
}

// characteristic polynomial det(x - A), coefficients lowest first (Faddeev-LeVerrier)
inline std::vector<Scalar> charpoly(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<Scalar> c(n + 1);
  c[n] = Scalar(1);
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + Matrix::scalar(n, c[n - k + 1]);
    c[n - k] = -(a * m).trace() / Scalar(static_cast<long>(k));
  }
  return c;
}

// first nonzero entry of A, for witnesses
inline std::string first_nonzero(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + a(i, j).str();
  return "";
}

// Solves A x = b over the field; free variables are set to zero.
// Returns false when the system is inconsistent.
inline bool solve_linear(Matrix a, std::vector<Scalar> b, std::vector<Scalar>& x) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && a(p, col).is_zero()) ++p;
    if (p == m) continue;
    if (p != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(row, j));
      std::swap(b[p], b[row]);
    }
    Scalar inv = a(row, col).inv();
    for (std::size_t j = col; j < n; ++j) a(row, j) *= inv;
    b[row] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      Scalar f = a(i, col);
      for (std::size_t j = col; j < n; ++j)
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
      b[i] -= f * b[row];
    }
    pivcol.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (!b[i].is_zero()) return false;
  x.assign(n, Scalar());
  for (std::size_t i = 0; i < pivcol.size(); ++i) x[pivcol[i]] = b[i];
  return true;
}

}  // namespace qons
