#pragma once
// Truncated series in z with Scalar or Matrix coefficients, polynomials and
// rational functions in z over Q(q), exp/log between H- and Theta-series,
// and rational reconstruction.

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qons/matrix.hpp"

namespace qons {

// ---------------------------------------------------------------------------
// Polynomials in z with Scalar coefficients, lowest degree first.

class SPoly {
 public:
  SPoly() = default;
  explicit SPoly(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }
  SPoly(const Scalar& c) {
    if (!c.is_zero()) c_.push_back(c);
  }
  static SPoly one() { return SPoly(Scalar(1)); }
  // c·z^k
  static SPoly monomial(const Scalar& c, std::size_t k) {
    std::vector<Scalar> v(k + 1);
    v[k] = c;
    return SPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar(); }
  Scalar lead() const { return c_.empty() ? Scalar() : c_.back(); }

  friend bool operator==(const SPoly& a, const SPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const SPoly& a, const SPoly& b) { return !(a == b); }

  friend SPoly operator+(const SPoly& a, const SPoly& b) {
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return SPoly(std::move(r));
  }
  friend SPoly operator-(const SPoly& a, const SPoly& b) {
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return SPoly(std::move(r));
  }
  SPoly operator-() const { return SPoly() - *this; }
  friend SPoly operator*(const SPoly& a, const SPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return SPoly(std::move(r));
  }
  friend SPoly operator*(const Scalar& s, const SPoly& a) { return SPoly(s) * a; }

  // p(λz)
  SPoly rescale(const Scalar& lambda) const {
    std::vector<Scalar> r = c_;
    Scalar p(1);
    for (auto& x : r) {
      x *= p;
      p *= lambda;
    }
    return SPoly(std::move(r));
  }

  // z^deg p(1/z)
  SPoly reversed() const { return SPoly(std::vector<Scalar>(c_.rbegin(), c_.rend())); }

  SPoly truncated(std::size_t n) const {
    if (c_.size() <= n) return *this;
    return SPoly(std::vector<Scalar>(c_.begin(), c_.begin() + static_cast<long>(n)));
  }

  Scalar eval(const Scalar& z) const {
    Scalar acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
  cplx eval(cplx z, cplx q0) const {
    cplx acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->specialize(q0);
    return acc;
  }

  // quotient and remainder over the coefficient field
  std::pair<SPoly, SPoly> divmod(const SPoly& b) const {
    if (b.is_zero()) throw std::domain_error("SPoly: division by zero");
    std::vector<Scalar> r = c_;
    if (c_.size() < b.c_.size()) return {SPoly(), *this};
    std::vector<Scalar> q(c_.size() - b.c_.size() + 1);
    Scalar il = b.lead().inv();
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
      Scalar t = r[static_cast<std::size_t>(i) + b.c_.size() - 1] * il;
      q[static_cast<std::size_t>(i)] = t;
      if (t.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[static_cast<std::size_t>(i) + j] -= t * b.c_[j];
    }
    return {SPoly(std::move(q)), SPoly(std::move(r))};
  }

  std::vector<std::string> coeff_strings() const {
    std::vector<std::string> s;
    for (const auto& x : c_) s.push_back(x.str());
    if (s.empty()) s.push_back("0");
    return s;
  }

  std::string str(const std::string& var = "z") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      std::string cs = c_[k].str();
      bool simple = c_[k].is_polynomial() && c_[k].num().size() == 1;
      if (!out.empty()) out += "+";
      if (k == 0) {
        out += simple ? cs : "(" + cs + ")";
        continue;
      }
      if (!c_[k].is_one()) out += (simple ? cs : "(" + cs + ")") + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

inline SPoly spoly_gcd(SPoly a, SPoly b) {
  while (!b.is_zero()) {
    SPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.lead().inv() * a;
}

// Rational function in z over Q(q).
struct RatFn {
  SPoly num = SPoly();
  SPoly den = SPoly::one();

  // divides out common factors and normalizes den(0) = 1 when possible,
  // otherwise makes den monic
  RatFn reduced() const {
    SPoly g = spoly_gcd(num, den);
    RatFn r{num, den};
    if (g.degree() > 0) {
      r.num = num.divmod(g).first;
      r.den = den.divmod(g).first;
    }
    Scalar n = r.den.coeff(0).is_zero() ? r.den.lead() : r.den.coeff(0);
    Scalar ni = n.inv();
    r.num = ni * r.num;
    r.den = ni * r.den;
    return r;
  }

  cplx eval(cplx z, cplx q0) const { return num.eval(z, q0) / den.eval(z, q0); }
  std::string str() const {
    if (den == SPoly::one()) return num.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
  }
};

// Cross-multiplied equality of rational functions.
inline bool rat_equal(const RatFn& a, const RatFn& b) { return a.num * b.den == b.num * a.den; }

// ---------------------------------------------------------------------------
// Truncated series.

template <class T>
struct TruncSeries {
  int lo = 0;          // exponent of c[0]
  std::vector<T> c;    // coefficients of z^lo, z^(lo+1), ...
  int order = 0;       // terms beyond z^order are unknown

  T at(int k, const T& zero) const {
    int i = k - lo;
    if (i < 0 || i >= static_cast<int>(c.size())) return zero;
    return c[static_cast<std::size_t>(i)];
  }
};

// Cauchy product of power series given as coefficient vectors (index = power),
// truncated to order T
template <class T>
std::vector<T> series_mul(const std::vector<T>& a, const std::vector<T>& b, int order, const T& zero) {
  std::vector<T> r(static_cast<std::size_t>(order + 1), zero);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= order; ++i)
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= order; ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline std::vector<Scalar> series_mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b, int order) {
  return series_mul<Scalar>(a, b, order, Scalar());
}

inline std::vector<Matrix> series_mul(const std::vector<Matrix>& a, const std::vector<Matrix>& b, int order) {
  std::size_t n = !a.empty() ? a[0].rows() : (!b.empty() ? b[0].rows() : 0);
  return series_mul<Matrix>(a, b, order, Matrix(n, n));
}

template <class T>
TruncSeries<T> series_mul(const TruncSeries<T>& a, const TruncSeries<T>& b, const T& zero) {
  TruncSeries<T> r;
  r.lo = a.lo + b.lo;
  r.order = std::min(a.order + b.lo, b.order + a.lo);
  r.c.assign(static_cast<std::size_t>(std::max(0, r.order - r.lo + 1)), zero);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      std::size_t k = i + j;
      if (k < r.c.size()) r.c[k] += a.c[i] * b.c[j];
    }
  return r;
}

// expansion of a rational function at z = 0, coefficients of z^0..z^order
inline std::vector<Scalar> expand_at_zero(const RatFn& f, int order) {
  Scalar d0 = f.den.coeff(0);
  if (d0.is_zero()) throw std::domain_error("expand_at_zero: pole at 0");
  Scalar id0 = d0.inv();
  std::vector<Scalar> s(static_cast<std::size_t>(order + 1));
  for (int k = 0; k <= order; ++k) {
    Scalar acc = f.num.coeff(static_cast<std::size_t>(k));
    for (int j = 1; j <= std::min(k, f.den.degree()); ++j) acc -= f.den.coeff(static_cast<std::size_t>(j)) * s[static_cast<std::size_t>(k - j)];
    s[static_cast<std::size_t>(k)] = acc * id0;
  }
  return s;
}

// Laurent expansion at z = ∞ in powers of z^-1: result.c[k] is the coefficient of z^(lo + k),
// with lo = deg num - deg den <= 0 and order = -order_terms.
inline TruncSeries<Scalar> expand_at_infinity(const RatFn& f, int terms) {
  if (f.num.is_zero()) return {0, std::vector<Scalar>(static_cast<std::size_t>(terms), Scalar()), -(terms - 1)};
  int n = f.num.degree(), d = f.den.degree();
  if (n > d) throw std::domain_error("expand_at_infinity: pole at infinity");
  // f(1/w) = w^(d-n) rev(num)(w)/rev(den)(w)
  RatFn g{f.num.reversed(), f.den.reversed()};
  std::vector<Scalar> s = expand_at_zero(g, terms - 1);
  TruncSeries<Scalar> out;
  out.lo = -(d - n) - (terms - 1);
  out.order = -(d - n);
  out.c.assign(s.rbegin(), s.rend());
  return out;
}

// coefficient of z^k in an expansion at ∞ (k <= 0)
inline Scalar infinity_coeff(const TruncSeries<Scalar>& s, int k) { return s.at(k, Scalar()); }

// ---------------------------------------------------------------------------
// exp / log between H- and Theta-series:
//   1 + Σ (q-q^-1) Θ_m z^m = exp((q-q^-1) Σ H_m z^m)

// H[m] for m = 1..T (H[0] ignored); returns Θ[0..T] with Θ[0] = 0 (the scalar
// convention Θ₀ = (q-q^-1)^-1 is kept separately)
inline std::vector<Matrix> theta_from_h(const std::vector<Matrix>& h, int order) {
  const std::size_t n = h.at(0).rows();
  const Scalar k = qdiff();
  std::vector<Matrix> x(static_cast<std::size_t>(order + 1), Matrix(n, n));
  for (int m = 1; m <= order && m < static_cast<int>(h.size()); ++m) x[static_cast<std::size_t>(m)] = k * h[static_cast<std::size_t>(m)];
  std::vector<Matrix> y(static_cast<std::size_t>(order + 1), Matrix(n, n));
  y[0] = Matrix::identity(n);
  for (int m = 1; m <= order; ++m) {
    Matrix acc(n, n);
    for (int j = 1; j <= m; ++j)
      if (!x[static_cast<std::size_t>(j)].is_zero()) acc += Scalar(j) * (x[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(m - j)]);
    y[static_cast<std::size_t>(m)] = Scalar(1) / Scalar(m) * acc;
  }
  Scalar ik = k.inv();
  std::vector<Matrix> theta(static_cast<std::size_t>(order + 1), Matrix(n, n));
  for (int m = 1; m <= order; ++m) theta[static_cast<std::size_t>(m)] = ik * y[static_cast<std::size_t>(m)];
  return theta;
}

// inverse of theta_from_h; Θ[m] for m = 1..T
inline std::vector<Matrix> h_from_theta(const std::vector<Matrix>& theta, int order) {
  const std::size_t n = theta.at(0).rows();
  const Scalar k = qdiff();
  std::vector<Matrix> y(static_cast<std::size_t>(order + 1), Matrix(n, n));
  y[0] = Matrix::identity(n);
  for (int m = 1; m <= order && m < static_cast<int>(theta.size()); ++m) y[static_cast<std::size_t>(m)] = k * theta[static_cast<std::size_t>(m)];
  std::vector<Matrix> x(static_cast<std::size_t>(order + 1), Matrix(n, n));
  for (int m = 1; m <= order; ++m) {
    Matrix acc(n, n);
    for (int j = 1; j < m; ++j)
      if (!x[static_cast<std::size_t>(j)].is_zero()) acc += Scalar(j) * (x[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(m - j)]);
    x[static_cast<std::size_t>(m)] = y[static_cast<std::size_t>(m)] - Scalar(1) / Scalar(m) * acc;
  }
  Scalar ik = k.inv();
  std::vector<Matrix> h(static_cast<std::size_t>(order + 1), Matrix(n, n));
  for (int m = 1; m <= order; ++m) h[static_cast<std::size_t>(m)] = ik * x[static_cast<std::size_t>(m)];
  return h;
}

// ---------------------------------------------------------------------------
// Rational reconstruction.

// Padé approximant with deg num <= max_num, deg den <= max_den, den(0) = 1,
// minimal denominator degree; free unknowns are set to zero.
inline std::optional<RatFn> pade_reconstruct(const std::vector<Scalar>& s, int max_num, int max_den) {
  const int order = static_cast<int>(s.size()) - 1;
  if (order < max_num + max_den) throw std::invalid_argument("pade_reconstruct: series too short for the degree budget");
  auto sc = [&](int k) { return k < 0 ? Scalar() : s[static_cast<std::size_t>(k)]; };
  for (int d = 0; d <= max_den; ++d) {
    // unknowns b_1..b_d; equations for k = max_num+1..order: s_k + Σ b_j s_{k-j} = 0
    const int neq = order - max_num;
    std::vector<Scalar> b;
    if (d > 0) {
      Matrix a(static_cast<std::size_t>(neq), static_cast<std::size_t>(d));
      std::vector<Scalar> rhs(static_cast<std::size_t>(neq));
      for (int e = 0; e < neq; ++e) {
        int k = max_num + 1 + e;
        for (int j = 1; j <= d; ++j) a(static_cast<std::size_t>(e), static_cast<std::size_t>(j - 1)) = sc(k - j);
        rhs[static_cast<std::size_t>(e)] = -sc(k);
      }
      if (!solve_linear(a, rhs, b)) continue;
    } else {
      bool ok = true;
      for (int k = max_num + 1; k <= order; ++k)
        if (!sc(k).is_zero()) ok = false;
      if (!ok) continue;
    }
    std::vector<Scalar> den(static_cast<std::size_t>(d + 1));
    den[0] = Scalar(1);
    for (int j = 1; j <= d; ++j) den[static_cast<std::size_t>(j)] = b[static_cast<std::size_t>(j - 1)];
    std::vector<Scalar> num(static_cast<std::size_t>(max_num + 1));
    for (int k = 0; k <= max_num; ++k) {
      Scalar acc;
      for (int j = 0; j <= std::min(k, d); ++j) acc += den[static_cast<std::size_t>(j)] * sc(k - j);
      num[static_cast<std::size_t>(k)] = acc;
    }
    return RatFn{SPoly(num), SPoly(den)};
  }
  return std::nullopt;
}

// Berlekamp–Massey: shortest connection polynomial C (C(0) = 1) with
// Σ_i C_i s_{n-i} = 0 for all n >= L; returns (C, L).
inline std::pair<SPoly, int> minimal_recurrence(const std::vector<Scalar>& s) {
  std::vector<Scalar> c{Scalar(1)}, b{Scalar(1)};
  int L = 0, m = 1;
  Scalar bd(1);
  for (std::size_t n = 0; n < s.size(); ++n) {
    Scalar d = s[n];
    for (int i = 1; i <= L && i < static_cast<int>(c.size()); ++i) d += c[static_cast<std::size_t>(i)] * s[n - static_cast<std::size_t>(i)];
    if (d.is_zero()) {
      ++m;
      continue;
    }
    Scalar coef = d / bd;
    std::vector<Scalar> t = c;
    if (c.size() < b.size() + static_cast<std::size_t>(m)) c.resize(b.size() + static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < b.size(); ++i) c[i + static_cast<std::size_t>(m)] -= coef * b[i];
    if (2 * L <= static_cast<int>(n)) {
      L = static_cast<int>(n) + 1 - L;
      b = std::move(t);
      bd = d;
      m = 1;
    } else {
      ++m;
    }
  }
  c.resize(static_cast<std::size_t>(L + 1));
  return {SPoly(c), L};
}

// Matrix-valued rational function N(z)/D(z) with scalar denominator.
struct MatRat {
  std::vector<Matrix> num;  // coefficients of z^k
  SPoly den;
};

// Common-denominator reconstruction of a matrix-coefficient series: the
// denominator is found from a random scalar projection and then checked on
// every entry. Returns nullopt when the data is too short to be consistent.
inline std::optional<MatRat> rational_fit(const std::vector<Matrix>& a, unsigned seed = 7) {
  if (a.empty()) return std::nullopt;
  const std::size_t n = a[0].rows();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> dist(1, 997);
  std::vector<Scalar> w(n * n);
  for (auto& x : w) x = Scalar(dist(rng));
  std::vector<Scalar> proj(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    Scalar acc;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!a[k](i, j).is_zero()) acc += w[i * n + j] * a[k](i, j);
    proj[k] = acc;
  }
  auto [c, L] = minimal_recurrence(proj);
  if (2 * L + 1 > static_cast<int>(a.size())) return std::nullopt;
  for (std::size_t k = static_cast<std::size_t>(L); k < a.size(); ++k) {
    Matrix acc(n, n);
    for (int i = 0; i <= L && i <= c.degree(); ++i) acc += c.coeff(static_cast<std::size_t>(i)) * a[k - static_cast<std::size_t>(i)];
    if (!acc.is_zero()) return std::nullopt;
  }
  MatRat r;
  r.den = c;
  for (int k = 0; k < L; ++k) {
    Matrix acc(n, n);
    for (int i = 0; i <= k && i <= c.degree(); ++i) acc += c.coeff(static_cast<std::size_t>(i)) * a[static_cast<std::size_t>(k - i)];
    r.num.push_back(acc);
  }
  while (!r.num.empty() && r.num.back().is_zero()) r.num.pop_back();
  return r;
}

// entry (i, j) of a matrix rational function
inline RatFn mat_entry(const MatRat& m, std::size_t i, std::size_t j) {
  std::vector<Scalar> c;
  for (const auto& x : m.num) c.push_back(x(i, j));
  return RatFn{SPoly(c), m.den};
}

}  // namespace qons
