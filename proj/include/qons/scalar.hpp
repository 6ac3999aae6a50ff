#pragma once
// Exact elements of Q(q) kept in lowest terms, plus quantum numbers.

#include <cctype>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include "qons/zpoly.hpp"

namespace qons {

using cplx = std::complex<double>;

struct EvaluationError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Scalar {
 public:
  Scalar() : d_(1) {}
  Scalar(long c) : n_(c), d_(1) {}
  Scalar(const mpz_class& c) : n_(c), d_(1) {}

  static Scalar ratio(ZPoly n, ZPoly d) {
    if (d.is_zero()) throw std::domain_error("Scalar: zero denominator");
    Scalar s;
    ZPoly g = gcd(n, d);
    if (!g.is_one()) {
      n = n.divexact(g);
      d = d.divexact(g);
    }
    s.n_ = std::move(n);
    s.d_ = std::move(d);
    s.fix_sign();
    if (s.n_.is_zero()) s.d_ = ZPoly(1);
    return s;
  }

  static Scalar q() { return q_pow(1); }
  // q^k for any integer k
  static Scalar q_pow(int k) {
    Scalar s;
    if (k >= 0) {
      s.n_ = ZPoly::monomial(1, static_cast<std::size_t>(k));
    } else {
      s.n_ = ZPoly(1);
      s.d_ = ZPoly::monomial(1, static_cast<std::size_t>(-k));
    }
    return s;
  }

  const ZPoly& num() const { return n_; }
  const ZPoly& den() const { return d_; }
  bool is_zero() const { return n_.is_zero(); }
  bool is_one() const { return n_.is_one() && d_.is_one(); }
  bool is_polynomial() const { return d_.is_one(); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar operator-() const {
    Scalar r = *this;
    r.n_ = -r.n_;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.d_.is_one() && b.d_.is_one()) return raw(a.n_ + b.n_, ZPoly(1));
    if (a.d_ == b.d_) return ratio(a.n_ + b.n_, a.d_);
    ZPoly g = gcd(a.d_, b.d_);
    if (g.is_one()) return raw(a.n_ * b.d_ + b.n_ * a.d_, a.d_ * b.d_);
    ZPoly ad = a.d_.divexact(g), bd = b.d_.divexact(g);
    ZPoly t = a.n_ * bd + b.n_ * ad;
    if (t.is_zero()) return Scalar();
    ZPoly g2 = gcd(t, g);
    if (!g2.is_one()) {
      t = t.divexact(g2);
      g = g.divexact(g2);
    }
    Scalar r = raw(std::move(t), ad * bd * g);
    r.fix_sign();
    return r;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.d_.is_one() && b.d_.is_one()) return raw(a.n_ * b.n_, ZPoly(1));
    ZPoly g1 = gcd(a.n_, b.d_), g2 = gcd(b.n_, a.d_);
    ZPoly an = g1.is_one() ? a.n_ : a.n_.divexact(g1);
    ZPoly bd = g1.is_one() ? b.d_ : b.d_.divexact(g1);
    ZPoly bn = g2.is_one() ? b.n_ : b.n_.divexact(g2);
    ZPoly ad = g2.is_one() ? a.d_ : a.d_.divexact(g2);
    Scalar r = raw(an * bn, ad * bd);
    r.fix_sign();
    return r;
  }

  Scalar inv() const {
    if (is_zero()) throw std::domain_error("Scalar: inverse of zero");
    Scalar r = raw(d_, n_);
    r.fix_sign();
    return r;
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  Scalar pow(int k) const {
    if (k < 0) return inv().pow(-k);
    Scalar r(1), b = *this;
    while (k) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  // evaluation at q = q0
  cplx specialize(cplx q0) const {
    cplx dv = eval_poly(d_, q0);
    double scale = 0, p = 1;
    for (const auto& c : d_.coeffs()) {
      scale += std::abs(c.get_d()) * p;
      p *= std::abs(q0);
    }
    if (std::abs(dv) <= 1e-13 * scale) throw EvaluationError("Scalar::specialize: pole at q0");
    return eval_poly(n_, q0) / dv;
  }

  std::string str() const {
    if (d_.is_one()) return poly_str(n_);
    return "(" + poly_str(n_) + ")/(" + poly_str(d_) + ")";
  }

  static std::string poly_str(const ZPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& c = p.coeffs();
    for (int k = p.degree(); k >= 0; --k) {
      const mpz_class& a = c[static_cast<std::size_t>(k)];
      if (a == 0) continue;
      mpz_class m = abs(a);
      if (out.empty()) {
        if (a < 0) out += "-";
      } else {
        out += (a < 0) ? "-" : "+";
      }
      if (k == 0) {
        out += m.get_str();
        continue;
      }
      if (m != 1) out += m.get_str() + "*";
      out += "q";
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }

  static Scalar parse(const std::string& text);

 private:
  static Scalar raw(ZPoly n, ZPoly d) {
    Scalar s;
    s.n_ = std::move(n);
    s.d_ = std::move(d);
    if (s.n_.is_zero()) s.d_ = ZPoly(1);
    return s;
  }
  void fix_sign() {
    if (d_.lead() < 0) {
      d_ = -d_;
      n_ = -n_;
    }
  }
  static cplx eval_poly(const ZPoly& p, cplx x) {
    cplx acc = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + cplx(it->get_d(), 0);
    return acc;
  }

  ZPoly n_, d_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

namespace detail {

class ScalarParser {
 public:
  explicit ScalarParser(const std::string& s) : s_(s) {}

  Scalar run() {
    Scalar v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse scalar \"" + s_ + "\": " + what + " at position " + std::to_string(i_));
  }

  Scalar expr() {
    Scalar acc;
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Scalar term() {
    Scalar acc = power();
    for (;;) {
      if (eat('*')) {
        acc *= power();
      } else if (eat('/')) {
        Scalar d = power();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  Scalar power() {
    Scalar base = primary();
    if (eat('^')) {
      long e = exponent();
      if (base.is_zero() && e < 0) fail("zero to a negative power");
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  long exponent() {
    if (eat('(')) {
      long e = signed_int();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    return signed_int();
  }

  long signed_int() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected integer exponent");
    long v = std::stol(s_.substr(start, i_ - start));
    return neg ? -v : v;
  }

  Scalar primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'q') {
      ++i_;
      return Scalar::q();
    }
    if (c == '-') {
      ++i_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return Scalar(mpz_class(s_.substr(start, i_ - start)));
    }
    fail("unexpected character");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Scalar Scalar::parse(const std::string& text) { return detail::ScalarParser(text).run(); }

// [k] = (q^k - q^-k)/(q - q^-1)
inline Scalar qint(int k) {
  if (k == 0) return Scalar();
  int m = k < 0 ? -k : k;
  std::vector<mpz_class> c(static_cast<std::size_t>(2 * (m - 1) + 1));
  for (int i = 0; i < m; ++i) c[static_cast<std::size_t>(2 * i)] = 1;
  Scalar v = Scalar::ratio(ZPoly(std::move(c)), ZPoly::monomial(1, static_cast<std::size_t>(m - 1)));
  return k < 0 ? -v : v;
}

inline Scalar qfact(int k) {
  if (k < 0) throw std::domain_error("qfact: negative argument");
  Scalar r(1);
  for (int i = 2; i <= k; ++i) r *= qint(i);
  return r;
}

inline Scalar qbinom(int k, int l) {
  if (l < 0 || l > k) throw std::domain_error("qbinom: need 0 <= l <= k");
  return qfact(k) / (qfact(k - l) * qfact(l));
}

inline cplx specialize(const Scalar& s, cplx q0) { return s.specialize(q0); }

// q - q^-1
inline Scalar qdiff() { return Scalar::q() - Scalar::q_pow(-1); }

// rejects q0 close to a root of unity of order <= 48
inline void check_not_root_of_unity(cplx q0, double tol = 1e-9) {
  cplx p = 1;
  for (int k = 1; k <= 48; ++k) {
    p *= q0;
    if (std::abs(p - cplx(1, 0)) <= tol) throw std::domain_error("q0 is (numerically) a root of unity");
  }
}

}  // namespace qons
