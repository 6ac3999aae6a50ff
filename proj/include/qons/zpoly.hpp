#pragma once
// Dense univariate polynomials over Z (GMP coefficients), lowest degree first.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qons {

class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(long c) {
    if (c != 0) c_.emplace_back(c);
  }
  ZPoly(const mpz_class& c) {
    if (c != 0) c_.push_back(c);
  }
  explicit ZPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

  static ZPoly monomial(const mpz_class& c, std::size_t k) {
    if (c == 0) return {};
    std::vector<mpz_class> v(k + 1);
    v[k] = c;
    return ZPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const mpz_class& lead() const { return c_.back(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(std::size_t k) const { return k < c_.size() ? c_[k] : mpz_class(0); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  // index of lowest nonzero coefficient
  std::size_t valuation() const {
    std::size_t v = 0;
    while (v < c_.size() && c_[v] == 0) ++v;
    return v;
  }

  bool is_monomial() const { return !c_.empty() && valuation() + 1 == c_.size(); }

  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ZPoly& a, const ZPoly& b) { return !(a == b); }

  ZPoly operator-() const {
    ZPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  ZPoly& operator+=(const ZPoly& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size());
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
    trim();
    return *this;
  }
  ZPoly& operator-=(const ZPoly& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size());
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] -= b.c_[i];
    trim();
    return *this;
  }
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }

  friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return ZPoly(std::move(r));
  }
  ZPoly& operator*=(const ZPoly& b) { return *this = *this * b; }

  ZPoly scaled(const mpz_class& k) const {
    if (k == 0) return {};
    ZPoly r = *this;
    for (auto& x : r.c_) x *= k;
    return r;
  }

  ZPoly shifted_up(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<mpz_class> v(k);
    v.insert(v.end(), c_.begin(), c_.end());
    return ZPoly(std::move(v));
  }
  ZPoly shifted_down(std::size_t k) const {
    if (k == 0) return *this;
    if (k >= c_.size()) return {};
    return ZPoly(std::vector<mpz_class>(c_.begin() + static_cast<long>(k), c_.end()));
  }

  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  // divides every coefficient by k (must divide exactly)
  ZPoly div_scalar_exact(const mpz_class& k) const {
    ZPoly r = *this;
    for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    return r;
  }

  ZPoly primitive() const {
    if (is_zero()) return {};
    mpz_class g = content();
    if (lead() < 0) g = -g;
    return div_scalar_exact(g);
  }

  // Exact division over Z; returns false when b does not divide *this in Z[q].
  bool try_divide(const ZPoly& b, ZPoly& quot) const {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (is_zero()) {
      quot = {};
      return true;
    }
    if (degree() < b.degree()) return false;
    std::vector<mpz_class> r = c_;
    std::vector<mpz_class> q(c_.size() - b.c_.size() + 1);
    const mpz_class& bl = b.lead();
    mpz_class t;
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
      mpz_class& top = r[static_cast<std::size_t>(i) + b.c_.size() - 1];
      if (top == 0) continue;
      if (!mpz_divisible_p(top.get_mpz_t(), bl.get_mpz_t())) return false;
      mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), bl.get_mpz_t());
      q[static_cast<std::size_t>(i)] = t;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        mpz_submul(r[static_cast<std::size_t>(i) + j].get_mpz_t(), t.get_mpz_t(), b.c_[j].get_mpz_t());
    }
    for (const auto& x : r)
      if (x != 0) return false;
    quot = ZPoly(std::move(q));
    return true;
  }

  ZPoly divexact(const ZPoly& b) const {
    ZPoly q;
    if (!try_divide(b, q)) throw std::logic_error("ZPoly::divexact: not divisible");
    return q;
  }

  // pseudo-remainder: lead(b)^(deg a - deg b + 1) * a mod b
  ZPoly pseudo_rem(const ZPoly& b) const {
    std::vector<mpz_class> r = c_;
    const std::size_t nb = b.c_.size();
    const mpz_class& bl = b.lead();
    while (r.size() >= nb) {
      mpz_class t = r.back();
      std::size_t shift = r.size() - nb;
      for (auto& x : r) x *= bl;
      for (std::size_t j = 0; j < nb; ++j) mpz_submul(r[shift + j].get_mpz_t(), t.get_mpz_t(), b.c_[j].get_mpz_t());
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return ZPoly(std::move(r));
  }

  mpz_class eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  template <class T>
  T eval_as(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(it->get_d());
    return acc;
  }

  mpz_class max_norm() const {
    mpz_class m = 0;
    for (const auto& x : c_)
      if (abs(x) > m) m = abs(x);
    return m;
  }

  // q ↦ k·q substitution helpers are not needed for Z[q]; reversal is.
  ZPoly reversed() const {
    std::vector<mpz_class> v(c_.rbegin(), c_.rend());
    return ZPoly(std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpz_class> c_;
};

namespace detail {

inline ZPoly gcd_primitive_prs(ZPoly a, ZPoly b) {
  a = a.primitive();
  b = b.primitive();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return ZPoly(1);
    ZPoly r = a.pseudo_rem(b);
    a = std::move(b);
    b = r.primitive();
  }
  return a.primitive();
}

// Heuristic gcd by evaluation at a large integer and balanced-digit
// interpolation; falls back to the primitive PRS.
inline ZPoly gcd_heuristic(const ZPoly& a, const ZPoly& b) {
  mpz_class xi = 2 * std::min(a.max_norm(), b.max_norm()) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    mpz_class ga = a.eval(xi), gb = b.eval(xi), g;
    mpz_gcd(g.get_mpz_t(), ga.get_mpz_t(), gb.get_mpz_t());
    std::vector<mpz_class> digits;
    mpz_class half = xi / 2;
    while (g != 0) {
      mpz_class d;
      mpz_fdiv_r(d.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
      if (d > half) d -= xi;
      digits.push_back(d);
      g -= d;
      mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), xi.get_mpz_t());
    }
    ZPoly cand = ZPoly(std::move(digits)).primitive();
    ZPoly qa, qb;
    if (!cand.is_zero() && a.try_divide(cand, qa) && b.try_divide(cand, qb)) return cand;
    xi = xi * 73794 / 27011;
  }
  return gcd_primitive_prs(a, b);
}

}  // namespace detail

// gcd in Z[q], normalized to positive leading coefficient
inline ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return b.is_zero() ? ZPoly() : (b.lead() < 0 ? -b : b);
  if (b.is_zero()) return a.lead() < 0 ? -a : a;
  mpz_class cg;
  mpz_class ca = a.content(), cb = b.content();
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  std::size_t v = std::min(a.valuation(), b.valuation());
  ZPoly pa = a.shifted_down(a.valuation()).primitive();
  ZPoly pb = b.shifted_down(b.valuation()).primitive();
  ZPoly g;
  if (pa.is_constant() || pb.is_constant()) {
    g = ZPoly(1);
  } else if (pa == pb) {
    g = pa;
  } else {
    ZPoly q;
    if (pa.degree() >= pb.degree() && pa.try_divide(pb, q))
      g = pb;
    else if (pb.degree() > pa.degree() && pb.try_divide(pa, q))
      g = pa;
    else
      g = detail::gcd_heuristic(pa, pb);
  }
  return g.scaled(cg).shifted_up(v);
}

}  // namespace qons
