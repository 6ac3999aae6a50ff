#pragma once
// Rank-one q-Onsager algebra on modules: the coideal embedding, generation of
// the Drinfeld-type family (A_r, H_m, Θ_m) from B_0, B_1, relation checks,
// rationality and C-symmetry, the anti-automorphism τ and one-dimensional
// characters.

#include <algorithm>
#include <array>
#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qons/loop_sl2.hpp"
#include "qons/numeric.hpp"

namespace qons {

struct OnsagerParams {
  Scalar c0 = Scalar(1), c1 = Scalar(1), s0, s1;

  Scalar C() const { return Scalar::q_pow(4) * c0 * c1; }
  Scalar KK0() const { return Scalar::q_pow(2) * c0; }
  Scalar KK1() const { return Scalar::q_pow(2) * c1; }
  bool standard() const { return s0.is_zero() && s1.is_zero(); }
  OnsagerParams with_s(const Scalar& t0, const Scalar& t1) const { return {c0, c1, t0, t1}; }
  void validate() const {
    if (c0.is_zero() || c1.is_zero()) throw std::invalid_argument("OnsagerParams: c_i must be nonzero");
  }
  ojson to_json() const { return {{"c", {c0.str(), c1.str()}}, {"s", {s0.str(), s1.str()}}, {"C", C().str()}}; }
};

// B_i = F_i - c_i E_i K_i^-1 + s_i K_i^-1
inline std::pair<Matrix, Matrix> eta_embed(const OnsagerParams& p, const LoopModule& v) {
  p.validate();
  if (v.km.nodes() != 2) throw std::invalid_argument("eta_embed: module lacks affine sl2 Kac–Moody matrices");
  const Scalar c[2] = {p.c0, p.c1}, s[2] = {p.s0, p.s1};
  Matrix b[2];
  for (int i = 0; i < 2; ++i) {
    Matrix kinv = v.km.K[static_cast<std::size_t>(i)].inverse();
    b[i] = v.km.F[static_cast<std::size_t>(i)] - c[i] * (v.km.E[static_cast<std::size_t>(i)] * kinv) + s[i] * kinv;
  }
  return {b[0], b[1]};
}

// Drinfeld-form images of A_0, A_-1 compared with B_1 and q^-2 c_0^-1 B_0.
inline Report eta_drinfeld_form_check(const OnsagerParams& p, const LoopModule& v) {
  Report r("embedding in Drinfeld form " + v.label);
  auto [b0, b1] = eta_embed(p, v);
  const Scalar q2 = Scalar::q_pow(2), qm2 = Scalar::q_pow(-2), qm4 = Scalar::q_pow(-4);
  Matrix kinv = v.K.inverse();
  Matrix a0 = v.x(-1, 0) - (p.c1 * q2) * (kinv * v.x(1, 0)) + p.s1 * kinv;
  Matrix am1 = -(qm4 * p.c0.inv()) * (v.K * v.x(1, -1)) + v.x(-1, 1) + (qm2 * p.c0.inv() * p.s0) * v.K;
  r.record("A0 image", a0 == b1, [&] { return first_nonzero(a0 - b1); });
  Matrix t = (qm2 * p.c0.inv()) * b0;
  r.record("A-1 image", am1 == t, [&] { return first_nonzero(am1 - t); });
  return r;
}

inline Report verify_qdolangrady(const Matrix& b0, const Matrix& b1, const OnsagerParams& p) {
  Report r("q-Dolan–Grady relations");
  const Matrix* b[2] = {&b0, &b1};
  const Scalar c[2] = {p.c0, p.c1};
  const Scalar two = qint(2);
  for (int i = 0; i < 2; ++i) {
    int j = 1 - i;
    const Matrix &bi = *b[i], &bj = *b[j];
    Matrix lhs(bi.rows(), bi.cols());
    for (int k = 0; k <= 3; ++k) {
      Scalar coef = qbinom(3, k);
      if (k % 2) coef = -coef;
      lhs += coef * (bi.pow(static_cast<unsigned>(3 - k)) * bj * bi.pow(static_cast<unsigned>(k)));
    }
    Matrix rhs = -(Scalar::q() * c[i] * two * two) * commutator(bi, bj);
    r.record("Dolan-Grady", lhs == rhs, [&] { return "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ") " + first_nonzero(lhs - rhs); });
  }
  return r;
}

// Generating data in the Drinfeld-type presentation; Θ stored with Θ_0 = (q-q^-1)^-1·I.
struct LuWangData {
  std::size_t dim = 0;
  Scalar C, c1;
  std::map<int, Matrix> A;
  std::vector<Matrix> H;      // H[m], m >= 1 (H[0] unused, zero)
  std::vector<Matrix> Theta;  // Theta[m], m >= 0

  bool has_A(int r) const { return A.count(r) > 0; }
  const Matrix& a(int r) const {
    auto it = A.find(r);
    if (it == A.end()) throw std::out_of_range("LuWangData: A_" + std::to_string(r) + " not generated");
    return it->second;
  }
  Matrix theta(int m) const {
    if (m < 0) return Matrix(dim, dim);
    return Theta.at(static_cast<std::size_t>(m));
  }
  int theta_max() const { return static_cast<int>(Theta.size()) - 1; }
  int a_min() const { return A.begin()->first; }
  int a_max() const { return A.rbegin()->first; }
};

struct OnsagerFamily {
  OnsagerParams params;
  std::string module_label;
  Matrix B0, B1, H1bar;
  LuWangData d;
  int R = 0, T = 0;
  std::vector<Matrix> theta_acute, theta_grave;  // s = 0..theta_max
  std::vector<std::string> log;

  const Matrix& A(int r) const { return d.a(r); }
  std::size_t dim() const { return d.dim; }
};

// Θ́(z) = (1 - q^-2 C z^2)/(1 - C z^2) Θ(z), coefficients 0..order
inline std::vector<Matrix> acute_from_theta(const std::vector<Matrix>& theta, const Scalar& C, int order) {
  const std::size_t n = theta.at(0).rows();
  std::vector<Scalar> g(static_cast<std::size_t>(order + 1));
  g[0] = Scalar(1);
  Scalar w = Scalar(1) - Scalar::q_pow(-2), ck(1);
  for (int k = 2; k <= order; k += 2) {
    ck *= C;
    g[static_cast<std::size_t>(k)] = w * ck;
  }
  std::vector<Matrix> out(static_cast<std::size_t>(order + 1), Matrix(n, n));
  for (int s = 0; s <= order; ++s)
    for (int k = 0; k <= s; k += 2) out[static_cast<std::size_t>(s)] += g[static_cast<std::size_t>(k)] * theta.at(static_cast<std::size_t>(s - k));
  return out;
}

// A_{r+1} = [H̄_1, A_r] + C A_{r-1}
inline void extend_A_up(OnsagerFamily& f, int rmax) {
  for (int r = f.d.a_max(); r < rmax; ++r) f.d.A[r + 1] = commutator(f.H1bar, f.d.a(r)) + f.d.C * f.d.a(r - 1);
}

// Generates A_r for -R <= r <= R and Θ_m, H_m for m <= max(T, R + 1).
inline OnsagerFamily generate_family(const Matrix& b0, const Matrix& b1, const OnsagerParams& p, int R, int T,
                                     const std::string& label = "") {
  p.validate();
  if (R < 2 || T < 1) throw std::invalid_argument("generate_family: need R >= 2 and T >= 1");
  OnsagerFamily f;
  f.params = p;
  f.module_label = label;
  f.R = R;
  f.T = T;
  f.B0 = b0;
  f.B1 = b1;
  const std::size_t n = b0.rows();
  const Scalar C = p.C(), Ci = C.inv(), qm2 = Scalar::q_pow(-2), q2 = Scalar::q_pow(2);
  f.d.dim = n;
  f.d.C = C;
  f.d.c1 = p.c1;
  f.d.A[0] = b1;
  f.d.A[-1] = (qm2 * p.c0.inv()) * b0;
  f.log.push_back("A_0 := B_1");
  f.log.push_back("A_-1 := q^-2 c_0^-1 B_0");
  Matrix h1 = (Scalar::q_pow(4) * p.c0) * qbracket(f.d.a(-1), f.d.a(0), qm2);
  f.log.push_back("H_1 := q^4 c_0 [A_-1, A_0]_{q^-2}");
  f.H1bar = qint(2).inv() * h1;
  extend_A_up(f, R);
  f.log.push_back("A_1..A_" + std::to_string(R) + " := [H̄_1, A_r] + C A_{r-1}");
  for (int r = -1; r > -R; --r) f.d.A[r - 1] = Ci * (f.d.a(r + 1) - commutator(f.H1bar, f.d.a(r)));
  f.log.push_back("A_-2..A_-" + std::to_string(R) + " := C^-1 (A_{r+1} - [H̄_1, A_r])");

  const int tm = std::max(T, R + 1);
  f.d.Theta.assign(static_cast<std::size_t>(tm + 1), Matrix(n, n));
  f.d.Theta[0] = qdiff().inv() * Matrix::identity(n);
  f.d.Theta[1] = h1;
  const Scalar c1i = p.c1.inv();
  for (int s = 0; s + 2 <= tm; ++s) {
    Matrix lhs = qbracket(f.d.a(-1), f.d.a(s + 1), qm2) - qm2 * qbracket(f.d.a(0), f.d.a(s), q2);
    Matrix t = qm2 * f.d.Theta[static_cast<std::size_t>(s)] + c1i * lhs;
    if (s == 0) t -= f.d.Theta[0];
    f.d.Theta[static_cast<std::size_t>(s + 2)] = C * t;
  }
  f.log.push_back("Θ_2..Θ_" + std::to_string(tm) + " from rel3 at r = -1");
  f.d.H = h_from_theta(f.d.Theta, tm);
  f.log.push_back("H_m := logarithm of the Θ-series");
  f.theta_acute = acute_from_theta(f.d.Theta, C, tm);
  for (const auto& m : f.theta_acute) f.theta_grave.push_back(qdiff() * m);
  return f;
}

inline OnsagerFamily generate_family(const OnsagerParams& p, const LoopModule& v, int R, int T) {
  auto [b0, b1] = eta_embed(p, v);
  return generate_family(b0, b1, p, R, T, v.label);
}

// rel1–rel3 on |r|, |s| <= window and 1 <= m, n <= mmax
inline Report verify_luwang(const LuWangData& d, int window, int mmax) {
  Report r("Lu–Wang relations");
  const std::size_t n = d.dim;
  const Scalar qm2 = Scalar::q_pow(-2), q2 = Scalar::q_pow(2);
  if (static_cast<int>(d.H.size()) <= mmax) throw std::invalid_argument("verify_luwang: H window too small");
  if (d.a_max() < window + mmax || d.a_min() > -window - mmax) throw std::invalid_argument("verify_luwang: A window too small");
  if (d.theta_max() < 2 * window + 1) throw std::invalid_argument("verify_luwang: Θ window too small");
  for (int m = 1; m <= mmax; ++m)
    for (int k = m + 1; k <= mmax; ++k) {
      Matrix c = commutator(d.H[static_cast<std::size_t>(m)], d.H[static_cast<std::size_t>(k)]);
      r.record("rel1", c.is_zero(), [&] { return "(m,n)=(" + std::to_string(m) + "," + std::to_string(k) + ") " + first_nonzero(c); });
    }
  for (int m = 1; m <= mmax; ++m) {
    Scalar coef = qint(2 * m) / Scalar(m), cm = d.C.pow(m);
    for (int rr = -window; rr <= window; ++rr) {
      Matrix res = commutator(d.H[static_cast<std::size_t>(m)], d.a(rr)) - coef * (d.a(rr + m) - cm * d.a(rr - m));
      r.record("rel2", res.is_zero(), [&] { return "(m,r)=(" + std::to_string(m) + "," + std::to_string(rr) + ") " + first_nonzero(res); });
    }
  }
  for (int rr = -window; rr <= window; ++rr)
    for (int s = -window; s <= window; ++s) {
      Matrix lhs = qbracket(d.a(rr), d.a(s + 1), qm2) - qm2 * qbracket(d.a(rr + 1), d.a(s), q2);
      Matrix rhs = (d.c1 * d.C.pow(rr)) * d.theta(s - rr + 1) - (qm2 * d.c1 * d.C.pow(rr + 1)) * d.theta(s - rr - 1) +
                   (d.c1 * d.C.pow(s)) * d.theta(rr - s + 1) - (qm2 * d.c1 * d.C.pow(s + 1)) * d.theta(rr - s - 1);
      Matrix res = lhs - rhs;
      r.record("rel3", res.is_zero(), [&] { return "(r,s)=(" + std::to_string(rr) + "," + std::to_string(s) + ") " + first_nonzero(res); });
    }
  // structural: Θ-series commute, Θ_1 = H_1, exp/log consistency
  for (int m = 1; m <= d.theta_max(); ++m)
    for (int k = m + 1; k <= d.theta_max(); ++k)
      r.record("Theta commute", commutator(d.theta(m), d.theta(k)).is_zero(), [&] { return "(m,n)=(" + std::to_string(m) + "," + std::to_string(k) + ")"; });
  r.record("Theta_1 = H_1", d.theta(1) == d.H.at(1), "");
  (void)n;
  return r;
}

inline Report verify_luwang(const OnsagerFamily& f, int window, int mmax) { return verify_luwang(f.d, window, mmax); }

// τ(A_r) = C^r A_{-r}, τ(H_m) = H_m; on the dual module every generator acts by its transpose
inline LuWangData tau_dual(const LuWangData& d) {
  LuWangData t;
  t.dim = d.dim;
  t.C = d.C;
  t.c1 = d.c1;
  const int w = std::min(d.a_max(), -d.a_min());
  for (int r = -w; r <= w; ++r) t.A[r] = d.C.pow(r) * d.a(-r).transpose();
  for (const auto& h : d.H) t.H.push_back(h.transpose());
  for (const auto& th : d.Theta) t.Theta.push_back(th.transpose());
  return t;
}

inline Report tau_dual_check(const OnsagerFamily& f, int window, int mmax) {
  Report r("tau duality " + f.module_label);
  r.merge(verify_luwang(tau_dual(f.d), window, mmax), "dual ");
  return r;
}

// ---------------------------------------------------------------------------
// Rationality.

struct RationalityResult {
  Report report;
  std::optional<MatRat> A_rat;     // 𝒜(z) = N(z)/D(z)
  std::vector<Matrix> theta_num;  // ϑ(z) = P(z)/E(z)
  SPoly theta_den;
};

inline std::vector<Matrix> mpoly_mul_scalar(const SPoly& s, const std::vector<Matrix>& m, std::size_t n) {
  std::vector<Matrix> r;
  if (s.is_zero() || m.empty()) return r;
  r.assign(static_cast<std::size_t>(s.degree()) + m.size(), Matrix(n, n));
  for (int i = 0; i <= s.degree(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!s.coeff(static_cast<std::size_t>(i)).is_zero()) r[static_cast<std::size_t>(i) + j] += s.coeff(static_cast<std::size_t>(i)) * m[j];
  return r;
}

inline bool mpoly_equal(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::size_t n) {
  std::size_t len = std::max(a.size(), b.size());
  Matrix z(n, n);
  for (std::size_t k = 0; k < len; ++k) {
    const Matrix& x = k < a.size() ? a[k] : z;
    const Matrix& y = k < b.size() ? b[k] : z;
    if (x != y) return false;
  }
  return true;
}

inline RationalityResult rationality_check(OnsagerFamily& f, int order) {
  RationalityResult out{Report("rationality " + f.module_label), std::nullopt, {}, SPoly()};
  Report& r = out.report;
  const std::size_t n = f.dim();
  const Scalar C = f.d.C, qm2 = Scalar::q_pow(-2), q2 = Scalar::q_pow(2);
  // (1 - ad_{H̄_1} z - C z^2) A_+(z) = A_0 + C A_-1 z
  for (int k = 0; k <= order; ++k) {
    Matrix res = f.A(k) - commutator(f.H1bar, k >= 1 ? f.A(k - 1) : Matrix(n, n)) - (k >= 2 ? C * f.A(k - 2) : Matrix(n, n));
    if (k == 0) res -= f.A(0);
    if (k == 1) res -= C * f.A(-1);
    r.record("A+ series identity", res.is_zero(), [&] { return "z^" + std::to_string(k) + " " + first_nonzero(res); });
  }

  // reconstruct 𝒜(z) from an upward A sequence, certified by the functional equation
  std::optional<MatRat> fit;
  int len = std::max(2 * f.R + 2, 16);
  const int cap = static_cast<int>(8 * n * n + 8);
  while (true) {
    extend_A_up(f, len - 1);
    std::vector<Matrix> seq;
    for (int k = 0; k < len; ++k) seq.push_back(f.A(k));
    fit = rational_fit(seq);
    if (fit) {
      // (1 - ad z - C z^2) N(z) == D(z) (A_0 + C A_-1 z)
      std::vector<Matrix> lhs(fit->num.size() + 2, Matrix(n, n));
      for (std::size_t k = 0; k < fit->num.size(); ++k) {
        lhs[k] += fit->num[k];
        lhs[k + 1] -= commutator(f.H1bar, fit->num[k]);
        lhs[k + 2] -= C * fit->num[k];
      }
      std::vector<Matrix> rhs = mpoly_mul_scalar(fit->den, {f.A(0), C * f.A(-1)}, n);
      if (mpoly_equal(lhs, rhs, n)) break;
      fit.reset();
    }
    if (len >= cap) break;
    len = std::min(cap, 2 * len);
  }
  if (!fit) {
    r.inconclusive("A rational function", "no certified reconstruction from " + std::to_string(len) + " terms");
    return out;
  }
  r.record("A rational function", true);
  r.data["A_den_degree"] = fit->den.degree();
  r.data["A_den"] = fit->den.coeff_strings();
  out.A_rat = fit;

  // expansion at ∞ equals A_-(z) = -Σ_{r<=-1} A_r z^r
  const int neg = f.R;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatFn e = mat_entry(*fit, i, j);
      TruncSeries<Scalar> ex = expand_at_infinity(e, neg + fit->den.degree() + 1);
      for (int k = 1; k <= neg; ++k) {
        Scalar want = -f.A(-k)(i, j);
        Scalar got = infinity_coeff(ex, -k);
        r.record("A+ and -A- one function", got == want, [&] { return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") z^-" + std::to_string(k); });
      }
      r.record("A regular at infinity", ex.order <= 0 && infinity_coeff(ex, 0).is_zero(), "nonzero constant term at infinity");
    }

  // ϑ(z) = P(z)/E(z): P = (1 - C z^2) Θ_0 D + c_1^-1 C (z [A_-1, N]_{q^-2} - q^-2 z^2 [A_0, N]_{q^2}),  E = D (1 - C z^2)
  const SPoly w({Scalar(1), Scalar(), -C});
  const SPoly& D = fit->den;
  const Scalar c1iC = f.params.c1.inv() * C;
  std::vector<Matrix> P = mpoly_mul_scalar(w * D, {f.d.theta(0)}, n);
  P.resize(std::max(P.size(), fit->num.size() + 3), Matrix(n, n));
  for (std::size_t k = 0; k < fit->num.size(); ++k) {
    P[k + 1] += c1iC * qbracket(f.A(-1), fit->num[k], qm2);
    P[k + 2] -= (c1iC * qm2) * qbracket(f.A(0), fit->num[k], q2);
  }
  while (!P.empty() && P.back().is_zero()) P.pop_back();
  SPoly E = D * w;
  out.theta_num = P;
  out.theta_den = E;
  // P ≡ E Θ́ mod z^{order+1}
  const int tmax = static_cast<int>(f.theta_acute.size()) - 1;
  for (int k = 0; k <= tmax; ++k) {
    Matrix acc = k < static_cast<int>(P.size()) ? P[static_cast<std::size_t>(k)] : Matrix(n, n);
    for (int j = 0; j <= std::min(k, E.degree()); ++j) acc -= E.coeff(static_cast<std::size_t>(j)) * f.theta_acute[static_cast<std::size_t>(k - j)];
    r.record("theta rational function", acc.is_zero(), [&] { return "z^" + std::to_string(k) + " " + first_nonzero(acc); });
  }
  // C-symmetry: with X̂(z) = z^e X(C^-1 z^-1), P Ê = P̂ E
  const int e = std::max(E.degree(), static_cast<int>(P.size()) - 1);
  r.record("theta regular at infinity", static_cast<int>(P.size()) - 1 <= E.degree(), "deg P > deg E");
  const Scalar Cinv = C.inv();
  std::vector<Scalar> eh(static_cast<std::size_t>(e + 1));
  for (int k = 0; k <= E.degree(); ++k) eh[static_cast<std::size_t>(e - k)] = E.coeff(static_cast<std::size_t>(k)) * Cinv.pow(k);
  std::vector<Matrix> ph(static_cast<std::size_t>(e + 1), Matrix(n, n));
  for (int k = 0; k < static_cast<int>(P.size()); ++k) ph[static_cast<std::size_t>(e - k)] = Cinv.pow(k) * P[static_cast<std::size_t>(k)];
  std::vector<Matrix> lhs = mpoly_mul_scalar(SPoly(eh), P, n), rhs = mpoly_mul_scalar(E, ph, n);
  r.record("C-symmetry", mpoly_equal(lhs, rhs, n), "P(z)Ê(z) != P̂(z)E(z)");
  r.data["theta_den"] = E.coeff_strings();
  (void)order;
  return out;
}

// ---------------------------------------------------------------------------
// One-dimensional modules.

// closed form of ξ_{c,s}(Θ̀(z)) as a rational function
inline RatFn onedim_D_closed(const OnsagerParams& p) {
  const Scalar C = p.C(), t = Scalar::q_pow(-2) * p.c0.inv() * p.s0;
  const Scalar alpha = C * t * t + p.s1 * p.s1, beta = t * p.s1;
  const Scalar kappa = Scalar::q_pow(-1) * qdiff() * qdiff() * p.c1.inv() * C;
  const SPoly w({Scalar(1), Scalar(), -C});
  SPoly num = kappa * SPoly({Scalar(), beta, alpha, beta * C}) + w * w;
  return RatFn{num, w * w};
}

struct OneDimResult {
  Report report;
  std::vector<Scalar> pipeline, closed;
};

inline OneDimResult onedim_character(const OnsagerParams& p, int order) {
  OneDimResult out{Report("one-dimensional character"), {}, {}};
  LoopModule triv = trivial_module(1, 1);
  OnsagerFamily f = generate_family(p, triv, std::max(order, 2), order);
  Report& r = out.report;
  r.record("xi(A_0) = s_1", f.A(0)(0, 0) == p.s1, f.A(0)(0, 0).str());
  r.record("xi(A_-1) = q^-2 c_0^-1 s_0", f.A(-1)(0, 0) == Scalar::q_pow(-2) * p.c0.inv() * p.s0, f.A(-1)(0, 0).str());
  std::vector<Scalar> closed = expand_at_zero(onedim_D_closed(p), order);
  for (int k = 0; k <= order; ++k) {
    Scalar a = f.theta_grave[static_cast<std::size_t>(k)](0, 0);
    out.pipeline.push_back(a);
    r.record("D dual path", a == closed[static_cast<std::size_t>(k)], [&] { return "z^" + std::to_string(k) + ": " + a.str() + " vs " + closed[static_cast<std::size_t>(k)].str(); });
  }
  out.closed = closed;
  return out;
}

// Numeric rational fraction of a one-dimensional module: roots of the quartic
// numerator G(z) of D_{c,s}, paired under γ ↦ C^-1 γ^-1.
struct OneDimDRF {
  Report report;
  std::vector<cplx> roots;
  std::array<std::array<cplx, 2>, 2> pairs{};
  int degree = 2;          // degree of numerator and denominator of F after cancellation
  bool plus_minus_one = false;
  std::size_t orbit_size = 0;
  double max_residual = 0;
  std::string F;
};

inline OneDimDRF onedim_drf_numeric(const OnsagerParams& p, cplx q0, double tol = 1e-8) {
  check_not_root_of_unity(q0);
  OneDimDRF out{Report("one-dimensional rational fraction"), {}, {}, 2, false, 0, 0, ""};
  Report& r = out.report;
  const RatFn d = onedim_D_closed(p);
  const cplx C = p.C().specialize(q0);
  std::vector<cplx> g;
  for (const auto& c : d.num.coeffs()) g.push_back(c.specialize(q0));
  g.resize(5, cplx(0));
  out.roots = poly_roots(g);
  if (out.roots.size() != 4) {
    r.inconclusive("root pairing", "quartic degenerated to degree " + std::to_string(out.roots.size()));
    return out;
  }
  auto err = [&](cplx a, cplx b) { return std::abs(a * b * C - cplx(1)); };
  const int match[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  int best = 0;
  double best_err = 1e300;
  for (int m = 0; m < 3; ++m) {
    const auto& ro = out.roots;
    double e = std::max(err(ro[static_cast<std::size_t>(match[m][0])], ro[static_cast<std::size_t>(match[m][1])]),
                        err(ro[static_cast<std::size_t>(match[m][2])], ro[static_cast<std::size_t>(match[m][3])]));
    if (e < best_err) {
      best_err = e;
      best = m;
    }
  }
  r.data["pairing_error"] = best_err;
  if (best_err > 1e-5) {
    r.inconclusive("root pairing", "roots do not pair under C^-1 γ^-1 (error " + std::to_string(best_err) + ")");
    return out;
  }
  r.record("root pairing", true);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) out.pairs[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = out.roots[static_cast<std::size_t>(match[best][2 * k + j])];

  const cplx ci = 1.0 / C, half = std::sqrt(ci), I(0, 1);
  auto Fval = [&](cplx gk, cplx gl, double sign, cplx z) { return sign * I * std::sqrt(gk * gl * C) * (z * z - ci) / ((z - gk) * (z - gl)); };
  std::vector<cplx> samples;
  for (int j = 0; j < 10; ++j) samples.push_back(std::polar(0.45 + 0.11 * j, 0.3 + 0.61 * j));
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (double sign : {1.0, -1.0}) {
        cplx gk = out.pairs[0][static_cast<std::size_t>(k)], gl = out.pairs[1][static_cast<std::size_t>(l)];
        double res = 0;
        for (const auto& z : samples) {
          cplx v = d.eval(z, q0) * Fval(gk, gl, sign, z) * Fval(gk, gl, sign, ci / z);
          res = std::max(res, std::abs(v - cplx(1)));
        }
        out.max_residual = std::max(out.max_residual, res);
        ++out.orbit_size;
      }
  r.record("D F F(C^-1 z^-1) = 1", out.max_residual <= tol, [&] { return "residual " + std::to_string(out.max_residual); });
  // cancellation of denominator roots against z^2 - C^-1
  cplx gk = out.pairs[0][0], gl = out.pairs[1][0];
  auto near = [&](cplx a, cplx b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)); };
  int cancelled = 0;
  bool used_plus = false, used_minus = false;
  for (cplx g0 : {gk, gl}) {
    if (!used_plus && near(g0, half)) {
      used_plus = true;
      ++cancelled;
    } else if (!used_minus && near(g0, -half)) {
      used_minus = true;
      ++cancelled;
    }
  }
  out.degree = 2 - cancelled;
  out.plus_minus_one = out.degree == 0;
  if (out.plus_minus_one) {
    cplx v = Fval(gk, gl, 1.0, samples[0]);
    r.record("F constant", std::abs(std::abs(v) - 1) <= 1e-6 && std::abs(v.imag()) <= 1e-6, "F is not ±1");
  }
  std::ostringstream os;
  os.precision(12);
  os << "±i*sqrt(" << gk * gl * C << ")*(z^2-" << ci << ")/((z-" << gk << ")*(z-" << gl << "))";
  out.F = os.str();
  r.data["degree"] = out.degree;
  r.data["orbit_size"] = out.orbit_size;
  r.data["max_residual"] = out.max_residual;
  return out;
}

}  // namespace qons
