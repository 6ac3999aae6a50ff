#pragma once
// Finite-dimensional modules of the quantum loop algebra of sl2: evaluation
// modules in Drinfeld form, the Kac–Moody dictionary, tensor products and
// relation verifiers.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qons/grading.hpp"
#include "qons/report.hpp"
#include "qons/series.hpp"

namespace qons {

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Serre-presentation matrices indexed by node.
struct KacMoody {
  std::vector<Matrix> E, F, K;
  std::size_t nodes() const { return K.size(); }
};

struct LoopModule {
  std::string label;
  std::size_t dim = 0;
  // rank 1 for evaluation modules; rank 2 (first factor, second factor) for tensors
  Grading grading;

  bool has_drinfeld = false;
  int window = 0;  // certified Drinfeld index window
  int stored = 0;  // x^±_k stored for |k| <= stored
  Matrix K;
  std::map<int, Matrix> xp, xm, h;
  std::vector<Matrix> psi;  // psi[k] = ψ_k
  std::vector<Matrix> phi;  // phi[k] = φ_{-k}

  KacMoody km;
  ojson meta = ojson::object();
  bool trusted = false;

  const Matrix& x(int sign, int k) const {
    const auto& m = sign > 0 ? xp : xm;
    auto it = m.find(k);
    if (it == m.end()) throw std::out_of_range("LoopModule: x index " + std::to_string(k) + " outside stored window");
    return it->second;
  }
  // ψ_k with ψ_k = 0 for k < 0
  Matrix psi_at(int k) const {
    if (k < 0) return Matrix(dim, dim);
    return psi.at(static_cast<std::size_t>(k));
  }
  // φ_k with φ_k = 0 for k > 0
  Matrix phi_at(int k) const {
    if (k > 0) return Matrix(dim, dim);
    return phi.at(static_cast<std::size_t>(-k));
  }
  const Matrix& hk(int k) const { return h.at(k); }

  // total degree
  Grading total_grading() const {
    Grading g;
    for (const auto& d : grading.deg) {
      int s = 0;
      for (int x : d) s += x;
      g.deg.push_back({s});
    }
    return g;
  }
  // degree of one tensor factor (0 = left, 1 = right)
  Grading factor_grading(int which) const {
    if (grading.rank() != 2) throw std::logic_error("factor_grading: not a tensor module");
    Grading g;
    for (const auto& d : grading.deg) g.deg.push_back({d[static_cast<std::size_t>(which)]});
    return g;
  }
};

struct EvalParams {
  int n = 1;
  Scalar a = Scalar(1);
};

// q-shift exponents of the evaluation-module geometric factors:
// x⁺_k v_j = (a q^{e⁺})^k x⁺_0 v_j and x⁻_k v_j = (a q^{e⁻})^k x⁻_0 v_j
inline int eval_exponent_plus(int n, int j) { return n - 2 * j + 2; }
inline int eval_exponent_minus(int n, int j) { return n - 2 * j; }

Report verify_drinfeld_relations(const LoopModule& v, int window);
Report verify_kac_moody(const KacMoody& km, const std::vector<std::vector<int>>& cartan);

inline std::vector<std::vector<int>> cartan_affine_sl2() { return {{2, -2}, {-2, 2}}; }

inline void kacmoody_from_drinfeld(LoopModule& v) {
  if (!v.has_drinfeld) throw std::logic_error("kacmoody_from_drinfeld: no Drinfeld data");
  Matrix kinv = v.K.inverse();
  v.km.E = {-(kinv * v.x(-1, 1)), v.x(1, 0)};
  v.km.F = {-(v.x(1, -1) * v.K), v.x(-1, 0)};
  v.km.K = {kinv, v.K};
}

// Drinfeld data of an evaluation module from explicit x^± matrices: ψ, φ, h.
inline void complete_drinfeld_data(LoopModule& v, int order) {
  const std::size_t n = v.dim;
  const Scalar kq = qdiff();
  const int top = std::max(order, v.stored - 1);
  Matrix kinv = v.K.inverse();
  v.psi.assign(static_cast<std::size_t>(top + 1), Matrix(n, n));
  v.phi.assign(static_cast<std::size_t>(top + 1), Matrix(n, n));
  v.psi[0] = v.K;
  v.phi[0] = kinv;
  for (int k = 1; k <= top; ++k) {
    v.psi[static_cast<std::size_t>(k)] = kq * commutator(v.x(1, k), v.x(-1, 0));
    v.phi[static_cast<std::size_t>(k)] = -kq * commutator(v.x(1, -k), v.x(-1, 0));
  }
  // K^-1 Ψ(z) = exp((q-q^-1) Σ h_k z^k),  K Φ(z) = exp(-(q-q^-1) Σ h_{-k} z^-k)
  std::vector<Matrix> tp(static_cast<std::size_t>(top + 1), Matrix(n, n)), tm = tp;
  Scalar ik = kq.inv();
  for (int k = 1; k <= top; ++k) {
    tp[static_cast<std::size_t>(k)] = ik * (kinv * v.psi[static_cast<std::size_t>(k)]);
    tm[static_cast<std::size_t>(k)] = ik * (v.K * v.phi[static_cast<std::size_t>(k)]);
  }
  std::vector<Matrix> hp = h_from_theta(tp, top), hm = h_from_theta(tm, top);
  v.h.clear();
  for (int k = 1; k <= top; ++k) {
    v.h[k] = hp[static_cast<std::size_t>(k)];
    v.h[-k] = -hm[static_cast<std::size_t>(k)];
  }
}

// Evaluation module V_n(a) with basis v_0..v_n, deg v_j = -j.
inline LoopModule build_evaluation_unchecked(const EvalParams& p, int window, int order,
                                             int (*eplus)(int, int) = eval_exponent_plus,
                                             int (*eminus)(int, int) = eval_exponent_minus) {
  if (p.a.is_zero()) throw std::invalid_argument("build_evaluation: a must be nonzero");
  if (p.n < 0) throw std::invalid_argument("build_evaluation: n must be nonnegative");
  const int n = p.n;
  const std::size_t d = static_cast<std::size_t>(n + 1);
  LoopModule v;
  v.label = "V_" + std::to_string(n) + "(" + p.a.str() + ")";
  v.dim = d;
  v.has_drinfeld = true;
  v.window = window;
  v.stored = 2 * std::max(window, order) + 1;
  std::vector<int> deg;
  std::vector<Scalar> kd;
  for (int j = 0; j <= n; ++j) {
    deg.push_back(-j);
    kd.push_back(Scalar::q_pow(n - 2 * j));
  }
  v.grading = Grading::scalar(deg);
  v.K = Matrix::diag(kd);
  for (int k = -v.stored; k <= v.stored; ++k) {
    Matrix xp(d, d), xm(d, d);
    for (int j = 1; j <= n; ++j) {
      Scalar alpha = (p.a * Scalar::q_pow(eplus(n, j))).pow(k);
      xp(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j)) = alpha * qint(n - j + 1);
    }
    for (int j = 0; j < n; ++j) {
      Scalar alpha = (p.a * Scalar::q_pow(eminus(n, j))).pow(k);
      xm(static_cast<std::size_t>(j + 1), static_cast<std::size_t>(j)) = alpha * qint(j + 1);
    }
    v.xp[k] = xp;
    v.xm[k] = xm;
  }
  complete_drinfeld_data(v, order);
  kacmoody_from_drinfeld(v);
  v.meta["type"] = "eval";
  v.meta["n"] = n;
  v.meta["a"] = p.a.str();
  return v;
}

inline LoopModule build_evaluation(const EvalParams& p, int window = 3, int order = 6) {
  LoopModule v = build_evaluation_unchecked(p, window, order);
  Report r = verify_drinfeld_relations(v, window);
  if (!r.pass()) throw ConstructionError("build_evaluation " + v.label + ": " + r.first_failure());
  Report s = verify_kac_moody(v.km, cartan_affine_sl2());
  if (!s.pass()) throw ConstructionError("build_evaluation " + v.label + ": " + s.first_failure());
  v.trusted = true;
  return v;
}

// one-dimensional trivial module
inline LoopModule trivial_module(int window = 3, int order = 6) { return build_evaluation({0, Scalar(1)}, window, order); }

// Tensor product through Δ(E) = E⊗1 + K⊗E, Δ(F) = F⊗K^-1 + 1⊗F, Δ(K) = K⊗K.
inline LoopModule tensor(const LoopModule& a, const LoopModule& b) {
  if (a.km.nodes() == 0 || b.km.nodes() == 0) throw std::invalid_argument("tensor: Kac–Moody matrices missing");
  LoopModule t;
  t.label = a.label + "⊗" + b.label;
  t.dim = a.dim * b.dim;
  Matrix ia = Matrix::identity(a.dim), ib = Matrix::identity(b.dim);
  for (std::size_t i = 0; i < a.km.nodes(); ++i) {
    Matrix kbinv = b.km.K[i].inverse();
    t.km.E.push_back(kron(a.km.E[i], ib) + kron(a.km.K[i], b.km.E[i]));
    t.km.F.push_back(kron(a.km.F[i], kbinv) + kron(ia, b.km.F[i]));
    t.km.K.push_back(kron(a.km.K[i], b.km.K[i]));
  }
  Grading ga = a.total_grading(), gb = b.total_grading();
  for (const auto& x : ga.deg)
    for (const auto& y : gb.deg) t.grading.deg.push_back({x[0], y[0]});
  t.K = t.km.K.size() > 1 ? t.km.K[1] : Matrix();
  t.meta["type"] = "tensor";
  t.meta["factors"] = ojson::array({a.meta, b.meta});
  t.trusted = a.trusted && b.trusted;
  return t;
}

// (Φ(z^-1) coefficients φ_{-k}, Ψ(z) coefficients ψ_k), k = 0..T, diagonal in the given basis
inline std::pair<std::vector<Matrix>, std::vector<Matrix>> phi_series(const LoopModule& v, int order) {
  if (!v.has_drinfeld || static_cast<int>(v.psi.size()) <= order) throw std::invalid_argument("phi_series: Drinfeld window too small");
  std::vector<Matrix> ph(v.phi.begin(), v.phi.begin() + order + 1), ps(v.psi.begin(), v.psi.begin() + order + 1);
  for (int k = 0; k <= order; ++k)
    if (!ph[static_cast<std::size_t>(k)].is_diagonal() || !ps[static_cast<std::size_t>(k)].is_diagonal())
      throw std::domain_error("phi_series: φ/ψ not diagonal, basis is not an ℓ-weight basis");
  return {ph, ps};
}

// ---------------------------------------------------------------------------

inline Report verify_drinfeld_relations(const LoopModule& v, int window) {
  Report r("drinfeld relations " + v.label);
  const std::size_t n = v.dim;
  const Scalar q = Scalar::q(), q2 = Scalar::q_pow(2), qm2 = Scalar::q_pow(-2), kq = qdiff();
  const Matrix kinv = v.K.inverse();
  auto stored = [&](int k) { return std::abs(k) <= v.stored; };

  for (int s : {1, -1}) {
    const Scalar qs = s > 0 ? q2 : qm2;
    for (int k = -window; k <= window; ++k) {
      const Matrix& x = v.x(s, k);
      r.record("K x", (v.K * x - qs * (x * v.K)).is_zero(), [&] { return "sign " + std::to_string(s) + " k=" + std::to_string(k); });
    }
    // [h_k, x_l] = ±[2k]/k x_{k+l}
    for (int k = -window; k <= window; ++k) {
      if (k == 0) continue;
      Scalar coef = Scalar(s) * qint(2 * k) / Scalar(k);
      for (int l = -window; l <= window; ++l) {
        if (!stored(k + l)) continue;
        Matrix res = commutator(v.hk(k), v.x(s, l)) - coef * v.x(s, k + l);
        r.record("h x", res.is_zero(), [&] { return "sign " + std::to_string(s) + " (k,l)=(" + std::to_string(k) + "," + std::to_string(l) + ") " + first_nonzero(res); });
      }
    }
    // x_{k+1} x_l - q^{±2} x_l x_{k+1} = q^{±2} x_k x_{l+1} - x_{l+1} x_k
    for (int k = -window; k <= window; ++k)
      for (int l = -window; l <= window; ++l) {
        const Matrix &xk1 = v.x(s, k + 1), &xl = v.x(s, l), &xk = v.x(s, k), &xl1 = v.x(s, l + 1);
        Matrix res = xk1 * xl - qs * (xl * xk1) - qs * (xk * xl1) + xl1 * xk;
        r.record("x x", res.is_zero(), [&] { return "sign " + std::to_string(s) + " (k,l)=(" + std::to_string(k) + "," + std::to_string(l) + ") " + first_nonzero(res); });
      }
  }
  // [x⁺_k, x⁻_l] = (ψ_{k+l} - φ_{k+l})/(q - q^-1)
  Scalar ik = kq.inv();
  for (int k = -window; k <= window; ++k)
    for (int l = -window; l <= window; ++l) {
      int m = k + l;
      Matrix rhs = ik * (v.psi_at(m) - v.phi_at(m));
      Matrix res = commutator(v.x(1, k), v.x(-1, l)) - rhs;
      r.record("x+ x-", res.is_zero(), [&] { return "(k,l)=(" + std::to_string(k) + "," + std::to_string(l) + ") " + first_nonzero(res); });
    }
  // Cartan part commutes
  for (int k = -window; k <= window; ++k) {
    if (k == 0) continue;
    r.record("h h", commutator(v.K, v.hk(k)).is_zero(), "[K,h_" + std::to_string(k) + "]");
    for (int l = -window; l <= window; ++l) {
      if (l == 0) continue;
      r.record("h h", commutator(v.hk(k), v.hk(l)).is_zero(), [&] { return "[h_" + std::to_string(k) + ",h_" + std::to_string(l) + "]"; });
    }
  }
  // series definitions
  r.record("series", v.psi[0] == v.K, "ψ_0 != K");
  r.record("series", v.phi[0] == kinv, "φ_0 != K^-1");
  if (window >= 1) {
    r.record("series", v.psi[1] == kq * (v.K * v.hk(1)), "ψ_1 != (q-q^-1) K h_1");
    r.record("series", v.phi[1] == -kq * (kinv * v.hk(-1)), "φ_-1 != -(q-q^-1) K^-1 h_-1");
  }
  {
    std::vector<Matrix> hp(static_cast<std::size_t>(window + 1), Matrix(n, n)), hm = hp;
    for (int k = 1; k <= window; ++k) {
      hp[static_cast<std::size_t>(k)] = v.hk(k);
      hm[static_cast<std::size_t>(k)] = -v.hk(-k);
    }
    std::vector<Matrix> tp = theta_from_h(hp, window), tm = theta_from_h(hm, window);
    for (int k = 1; k <= window; ++k) {
      r.record("series", v.psi[static_cast<std::size_t>(k)] == kq * (v.K * tp[static_cast<std::size_t>(k)]), [&] { return "Ψ(z) coefficient " + std::to_string(k); });
      r.record("series", v.phi[static_cast<std::size_t>(k)] == kq * (kinv * tm[static_cast<std::size_t>(k)]), [&] { return "Φ(z) coefficient " + std::to_string(k); });
    }
  }
  return r;
}

// Serre-presentation relations for a generalized Cartan matrix, plus level zero.
inline Report verify_kac_moody(const KacMoody& km, const std::vector<std::vector<int>>& cartan) {
  Report r("kac-moody relations");
  const std::size_t nn = km.nodes();
  if (nn == 0) return r;
  const std::size_t n = km.K[0].rows();
  const Scalar q = Scalar::q(), kq = qdiff();
  std::vector<Matrix> kinv;
  for (const auto& k : km.K) kinv.push_back(k.inverse());
  auto tag = [](std::size_t i, std::size_t j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };
  Matrix prod = Matrix::identity(n);
  for (std::size_t i = 0; i < nn; ++i) prod = prod * km.K[i];
  r.record("level zero", prod == Matrix::identity(n), "product of K_i is not the identity");
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j) {
      int a = cartan[i][j];
      Scalar qa = Scalar::q_pow(a);
      r.record("K K", commutator(km.K[i], km.K[j]).is_zero(), tag(i, j));
      r.record("K E", km.K[i] * km.E[j] == qa * (km.E[j] * km.K[i]), tag(i, j));
      r.record("K F", km.K[i] * km.F[j] == qa.inv() * (km.F[j] * km.K[i]), tag(i, j));
      Matrix ef = commutator(km.E[i], km.F[j]);
      Matrix rhs = i == j ? kq.inv() * (km.K[i] - kinv[i]) : Matrix(n, n);
      r.record("E F", ef == rhs, [&] { return tag(i, j) + " " + first_nonzero(ef - rhs); });
      if (i == j) continue;
      int deg = 1 - a;
      for (int which = 0; which < 2; ++which) {
        const Matrix& x = which == 0 ? km.E[i] : km.F[i];
        const Matrix& y = which == 0 ? km.E[j] : km.F[j];
        Matrix acc(n, n);
        for (int s = 0; s <= deg; ++s) {
          Matrix term = x.pow(static_cast<unsigned>(deg - s)) * y * x.pow(static_cast<unsigned>(s));
          Scalar c = qbinom(deg, s);
          if (s % 2) c = -c;
          acc += c * term;
        }
        r.record(which == 0 ? "Serre E" : "Serre F", acc.is_zero(), [&] { return tag(i, j) + " " + first_nonzero(acc); });
      }
    }
  (void)q;
  return r;
}

// Module-level identities: the homogeneous φ-x⁺ relation,
// the [x⁺, φ] expansion and z^-1[x⁻_1,Φ(z^-1)]_{q^-2} - q^-2[x⁻_0,Φ(z^-1)]_{q^2} = 0.
inline Report verify_aux_identities(const LoopModule& v, int order) {
  Report r("auxiliary identities " + v.label);
  const Scalar q2 = Scalar::q_pow(2), qm2 = Scalar::q_pow(-2), q4m1 = Scalar::q_pow(4) - Scalar(1);
  const int w = v.window;
  auto stored = [&](int k) { return std::abs(k) <= v.stored; };
  // φ_{-r} x⁺_s + x⁺_{s-1} φ_{-r+1} = q^-2 (x⁺_s φ_{-r} + φ_{-r+1} x⁺_{s-1})
  for (int rr = 1; rr <= order; ++rr)
    for (int s = -w; s <= w; ++s) {
      const Matrix &xs = v.x(1, s), &xs1 = v.x(1, s - 1);
      Matrix a = v.phi_at(-rr), b = v.phi_at(-rr + 1);
      Matrix res = a * xs + xs1 * b - qm2 * (xs * a + b * xs1);
      r.record("phi x homogeneous", res.is_zero(), [&] { return "(r,s)=(" + std::to_string(rr) + "," + std::to_string(s) + ") " + first_nonzero(res); });
    }
  // x⁺_k φ_{-r} = q² φ_{-r} x⁺_k + (q⁴-1) Σ_{s=1}^{r} q^{2(s-1)} φ_{s-r} x⁺_{k-s}
  for (int rr = 0; rr <= order; ++rr)
    for (int k = -w; k <= w; ++k) {
      if (!stored(k - rr)) continue;
      Matrix rhs = q2 * (v.phi_at(-rr) * v.x(1, k));
      for (int s = 1; s <= rr; ++s) rhs += (q4m1 * Scalar::q_pow(2 * (s - 1))) * (v.phi_at(s - rr) * v.x(1, k - s));
      Matrix res = v.x(1, k) * v.phi_at(-rr) - rhs;
      r.record("x+ phi expansion", res.is_zero(), [&] { return "(k,r)=(" + std::to_string(k) + "," + std::to_string(rr) + ") " + first_nonzero(res); });
    }
  // coefficient of z^k: [x⁻_1, φ_{-(k+1)}]_{q^-2} - q^-2 [x⁻_0, φ_{-k}]_{q^2}
  for (int k = -1; k < order; ++k) {
    Matrix res = qbracket(v.x(-1, 1), v.phi_at(-(k + 1)), qm2) - qm2 * qbracket(v.x(-1, 0), v.phi_at(-k), q2);
    r.record("x- Phi series", res.is_zero(), [&] { return "z^" + std::to_string(k) + " " + first_nonzero(res); });
  }
  return r;
}

}  // namespace qons
