#pragma once
// Type A_N: the vector evaluation module of affine sl_{N+1}, reduced words of
// fundamental weights, the coideal braid action on noncommutative B-words,
// nested q-brackets, and the rank-N Drinfeld-type family with its checks.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qons/spectra.hpp"

namespace qons {

struct AffineTypeA {
  int N = 2;

  explicit AffineTypeA(int n) : N(n) {
    if (n < 1) throw std::invalid_argument("AffineTypeA: N must be >= 1");
  }
  int nodes() const { return N + 1; }
  int pi(int i, int power = 1) const { return ((i + power) % (N + 1) + (N + 1)) % (N + 1); }
  int a(int i, int j) const {
    if (i == j) return 2;
    if (N == 1) return -2;
    int d = std::abs(i - j);
    return (d == 1 || d == N) ? -1 : 0;
  }
  std::vector<std::vector<int>> cartan() const {
    std::vector<std::vector<int>> c(static_cast<std::size_t>(N + 1), std::vector<int>(static_cast<std::size_t>(N + 1)));
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= N; ++j) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a(i, j);
    return c;
  }
};

// ---------------------------------------------------------------------------
// Extended affine Weyl group words π^p s_{j1} ... s_{jm}.

struct WeylWord {
  int pi_power = 0;
  std::vector<int> letters;

  std::size_t length() const { return letters.size(); }
  std::string str() const {
    std::string s;
    if (pi_power) s += pi_power == 1 ? "π" : "π^" + std::to_string(pi_power);
    for (int j : letters) s += (s.empty() ? "" : " ") + std::string("s") + std::to_string(j);
    return s.empty() ? "1" : s;
  }
};

// ω_i = π^i [N-i+1, N] ... [2, i+1][1, i] with [k, l] = s_k s_{k+1} ... s_l
inline WeylWord omega_word(int i, int N) {
  if (i < 1 || i > N) throw std::invalid_argument("omega_word: need 1 <= i <= N");
  WeylWord w;
  w.pi_power = i;
  for (int k = N - i + 1; k >= 1; --k)
    for (int j = k; j <= k + i - 1; ++j) w.letters.push_back(j);
  if (static_cast<int>(w.length()) != i * (N - i + 1)) throw std::logic_error("omega_word: length mismatch");
  return w;
}

// ω'_i = ω_i s_i: the reduced word of ω_i ends in s_i
inline WeylWord omega_prime_word(int i, int N) {
  WeylWord w = omega_word(i, N);
  if (w.letters.empty() || w.letters.back() != i) throw std::logic_error("omega_prime_word: word does not end in s_i");
  w.letters.pop_back();
  return w;
}

// ---------------------------------------------------------------------------
// Modules.

// Vector evaluation module of U_q(L sl_{N+1}) on e_1..e_{N+1}; E_0 = a E_{N+1,1},
// F_0 = a^-1 E_{1,N+1}, K_0 = (K_1...K_N)^-1. Grading: simple-root coordinates
// of the weight relative to e_1.
inline LoopModule build_vector_evaluation(int N, const Scalar& a) {
  if (a.is_zero()) throw std::invalid_argument("build_vector_evaluation: a must be nonzero");
  AffineTypeA t(N);
  const std::size_t d = static_cast<std::size_t>(N + 1);
  LoopModule v;
  v.label = "V(N=" + std::to_string(N) + "," + a.str() + ")";
  v.dim = d;
  for (std::size_t k = 0; k < d; ++k) {
    DegVec deg(static_cast<std::size_t>(N), 0);
    for (std::size_t j = 0; j < k; ++j) deg[j] = -1;
    v.grading.deg.push_back(deg);
  }
  std::vector<Matrix> E(d, Matrix(d, d)), F(d, Matrix(d, d)), K(d);
  for (int i = 1; i <= N; ++i) {
    auto r = static_cast<std::size_t>(i - 1);
    E[static_cast<std::size_t>(i)](r, r + 1) = Scalar(1);
    F[static_cast<std::size_t>(i)](r + 1, r) = Scalar(1);
    std::vector<Scalar> kd(d, Scalar(1));
    kd[r] = Scalar::q();
    kd[r + 1] = Scalar::q_pow(-1);
    K[static_cast<std::size_t>(i)] = Matrix::diag(kd);
  }
  E[0](d - 1, 0) = a;
  F[0](0, d - 1) = a.inv();
  std::vector<Scalar> k0(d, Scalar(1));
  k0[0] = Scalar::q_pow(-1);
  k0[d - 1] = Scalar::q();
  K[0] = Matrix::diag(k0);
  v.km = KacMoody{E, F, K};
  v.K = K.size() > 1 ? K[1] : Matrix();
  v.meta["type"] = "vector";
  v.meta["N"] = N;
  v.meta["a"] = a.str();
  Report r = verify_kac_moody(v.km, t.cartan());
  if (!r.pass()) throw ConstructionError("build_vector_evaluation " + v.label + ": " + r.first_failure());
  v.trusted = true;
  return v;
}

struct RankParams {
  std::vector<Scalar> c, s;  // indexed by node 0..N

  static RankParams standard(int N) { return {std::vector<Scalar>(static_cast<std::size_t>(N + 1), Scalar(1)), std::vector<Scalar>(static_cast<std::size_t>(N + 1))}; }
  int N() const { return static_cast<int>(c.size()) - 1; }
  // C = q^{2N+2} Π c_i = Π 𝕂_i
  Scalar C() const {
    Scalar r = Scalar::q_pow(2 * N() + 2);
    for (const auto& x : c) r *= x;
    return r;
  }
  Scalar KK(int i) const { return Scalar::q_pow(2) * c.at(static_cast<std::size_t>(i)); }
  Scalar Ci(int i) const { return C().inv() * KK(i); }
  bool standard_s() const {
    for (const auto& x : s)
      if (!x.is_zero()) return false;
    return true;
  }
  void validate() const {
    if (c.size() < 2 || s.size() != c.size()) throw std::invalid_argument("RankParams: need c, s of equal length N+1 >= 2");
    for (const auto& x : c)
      if (x.is_zero()) throw std::invalid_argument("RankParams: c_i must be nonzero");
  }
  ojson to_json() const {
    ojson j = ojson::object();
    ojson cs = ojson::array(), ss = ojson::array();
    for (const auto& x : c) cs.push_back(x.str());
    for (const auto& x : s) ss.push_back(x.str());
    j["c"] = cs;
    j["s"] = ss;
    j["C"] = C().str();
    return j;
  }
};

// B_i = F_i - c_i E_i K_i^-1 + s_i K_i^-1 for every node
inline std::vector<Matrix> eta_embed_rank(const RankParams& p, const LoopModule& v) {
  p.validate();
  if (static_cast<int>(v.km.nodes()) != p.N() + 1) throw std::invalid_argument("eta_embed_rank: node count mismatch");
  std::vector<Matrix> b;
  for (std::size_t i = 0; i < v.km.nodes(); ++i) {
    Matrix kinv = v.km.K[i].inverse();
    b.push_back(v.km.F[i] - p.c[i] * (v.km.E[i] * kinv) + p.s[i] * kinv);
  }
  return b;
}

// Ẽ_i = -q^-2 𝕂_i E_i K_i^-1
inline Matrix e_tilde(const RankParams& p, const LoopModule& v, int i) {
  auto k = static_cast<std::size_t>(i);
  return -(Scalar::q_pow(-2) * p.KK(i)) * (v.km.E[k] * v.km.K[k].inverse());
}

// ---------------------------------------------------------------------------
// Noncommutative polynomials in B_0..B_N with coefficients in Q(q)[𝕂^±1].

struct BExpr {
  // (𝕂-exponent vector on the affine simple roots, word in node indices) -> coefficient
  std::map<std::pair<std::vector<int>, std::vector<int>>, Scalar> terms;

  static BExpr generator(int j, int nodes) {
    BExpr e;
    e.terms[{std::vector<int>(static_cast<std::size_t>(nodes), 0), {j}}] = Scalar(1);
    return e;
  }
  void add(const std::vector<int>& k, const std::vector<int>& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(k, w);
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(key, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
  friend BExpr operator+(const BExpr& a, const BExpr& b) {
    BExpr r = a;
    for (const auto& [k, c] : b.terms) r.add(k.first, k.second, c);
    return r;
  }
  friend BExpr operator*(const BExpr& a, const BExpr& b) {
    BExpr r;
    for (const auto& [ka, ca] : a.terms)
      for (const auto& [kb, cb] : b.terms) {
        std::vector<int> k(ka.first.size());
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka.first[i] + kb.first[i];
        std::vector<int> w = ka.second;
        w.insert(w.end(), kb.second.begin(), kb.second.end());
        r.add(k, w, ca * cb);
      }
    return r;
  }
  friend BExpr operator*(const Scalar& s, const BExpr& a) {
    BExpr r;
    for (const auto& [k, c] : a.terms) r.add(k.first, k.second, s * c);
    return r;
  }
  // 𝕂_μ · e
  BExpr times_kk(const std::vector<int>& mu) const {
    BExpr r;
    for (const auto& [k, c] : terms) {
      std::vector<int> kk = k.first;
      for (std::size_t i = 0; i < kk.size(); ++i) kk[i] += mu[i];
      r.add(kk, k.second, c);
    }
    return r;
  }
  // value on a module with the given B-matrices and 𝕂_i values
  Matrix eval(const std::vector<Matrix>& b, const std::vector<Scalar>& kk) const {
    const std::size_t n = b.at(0).rows();
    Matrix acc(n, n);
    for (const auto& [k, c] : terms) {
      Scalar coef = c;
      for (std::size_t i = 0; i < k.first.size(); ++i)
        if (k.first[i]) coef *= kk.at(i).pow(k.first[i]);
      Matrix m = Matrix::identity(n);
      for (int j : k.second) m = m * b.at(static_cast<std::size_t>(j));
      acc += coef * m;
    }
    return acc;
  }
};

// 𝐓_i applied letterwise; 𝕂_μ -> 𝕂_{s_i μ}
inline BExpr qsp_braid_step(const AffineTypeA& t, int i, const BExpr& e) {
  const int n = t.nodes();
  std::vector<BExpr> img(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    int a = t.a(i, j);
    BExpr bj = BExpr::generator(j, n), bi = BExpr::generator(i, n);
    if (i == j) {
      std::vector<int> mu(static_cast<std::size_t>(n), 0);
      mu[static_cast<std::size_t>(i)] = -1;
      img[static_cast<std::size_t>(j)] = bj.times_kk(mu);
    } else if (a == 0) {
      img[static_cast<std::size_t>(j)] = bj;
    } else if (a == -1) {
      img[static_cast<std::size_t>(j)] = bj * bi + (-Scalar::q()) * (bi * bj);
    }
  }
  BExpr out;
  for (const auto& [k, c] : e.terms) {
    // s_i μ = μ - (Σ_j μ_j a_ij) α_i
    std::vector<int> mu = k.first;
    int pair = 0;
    for (int j = 0; j < n; ++j) pair += mu[static_cast<std::size_t>(j)] * t.a(i, j);
    mu[static_cast<std::size_t>(i)] -= pair;
    BExpr term;
    term.add(mu, {}, c);
    for (int j : k.second) {
      if (img[static_cast<std::size_t>(j)].terms.empty())
        throw std::domain_error("qsp_braid_step: a_ij = " + std::to_string(t.a(i, j)) + " unsupported in type A");
      term = term * img[static_cast<std::size_t>(j)];
    }
    out = out + term;
  }
  return out;
}

// 𝐓_{π^p}: B_j -> B_{j+p}, 𝕂_j -> 𝕂_{j+p}
inline BExpr qsp_rotate(const AffineTypeA& t, int power, const BExpr& e) {
  BExpr out;
  const int n = t.nodes();
  for (const auto& [k, c] : e.terms) {
    std::vector<int> mu(static_cast<std::size_t>(n), 0), w;
    for (int j = 0; j < n; ++j) mu[static_cast<std::size_t>(t.pi(j, power))] = k.first[static_cast<std::size_t>(j)];
    for (int j : k.second) w.push_back(t.pi(j, power));
    out.add(mu, w, c);
  }
  return out;
}

// 𝐓_w = 𝐓_π^p 𝐓_{j1} ... 𝐓_{jm}: innermost letter first
inline BExpr qsp_apply_word(const AffineTypeA& t, const WeylWord& w, BExpr e) {
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) e = qsp_braid_step(t, *it, e);
  return qsp_rotate(t, w.pi_power, e);
}

// ---------------------------------------------------------------------------
// Nested q-brackets.

// P_1 = y_1, P_{k+1} = [P_k, y_{k+1}]_q
inline Matrix pk_bracket(const std::vector<Matrix>& y) {
  if (y.empty()) throw std::invalid_argument("pk_bracket: empty input");
  Matrix r = y[0];
  for (std::size_t k = 1; k < y.size(); ++k) r = qbracket(r, y[k], Scalar::q());
  return r;
}

// P'_k = [y_1, [y_2, ... [y_{k-1}, y_k]_q ... ]_q]_q
inline Matrix pk_prime_bracket(const std::vector<Matrix>& y) {
  if (y.empty()) throw std::invalid_argument("pk_prime_bracket: empty input");
  Matrix r = y.back();
  for (std::size_t k = y.size() - 1; k-- > 0;) r = qbracket(y[k], r, Scalar::q());
  return r;
}

// [P_{i-1}(y_{i-1},...,y_1), P_{N-i+1}(y_{i+1},...,y_N,y_0)]_q; an empty left factor is omitted
inline Matrix omega_bracket(const std::vector<Matrix>& y, int i, int N) {
  std::vector<Matrix> left, right;
  for (int j = i - 1; j >= 1; --j) left.push_back(y.at(static_cast<std::size_t>(j)));
  for (int j = i + 1; j <= N; ++j) right.push_back(y.at(static_cast<std::size_t>(j)));
  right.push_back(y.at(0));
  Matrix r = pk_bracket(right);
  if (left.empty()) return r;
  return qbracket(pk_bracket(left), r, Scalar::q());
}

// A_{i,-1} = C_i [P_{i-1}(B_{i-1},...,B_1), P_{N-i+1}(B_{i+1},...,B_N,B_0)]_q
inline Matrix build_Ai_minus1(int i, const std::vector<Matrix>& b, const RankParams& p) {
  const int N = p.N();
  if (i < 1 || i > N) throw std::invalid_argument("build_Ai_minus1: node out of range");
  return p.Ci(i) * omega_bracket(b, i, N);
}

// A_{i,-1} = 𝐓_{ω_i}(B_i), applied word by word and specialized at 𝕂_j = q^2 c_j
inline Matrix build_Ai_minus1_word(int i, const std::vector<Matrix>& b, const RankParams& p) {
  AffineTypeA t(p.N());
  BExpr e = qsp_apply_word(t, omega_word(i, p.N()), BExpr::generator(i, t.nodes()));
  std::vector<Scalar> kk;
  for (int j = 0; j <= p.N(); ++j) kk.push_back(p.KK(j));
  return e.eval(b, kk);
}

// sign alternating on adjacent finite nodes, o(1) = 1
inline int node_sign(int i) { return i % 2 ? 1 : -1; }

// ---------------------------------------------------------------------------
// Rank-N family: for each finite node a rank-one shaped family generated from
// A_{i,0} = B_i and A_{i,-1} = o(i) C_i 𝐓_{ω'_i}(B_i); H_{i,1} = q^2 C_i^-1 [A_{i,-1}, A_{i,0}]_{q^-2}.

struct RankNFamily {
  int N = 0;
  RankParams params;
  std::string module_label;
  std::vector<Matrix> B;
  Grading grading;
  std::vector<OnsagerFamily> node;  // node[i-1] for i = 1..N

  const OnsagerFamily& at(int i) const { return node.at(static_cast<std::size_t>(i - 1)); }
  const Matrix& A(int i, int r) const { return at(i).A(r); }
  Matrix theta(int i, int m) const { return at(i).d.theta(m); }
  const Matrix& H(int i, int m) const { return at(i).d.H.at(static_cast<std::size_t>(m)); }
  std::size_t dim() const { return B.at(0).rows(); }
};

inline RankNFamily generate_rankn_family(const RankParams& p, const LoopModule& v, int R, int T) {
  RankNFamily f;
  f.N = p.N();
  f.params = p;
  f.module_label = v.label;
  f.B = eta_embed_rank(p, v);
  f.grading = v.grading;
  const Scalar C = p.C();
  for (int i = 1; i <= f.N; ++i) {
    Matrix am1 = Scalar(node_sign(i)) * build_Ai_minus1(i, f.B, p);
    // rank-one parameters with c_1' = c_i and q^4 c_0' = q^2 C_i^-1, so that C' = C
    OnsagerParams op{Scalar::q_pow(-2) * p.Ci(i).inv(), p.c.at(static_cast<std::size_t>(i)), Scalar(), Scalar()};
    if (op.C() != C) throw std::logic_error("generate_rankn_family: central parameter mismatch");
    Matrix b0 = (Scalar::q_pow(2) * op.c0) * am1;
    f.node.push_back(generate_family(b0, f.B.at(static_cast<std::size_t>(i)), op, R, T, v.label + " node " + std::to_string(i)));
  }
  return f;
}

// grel1–grel6 on |r|, |s|, |r1|, |r2| <= window and 1 <= m <= mmax
inline Report verify_grel(const RankNFamily& f, int window, int mmax) {
  Report r("higher-rank relations " + f.module_label);
  AffineTypeA t(f.N);
  const Scalar q2 = Scalar::q_pow(2), qm2 = Scalar::q_pow(-2), two = qint(2);
  const Scalar C = f.params.C();
  const std::size_t n = f.dim();
  for (int i = 1; i <= f.N; ++i) {
    const auto& d = f.at(i).d;
    if (d.a_max() < window + mmax + 2 || d.a_min() > -window - mmax - 2) throw std::invalid_argument("verify_grel: A window too small");
    if (d.theta_max() < 2 * window + 2 || static_cast<int>(d.H.size()) <= mmax) throw std::invalid_argument("verify_grel: Θ window too small");
  }
  auto tag = [](std::initializer_list<int> xs) {
    std::string s = "(";
    bool first = true;
    for (int x : xs) {
      s += (first ? "" : ",") + std::to_string(x);
      first = false;
    }
    return s + ")";
  };
  for (int i = 1; i <= f.N; ++i)
    for (int j = 1; j <= f.N; ++j) {
      const Scalar ci = f.params.c.at(static_cast<std::size_t>(i));
      const int a = t.a(i, j);
      for (int m = 1; m <= mmax; ++m)
        for (int k = 1; k <= mmax; ++k) {
          Matrix c = commutator(f.H(i, m), f.H(j, k));
          r.record("grel1", c.is_zero(), [&] { return tag({i, j, m, k}); });
        }
      for (int m = 1; m <= mmax; ++m) {
        Scalar coef = qint(m * a) / Scalar(m);
        for (int rr = -window; rr <= window; ++rr) {
          Matrix res = commutator(f.H(i, m), f.A(j, rr)) - coef * (f.A(j, rr + m) - C.pow(m) * f.A(j, rr - m));
          r.record("grel2", res.is_zero(), [&] { return tag({i, j, m, rr}) + " " + first_nonzero(res); });
        }
      }
      if (i == j) {
        for (int rr = -window; rr <= window; ++rr)
          for (int s = -window; s <= window; ++s) {
            Matrix lhs = qbracket(f.A(i, rr), f.A(i, s + 1), qm2) - qm2 * qbracket(f.A(i, rr + 1), f.A(i, s), q2);
            Matrix rhs = (ci * C.pow(rr)) * f.theta(i, s - rr + 1) - (qm2 * ci * C.pow(rr + 1)) * f.theta(i, s - rr - 1) +
                         (ci * C.pow(s)) * f.theta(i, rr - s + 1) - (qm2 * ci * C.pow(s + 1)) * f.theta(i, rr - s - 1);
            Matrix res = lhs - rhs;
            r.record("grel5", res.is_zero(), [&] { return tag({i, rr, s}) + " " + first_nonzero(res); });
          }
        continue;
      }
      const Scalar qa = Scalar::q_pow(a), qma = Scalar::q_pow(-a);
      for (int rr = -window; rr <= window; ++rr)
        for (int s = -window; s <= window; ++s) {
          if (a == 0) {
            Matrix c = commutator(f.A(i, rr), f.A(j, s));
            r.record("grel3", c.is_zero(), [&] { return tag({i, j, rr, s}); });
          }
          Matrix res = qbracket(f.A(i, rr), f.A(j, s + 1), qma) - qma * qbracket(f.A(i, rr + 1), f.A(j, s), qa);
          r.record("grel4", res.is_zero(), [&] { return tag({i, j, rr, s}) + " " + first_nonzero(res); });
        }
      if (a != -1) continue;
      // 𝕊(r1, r2 | s) = ℝ(r1, r2 | s)
      auto S = [&](int r1, int r2, int s) {
        const Matrix &x1 = f.A(i, r1), &x2 = f.A(i, r2), &y = f.A(j, s);
        return x1 * x2 * y - two * (x1 * y * x2) + y * x1 * x2;
      };
      auto Rterm = [&](int r1, int r2, int s) {
        Matrix acc(n, n);
        const int dlt = r2 - r1;
        for (int p = 0; dlt - 2 * p - 1 >= 0; ++p)
          acc -= (Scalar::q_pow(2 * p) * two * C.pow(p + 1)) * qbracket(f.theta(i, dlt - 2 * p - 1), f.A(j, s - 1), qm2);
        for (int p = 1; dlt - 2 * p >= 0; ++p)
          acc -= (Scalar::q_pow(2 * p - 1) * two * C.pow(p)) * qbracket(f.A(j, s), f.theta(i, dlt - 2 * p), qm2);
        acc -= qbracket(f.A(j, s), f.theta(i, dlt), qm2);
        return (q2 * ci * C.pow(r1)) * acc;
      };
      for (int r1 = -window; r1 <= window; ++r1)
        for (int r2 = -window; r2 <= window; ++r2)
          for (int s = -window; s <= window; ++s) {
            Matrix res = S(r1, r2, s) + S(r2, r1, s) - Rterm(r1, r2, s) - Rterm(r2, r1, s);
            r.record("grel6", res.is_zero(), [&] { return tag({i, j, r1, r2, s}) + " " + first_nonzero(res); });
          }
    }
  for (int i = 1; i <= f.N; ++i)
    for (int j = 1; j <= f.N; ++j)
      for (int m = 1; m <= f.at(i).d.theta_max(); ++m)
        for (int k = 1; k <= f.at(j).d.theta_max(); ++k) {
          if (i == j && k <= m) continue;
          r.record("Theta cross-node commute", commutator(f.theta(i, m), f.theta(j, k)).is_zero(), [&] { return tag({i, m, j, k}); });
        }
  return r;
}

// ---------------------------------------------------------------------------
// Braid compatibility: η(𝐓_{ω'_i}(B_i)) minus its two relevant terms lies in U_{d_i=1,+}.

inline Report braid_compat_check(int i, const LoopModule& v, const RankParams& p) {
  Report r("braid compatibility node " + std::to_string(i) + " " + v.label);
  if (!p.standard_s()) throw std::invalid_argument("braid_compat_check: needs s = 0");
  const int N = p.N();
  AffineTypeA t(N);
  std::vector<Matrix> b = eta_embed_rank(p, v);
  std::vector<Scalar> kk;
  for (int j = 0; j <= N; ++j) kk.push_back(p.KK(j));
  WeylWord w = omega_prime_word(i, N);
  Matrix m1 = qsp_apply_word(t, w, BExpr::generator(i, t.nodes())).eval(b, kk);
  // closed bracket form of 𝐓_{ω'_i}(B_i) on the same module
  Matrix mc = omega_bracket(b, i, N);
  r.record("word = bracket form", m1 == mc, [&] { return first_nonzero(m1 - mc); });
  std::vector<Matrix> et, fs;
  for (int j = 0; j <= N; ++j) {
    et.push_back(e_tilde(p, v, j));
    fs.push_back(v.km.F[static_cast<std::size_t>(j)]);
  }
  Matrix m2 = omega_bracket(fs, i, N) + omega_bracket(et, i, N);
  Matrix diff = m1 - m2;
  GradedOperator go = degree_components(diff, v.grading);
  const auto ii = static_cast<std::size_t>(i - 1);
  std::size_t irrelevant = 0;
  for (const auto& [shift, m] : go.components) {
    ++irrelevant;
    bool along = shift[ii] == 1;
    bool pos = false, nonneg = true;
    for (std::size_t k = 0; k < shift.size(); ++k) {
      if (k == ii) continue;
      if (shift[k] < 0) nonneg = false;
      if (shift[k] > 0) pos = true;
    }
    r.record("irrelevant terms in U_{d_i=1,+}", along && nonneg && pos, [&] { return "shift " + deg_str(shift) + " " + first_nonzero(m); });
  }
  r.record("irrelevant terms in U_{d_i=1,+}", true);
  r.data["irrelevant_components"] = irrelevant;
  // the relevant terms have degree ∓α_i
  DegVec ai(static_cast<std::size_t>(N), 0);
  ai[ii] = 1;
  DegVec mai = ai;
  mai[ii] = -1;
  for (const auto& [shift, m] : degree_components(omega_bracket(fs, i, N), v.grading).components)
    r.record("relevant F-term degree", shift == ai, deg_str(shift));
  for (const auto& [shift, m] : degree_components(omega_bracket(et, i, N), v.grading).components)
    r.record("relevant E-term degree", shift == mai, deg_str(shift));
  // deg E_0 = -θ, deg F_0 = θ
  DegVec theta(static_cast<std::size_t>(N), 1), mtheta(static_cast<std::size_t>(N), -1);
  for (const auto& [shift, m] : degree_components(v.km.E[0], v.grading).components) r.record("E_0 degree -θ", shift == mtheta, deg_str(shift));
  for (const auto& [shift, m] : degree_components(v.km.F[0], v.grading).components) r.record("F_0 degree θ", shift == theta, deg_str(shift));
  return r;
}

// ---------------------------------------------------------------------------
// Spectral check per node.

// F̂ with F̂(0) = 1 and D(z) = F̂(q^-1 z)/F̂(qz), as a power series
inline std::vector<Scalar> qdifference_solve(const std::vector<Scalar>& D) {
  const int order = static_cast<int>(D.size()) - 1;
  std::vector<Scalar> f(static_cast<std::size_t>(order + 1));
  f[0] = Scalar(1);
  for (int k = 1; k <= order; ++k) {
    Scalar acc;
    for (int j = 1; j <= k; ++j) acc += D[static_cast<std::size_t>(j)] * Scalar::q_pow(k - j) * f[static_cast<std::size_t>(k - j)];
    f[static_cast<std::size_t>(k)] = acc / (Scalar::q_pow(-k) - Scalar::q_pow(k));
  }
  return f;
}

struct NodeSpectrum {
  int node = 0;
  std::size_t line = 0;
  std::vector<Scalar> D;
  SPoly Qcal, Qdag;
  std::string F;
};

inline Report rankn_spectral_check(RankNFamily& f, int order, cplx q0, double tol, std::vector<NodeSpectrum>* spectra = nullptr) {
  Report r("higher-rank spectra " + f.module_label);
  const Scalar C = f.params.C();
  const cplx Cn = C.specialize(q0), qn = q0;
  const std::size_t n = f.dim();
  std::map<DegVec, std::vector<std::size_t>> pieces;
  for (std::size_t k = 0; k < n; ++k) pieces[f.grading.deg[k]].push_back(k);
  for (int i = 1; i <= f.N; ++i) {
    OnsagerFamily& fi = f.node.at(static_cast<std::size_t>(i - 1));
    if (static_cast<int>(fi.theta_grave.size()) <= order) throw std::invalid_argument("rankn_spectral_check: family truncated below order");
    for (int s = 0; s <= order; ++s) {
      const Matrix& th = fi.theta_grave[static_cast<std::size_t>(s)];
      for (const auto& [shift, m] : degree_components(th, f.grading).components)
        r.record("triangular", deg_is_zero(shift) || deg_is_positive(shift), [&] { return "node " + std::to_string(i) + " s=" + std::to_string(s) + " shift " + deg_str(shift); });
    }
    RationalityResult rat = rationality_check(fi, order);
    for (const auto& v : rat.report.verdicts)
      if (v.name == "C-symmetry" || v.name == "A rational function" || v.name == "A+ and -A- one function")
        r.record(v.name, v.pass, "node " + std::to_string(i) + ": " + v.witness);
    if (!f.params.standard_s()) {
      r.inconclusive("rational fraction fit", "s != 0: the one-dimensional factor has no rational fraction over Q(q)");
      continue;
    }
    for (const auto& [deg, idx] : pieces) {
      if (idx.size() != 1) {
        r.inconclusive("rational fraction fit", "weight space of dimension " + std::to_string(idx.size()));
        continue;
      }
      const std::size_t k = idx[0];
      std::vector<Scalar> D;
      for (int s = 0; s <= order; ++s) D.push_back(fi.theta_grave[static_cast<std::size_t>(s)](k, k));
      std::vector<Scalar> fh = qdifference_solve(D);
      const int m = order / 2;
      std::optional<RatFn> fit = pade_reconstruct(fh, m, m);
      if (!fit) {
        r.inconclusive("rational fraction fit", "node " + std::to_string(i) + " line " + std::to_string(k) + ": raise T");
        continue;
      }
      RatFn red = fit->reduced();
      SPoly P = red.num, Pd = red.den;
      std::string where = "node " + std::to_string(i) + " line " + std::to_string(k);
      bool shape = P.coeff(0) == Scalar(1) && Pd.coeff(0) == Scalar(1) && P.degree() == Pd.degree();
      r.record("fit shape", shape, where);
      if (!shape) continue;
      StarData st = poly_star(P, C);
      r.record("dagger", st.dagger == Pd, [&] { return where + ": " + st.dagger.str() + " vs " + Pd.str(); });
      const Scalar qi = Scalar::q_pow(-1), q = Scalar::q();
      std::vector<Scalar> re = expand_at_zero(RatFn{P.rescale(qi) * Pd.rescale(q), P.rescale(q) * Pd.rescale(qi)}, order);
      r.record("D = F(q^-1 z)/F(qz)", re == D, where);
      const int d = P.degree();
      const Scalar lam = q * C.inv(), c2 = st.gamma.inv().pow(2) * C.pow(d);
      r.record("twisted unitarity exact", c2 * (inverted_argument(P, lam) * P.rescale(qi)) == inverted_argument(Pd, lam) * Pd.rescale(qi), where);
      // numeric residual at q0
      const cplx kappa = std::pow(Cn, 0.5 * d) / st.gamma.specialize(q0);
      auto F = [&](cplx z) { return kappa * P.eval(z, q0) / Pd.eval(z, q0); };
      double res = 0;
      for (int j = 0; j < 10; ++j) {
        cplx z = std::polar(0.4 + 0.13 * j, 0.2 + 0.57 * j);
        res = std::max(res, std::abs(F(qn / (Cn * z)) * F(z / qn) - cplx(1)));
      }
      r.record("twisted unitarity numeric", res <= tol, [&] { return where + " residual " + std::to_string(res); });
      if (spectra) spectra->push_back({i, k, D, P, Pd, "(" + (st.gamma.inv() * C.pow(d / 2)).str() + (d % 2 ? ")*sqrt(" + C.str() + ")" : ")") + "*(" + P.str() + ")/(" + Pd.str() + ")"});
      // lines off the node carry the trivial ℓ-weight
      bool on_node = k + 1 == static_cast<std::size_t>(i) || k == static_cast<std::size_t>(i);
      if (!on_node) {
        bool trivial = true;
        for (int s = 1; s <= order; ++s) trivial = trivial && D[static_cast<std::size_t>(s)].is_zero();
        r.record("off-node lines trivial", trivial, where);
      }
    }
  }
  return r;
}

}  // namespace qons
