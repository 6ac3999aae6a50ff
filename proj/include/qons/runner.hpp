#pragma once
// Batch driver: configuration, suite scheduling and report formatting.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "qons/rank_a.hpp"

namespace qons {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names{"scalars", "certify", "rationality", "factorize", "coproduct", "drf", "onedim", "rankn"};
  return names;
}

// checks selected by each subcommand
inline std::vector<std::string> subcommand_checks(const std::string& cmd) {
  if (cmd == "certify") return {"scalars", "certify", "rationality"};
  if (cmd == "factorize") return {"factorize", "coproduct"};
  if (cmd == "drf") return {"drf"};
  if (cmd == "rankn") return {"rankn"};
  if (cmd == "onedim") return {"onedim"};
  if (cmd == "all") return all_checks();
  throw ConfigError("unknown subcommand '" + cmd + "'");
}

struct ModuleSpec {
  std::vector<EvalParams> factors;  // one factor, or two for a tensor product

  std::string label() const {
    std::string s;
    for (const auto& f : factors) s += (s.empty() ? "" : "⊗") + std::string("V") + std::to_string(f.n) + "(" + f.a.str() + ")";
    return s;
  }
  bool is_tensor() const { return factors.size() == 2; }
  ojson to_json() const {
    auto one = [](const EvalParams& p) { return ojson{{"n", p.n}, {"a", p.a.str()}}; };
    if (!is_tensor()) return one(factors[0]);
    return ojson{{"tensor", ojson::array({one(factors[0]), one(factors[1])})}};
  }
};

struct RankSpec {
  int N = 2;
  Scalar a = Scalar(1);
  RankParams params = RankParams::standard(2);
  int T = 4;
  int window = 2;
  int mmax = 3;
};

struct RunConfig {
  std::string backend = "exact";
  double q0 = 1.3;
  int R = 12, T = 6, window = 4, mmax = 3;
  std::vector<ModuleSpec> modules;
  std::vector<OnsagerParams> onsager;
  std::vector<OnsagerParams> onedim;
  std::optional<RankSpec> rank;
  std::vector<std::string> checks;
  bool timings = true;

  bool numeric() const { return backend == "numeric"; }

  void validate() const {
    if (backend != "exact" && backend != "numeric") throw ConfigError("backend must be exact or numeric");
    if (R < 2 || T < 1 || window < 1 || mmax < 1) throw ConfigError("windows must be positive (R >= 2)");
    if (numeric()) check_not_root_of_unity(cplx(q0, 0));
    for (const auto& p : onsager)
      if (p.c0.is_zero() || p.c1.is_zero()) throw ConfigError("onsager: c_i must be nonzero");
    for (const auto& p : onedim)
      if (p.c0.is_zero() || p.c1.is_zero()) throw ConfigError("onedim: c_i must be nonzero");
    for (const auto& m : modules) {
      if (m.factors.empty() || m.factors.size() > 2) throw ConfigError("modules: one factor or a two-factor tensor");
      for (const auto& f : m.factors)
        if (f.n < 0 || f.a.is_zero()) throw ConfigError("modules: need n >= 0 and a != 0");
    }
    if (rank) {
      if (rank->N < 1 || rank->T < 1 || rank->window < 1) throw ConfigError("rank: need N >= 1, T >= 1, window >= 1");
      if (static_cast<int>(rank->params.c.size()) != rank->N + 1 || rank->params.s.size() != rank->params.c.size())
        throw ConfigError("rank: c and s need N+1 entries");
      for (const auto& c : rank->params.c)
        if (c.is_zero()) throw ConfigError("rank: c_i must be nonzero");
      if (rank->a.is_zero()) throw ConfigError("rank: a must be nonzero");
    }
    for (const auto& c : checks)
      if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end()) throw ConfigError("unknown check '" + c + "'");
  }

  bool selected(const std::string& c) const { return std::find(checks.begin(), checks.end(), c) != checks.end(); }

  ojson to_json() const {
    ojson j = ojson::object();
    j["backend"] = backend;
    if (numeric()) j["q0"] = q0;
    j["R"] = R;
    j["T"] = T;
    j["window"] = window;
    j["mmax"] = mmax;
    ojson ms = ojson::array();
    for (const auto& m : modules) ms.push_back(m.to_json());
    j["modules"] = ms;
    ojson os = ojson::array(), od = ojson::array();
    for (const auto& p : onsager) os.push_back(p.to_json());
    for (const auto& p : onedim) od.push_back(p.to_json());
    j["onsager"] = os;
    j["onedim"] = od;
    if (rank) {
      ojson r = rank->params.to_json();
      r["N"] = rank->N;
      r["a"] = rank->a.str();
      r["T"] = rank->T;
      r["window"] = rank->window;
      j["rank"] = r;
    }
    j["checks"] = checks;
    return j;
  }
};

namespace detail {

inline Scalar parse_scalar(const ojson& v, const std::string& where) {
  try {
    if (v.is_string()) return Scalar::parse(v.get<std::string>());
    if (v.is_number_integer()) return Scalar(v.get<long>());
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected a scalar string");
}

inline std::vector<Scalar> parse_scalars(const ojson& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_scalar(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline OnsagerParams parse_onsager(const ojson& j, const std::string& where) {
  auto c = parse_scalars(j.value("c", ojson::array({"1", "1"})), where + ".c");
  auto s = parse_scalars(j.value("s", ojson::array({"0", "0"})), where + ".s");
  if (c.size() != 2 || s.size() != 2) throw ConfigError(where + ": c and s need two entries");
  return {c[0], c[1], s[0], s[1]};
}

inline EvalParams parse_eval(const ojson& j, const std::string& where) {
  if (!j.is_object() || !j.contains("n")) throw ConfigError(where + ": expected {\"n\":..,\"a\":..}");
  return {j.at("n").get<int>(), parse_scalar(j.value("a", ojson("1")), where + ".a")};
}

template <class F>
void each_or_one(const ojson& j, F f) {
  if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i) f(j[i], i);
  else
    f(j, 0);
}

}  // namespace detail

inline RunConfig parse_config(const ojson& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  RunConfig c;
  try {
    c.backend = j.value("backend", c.backend);
    c.q0 = j.value("q0", c.q0);
    c.R = j.value("R", c.R);
    c.T = j.value("T", c.T);
    c.window = j.value("window", c.window);
    c.mmax = j.value("mmax", c.mmax);
  } catch (const ojson::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (j.contains("modules"))
    detail::each_or_one(j["modules"], [&](const ojson& m, std::size_t i) {
      std::string where = "modules[" + std::to_string(i) + "]";
      ModuleSpec s;
      if (m.contains("tensor")) {
        const ojson& t = m["tensor"];
        if (!t.is_array() || t.size() != 2) throw ConfigError(where + ".tensor: need two factors");
        s.factors = {detail::parse_eval(t[0], where), detail::parse_eval(t[1], where)};
      } else {
        s.factors = {detail::parse_eval(m, where)};
      }
      c.modules.push_back(s);
    });
  if (j.contains("onsager"))
    detail::each_or_one(j["onsager"], [&](const ojson& p, std::size_t i) { c.onsager.push_back(detail::parse_onsager(p, "onsager[" + std::to_string(i) + "]")); });
  if (j.contains("onedim"))
    detail::each_or_one(j["onedim"], [&](const ojson& p, std::size_t i) { c.onedim.push_back(detail::parse_onsager(p, "onedim[" + std::to_string(i) + "]")); });
  if (j.contains("rank")) {
    const ojson& r = j["rank"];
    RankSpec rs;
    rs.N = r.value("N", 2);
    rs.a = detail::parse_scalar(r.value("a", ojson("1")), "rank.a");
    rs.T = r.value("T", c.T);
    rs.window = r.value("window", 2);
    rs.mmax = r.value("mmax", 3);
    ojson ones = ojson::array(), zeros = ojson::array();
    for (int i = 0; i <= rs.N; ++i) {
      ones.push_back("1");
      zeros.push_back("0");
    }
    rs.params.c = detail::parse_scalars(r.value("c", ones), "rank.c");
    rs.params.s = detail::parse_scalars(r.value("s", zeros), "rank.s");
    c.rank = rs;
  }
  if (j.contains("checks")) {
    for (const auto& x : j["checks"]) c.checks.push_back(x.get<std::string>());
  }
  if (c.modules.empty()) c.modules.push_back({{{1, Scalar::q()}}});
  if (c.onsager.empty()) c.onsager.push_back(OnsagerParams{});
  c.validate();
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const ojson::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return parse_config(j);
}

// ---------------------------------------------------------------------------

struct SeriesRow {
  std::string piece;
  std::vector<Scalar> coeffs;
};

struct SeriesTable {
  std::string name;
  std::vector<SeriesRow> rows;
};

struct SuiteResult {
  Report report;
  std::vector<SeriesTable> tables;
  ojson extra = ojson::object();
  double seconds = 0;
  std::string error;  // construction error, reported as a failed verdict
};

inline SuiteResult suite_of(Report r) {
  SuiteResult s;
  s.report = std::move(r);
  return s;
}

struct RunReport {
  ojson config;
  std::vector<SuiteResult> suites;
  bool numeric = false;
  double q0 = 1.3;

  bool pass() const {
    for (const auto& s : suites)
      if (!s.report.pass()) return false;
    return true;
  }
};

inline ojson series_json(const std::vector<Scalar>& c, bool numeric, double q0) {
  ojson row = ojson::array();
  for (const auto& x : c) row.push_back(x.str());
  if (!numeric) return row;
  ojson num = ojson::array();
  for (const auto& x : c) {
    cplx v = x.specialize(cplx(q0, 0));
    num.push_back(ojson::array({v.real(), v.imag()}));
  }
  return ojson{{"exact", row}, {"numeric", num}};
}

inline ojson report_json(const RunReport& r, bool with_timings) {
  ojson j = ojson::object();
  j["config"] = r.config;
  j["pass"] = r.pass();
  ojson suites = ojson::array();
  double total = 0;
  for (const auto& s : r.suites) {
    ojson e = s.report.to_json();
    if (!s.tables.empty()) {
      ojson ts = ojson::array();
      for (const auto& t : s.tables) {
        ojson rows = ojson::array();
        for (const auto& row : t.rows) rows.push_back(ojson{{"piece", row.piece}, {"coeffs", series_json(row.coeffs, r.numeric, r.q0)}});
        ts.push_back(ojson{{"name", t.name}, {"rows", rows}});
      }
      e["tables"] = ts;
    }
    if (!s.extra.empty()) e["results"] = s.extra;
    if (with_timings) e["seconds"] = s.seconds;
    total += s.seconds;
    suites.push_back(e);
  }
  j["suites"] = suites;
  if (with_timings) j["timings"] = ojson{{"total_seconds", total}};
  return j;
}

// removes every timing field, for byte comparison of two runs
inline ojson strip_timings(ojson j) {
  if (j.is_object()) {
    j.erase("seconds");
    j.erase("timings");
    for (auto& [k, v] : j.items()) v = strip_timings(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timings(v);
  }
  return j;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

inline std::string report_csv(const RunReport& r) {
  std::size_t width = 0;
  for (const auto& s : r.suites)
    for (const auto& t : s.tables)
      for (const auto& row : t.rows) width = std::max(width, row.coeffs.size());
  std::ostringstream os;
  os << "suite,table,piece";
  for (std::size_t k = 0; k < width; ++k) os << ",z^" << k;
  os << "\n";
  for (const auto& s : r.suites)
    for (const auto& t : s.tables)
      for (const auto& row : t.rows) {
        os << csv_field(s.report.title) << "," << csv_field(t.name) << "," << csv_field(row.piece);
        for (const auto& c : row.coeffs) os << "," << csv_field(c.str());
        os << "\n";
      }
  return os.str();
}

inline std::string report_text(const RunReport& r) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& s : r.suites) {
    os << (s.report.pass() ? "PASS " : "FAIL ") << s.report.title << "\n";
    for (const auto& v : s.report.verdicts) {
      if (v.pass) continue;
      ++failed;
      os << "    " << v.name << (v.note.empty() ? "" : " (" + v.note + ")") << ": " << v.failures << "/" << v.instances << " failed";
      if (!v.witness.empty()) os << "; first: " << v.witness;
      os << "\n";
    }
  }
  os << r.suites.size() << " suites, " << failed << " failing verdicts: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

inline std::string report_format(const RunReport& r, const std::string& fmt, bool with_timings = true) {
  if (fmt == "json") return report_json(r, with_timings).dump(2) + "\n";
  if (fmt == "csv") return report_csv(r);
  if (fmt == "text") return report_text(r);
  throw ConfigError("unknown format '" + fmt + "'");
}

// ---------------------------------------------------------------------------
// Suites.

inline Report scalar_selftest() {
  Report r("scalars self-test");
  const Scalar q = Scalar::q(), qi = Scalar::q_pow(-1);
  r.record("[0] = 0", qint(0).is_zero());
  r.record("[2] = q + q^-1", qint(2) == q + qi, qint(2).str());
  for (int k = -6; k <= 6; ++k) r.record("[-k] = -[k]", qint(-k) == -qint(k), std::to_string(k));
  for (int k = 0; k <= 6; ++k)
    for (int l = 0; l <= k; ++l) {
      r.record("binomial symmetry", qbinom(k, l) == qbinom(k, k - l), std::to_string(k) + "," + std::to_string(l));
      if (l >= 1 && l < k)
        r.record("binomial Pascal", qbinom(k, l) == Scalar::q_pow(-l) * qbinom(k - 1, l) + Scalar::q_pow(k - l) * qbinom(k - 1, l - 1),
                 std::to_string(k) + "," + std::to_string(l));
    }
  for (const char* s : {"q^2-1", "(q^3+2)/(q-1)", "-q^-4", "7/3", "(1+q)^2/(q^2+q)"}) {
    Scalar x = Scalar::parse(s);
    r.record("field inverse", x * x.inv() == Scalar(1), s);
    r.record("parse round trip", Scalar::parse(x.str()) == x, s);
  }
  r.record("[2] at q0 = 2", std::abs(qint(2).specialize(cplx(2, 0)) - cplx(2.5, 0)) < 1e-12);
  return r;
}

inline LoopModule build_module(const ModuleSpec& m, int order) {
  if (!m.is_tensor()) return build_evaluation(m.factors[0], 3, order);
  return tensor(build_evaluation(m.factors[0], 3, order), build_evaluation(m.factors[1], 3, order));
}

inline std::string params_label(const OnsagerParams& p) {
  return "c=(" + p.c0.str() + "," + p.c1.str() + ") s=(" + p.s0.str() + "," + p.s1.str() + ")";
}

inline std::vector<LWeight> module_lweights(const ModuleSpec& m, int order) {
  if (!m.is_tensor()) return lweight_table(build_evaluation(m.factors[0], 3, order), order);
  return tensor_lweights(lweight_table(build_evaluation(m.factors[0], 3, order), order), lweight_table(build_evaluation(m.factors[1], 3, order), order), order);
}

inline SeriesTable theta_table(const std::string& name, const OnsagerFamily& f, const Grading& g, int order) {
  SeriesTable t{name, {}};
  for (std::size_t k = 0; k < f.dim(); ++k) {
    SeriesRow row{"v" + std::to_string(k) + " deg " + deg_str(g.deg[k]), {}};
    for (int s = 0; s <= order; ++s) row.coeffs.push_back(f.theta_grave[static_cast<std::size_t>(s)](k, k));
    t.rows.push_back(std::move(row));
  }
  return t;
}

using Job = std::function<SuiteResult()>;

inline std::vector<std::pair<std::string, Job>> plan_jobs(const RunConfig& c) {
  std::vector<std::pair<std::string, Job>> jobs;
  const int T = c.T;
  const cplx q0(c.q0, 0);
  if (c.selected("scalars")) jobs.emplace_back("scalars", [] { return suite_of(scalar_selftest()); });
  for (const auto& m : c.modules) {
    if (c.selected("certify")) {
      jobs.emplace_back("certify " + m.label(), [m] {
        LoopModule v = build_module(m, 6);
        Report r("module certification " + m.label());
        if (v.has_drinfeld) r.merge(verify_drinfeld_relations(v, 3), "Drinfeld ");
        r.merge(verify_kac_moody(v.km, cartan_affine_sl2()), "Serre ");
        return suite_of(r);
      });
    }
    for (const auto& p : c.onsager) {
      const std::string tag = m.label() + " " + params_label(p);
      if (c.selected("certify"))
        jobs.emplace_back("luwang " + tag, [m, p, c] {
          LoopModule v = build_module(m, 2);
          auto [b0, b1] = eta_embed(p, v);
          Report r("Lu–Wang relations " + m.label() + " " + params_label(p));
          r.merge(verify_qdolangrady(b0, b1, p));
          OnsagerFamily f = generate_family(p, v, c.R, c.T);
          r.merge(verify_luwang(f, c.window, c.mmax));
          r.merge(tau_dual_check(f, c.window, c.mmax), "tau-dual ");
          return suite_of(r);
        });
      if (c.selected("rationality"))
        jobs.emplace_back("rationality " + tag, [m, p, c] {
          LoopModule v = build_module(m, 2);
          OnsagerFamily f = generate_family(p, v, c.R, c.T);
          RationalityResult rr = rationality_check(f, c.T);
          rr.report.title = "rationality " + m.label() + " " + params_label(p);
          SuiteResult s = suite_of(rr.report);
          if (rr.theta_den.degree() >= 0) s.extra["theta_denominator"] = rr.theta_den.coeff_strings();
          return s;
        });
      if (c.selected("factorize"))
        jobs.emplace_back("factorize " + tag, [m, p, T] {
          LoopModule v = build_module(m, T);
          SuiteResult s;
          s.report = Report("factorization " + m.label() + " " + params_label(p));
          auto lw = module_lweights(m, T);
          if (p.standard()) {
            OnsagerFamily f = generate_family(p, v, 2 * T, T);
            Grading g = m.is_tensor() ? v.total_grading() : v.grading;
            s.report.merge(factorization_check(f, g, expected_table(lw, p.C(), T), T));
            if (!m.is_tensor()) s.report.merge(drinfeld_degree_check(f, v, 4), "degree ");
            s.tables.push_back(theta_table("Θ̀ diagonal", f, g, T));
          } else {
            s.report.merge(generalized_factorization_check(p, v, lw, T), "generalized ");
            s.report.merge(s_reduction_check(p, v), "s-reduction ");
          }
          if (m.is_tensor()) {
            LoopModule a = build_evaluation(m.factors[0], 3, T), b = build_evaluation(m.factors[1], 3, T);
            s.report.merge(tensor_grouplike_check(p, a, b, T), "group-like ");
          }
          return s;
        });
      if (c.selected("coproduct") && m.is_tensor())
        jobs.emplace_back("coproduct " + tag, [m, p, T] {
          const int order = std::min(T, 4);
          LoopModule a = build_evaluation(m.factors[0], 3, order), b = build_evaluation(m.factors[1], 3, order);
          Report r("coproduct " + m.label() + " " + params_label(p));
          r.merge(coproduct_aplus_check(p, trivial_module(1, 1), b, order), "1-dim left ");
          r.merge(coproduct_aplus_check(p, a, b, order), "module left ");
          return suite_of(r);
        });
      if (c.selected("drf") && !m.is_tensor() && p.standard())
        jobs.emplace_back("drf " + tag, [m, p, T] {
          LoopModule v = build_module(m, T);
          OnsagerFamily f = generate_family(p, v, 2 * T, T);
          SuiteResult s;
          s.report = Report("Drinfeld rational fractions " + m.label() + " " + params_label(p));
          std::vector<DRFReport> d = drf_suite(f, v, T, s.report);
          ojson arr = ojson::array();
          for (const auto& x : d) arr.push_back(x.to_json());
          s.extra["lines"] = arr;
          return s;
        });
    }
  }
  if (c.selected("onedim"))
    for (const auto& p : c.onedim)
      jobs.emplace_back("onedim " + params_label(p), [p, T, q0] {
        SuiteResult s;
        s.report = Report("one-dimensional " + params_label(p));
        OneDimResult ch = onedim_character(p, T);
        s.report.merge(ch.report);
        s.tables.push_back({"D pipeline vs closed", {{"pipeline", ch.pipeline}, {"closed", ch.closed}}});
        OneDimDRF d = onedim_drf_numeric(p, q0);
        s.report.merge(d.report);
        s.report.record("F = ±1 iff s = 0", d.plus_minus_one == p.standard(), [&] { return d.F; });
        s.extra["F"] = d.F;
        s.extra["degree"] = d.degree;
        s.extra["orbit_size"] = d.orbit_size;
        return s;
      });
  if (c.selected("rankn") && c.rank) {
    const RankSpec rs = *c.rank;
    const double tol = 1e-9;
    jobs.emplace_back("rankn", [rs, q0, tol] {
      SuiteResult s;
      const int N = rs.N;
      s.report = Report("higher rank N=" + std::to_string(N) + " a=" + rs.a.str());
      Report& r = s.report;
      for (int i = 1; i <= N; ++i) {
        WeylWord w = omega_word(i, N);
        r.record("omega length", static_cast<int>(w.length()) == i * (N - i + 1), w.str());
        s.extra["omega"][std::to_string(i)] = w.str();
      }
      LoopModule v = build_vector_evaluation(N, rs.a);
      std::vector<Matrix> b = eta_embed_rank(rs.params, v);
      for (int i = 1; i <= N; ++i) {
        Matrix x = build_Ai_minus1(i, b, rs.params), y = build_Ai_minus1_word(i, b, rs.params);
        r.record("A_{i,-1} bracket = word", x == y, [&] { return "node " + std::to_string(i) + " " + first_nonzero(x - y); });
      }
      if (rs.params.standard_s())
        for (int i = 1; i <= N; ++i) r.merge(braid_compat_check(i, v, rs.params), "braid ");
      const int R = std::max(rs.window + rs.mmax + 2, rs.T);
      RankNFamily f = generate_rankn_family(rs.params, v, R, std::max(rs.T, 2 * rs.window + 2));
      r.merge(verify_grel(f, rs.window, rs.mmax));
      std::vector<NodeSpectrum> sp;
      r.merge(rankn_spectral_check(f, rs.T, q0, tol, &sp), "spectral ");
      ojson arr = ojson::array();
      for (const auto& x : sp) arr.push_back(ojson{{"node", x.node}, {"line", x.line}, {"Qcal", x.Qcal.coeff_strings()}, {"Qdag", x.Qdag.coeff_strings()}, {"F", x.F}});
      s.extra["spectra"] = arr;
      for (int i = 1; i <= N; ++i) s.tables.push_back(theta_table("node " + std::to_string(i) + " Θ̀ diagonal", f.at(i), f.grading, rs.T));
      return s;
    });
  }
  return jobs;
}

// runs the jobs on a small thread pool; results keep the plan order
inline RunReport run(const RunConfig& c, unsigned threads = 0) {
  auto jobs = plan_jobs(c);
  RunReport out;
  out.config = c.to_json();
  out.numeric = c.numeric();
  out.q0 = c.q0;
  out.suites.resize(jobs.size());
  if (threads == 0) threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      auto t0 = std::chrono::steady_clock::now();
      SuiteResult s;
      try {
        s = jobs[k].second();
      } catch (const std::exception& e) {
        s.report = Report(jobs[k].first);
        s.report.record("construction", false, e.what());
        s.error = e.what();
      }
      s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out.suites[k] = std::move(s);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, jobs.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace qons
