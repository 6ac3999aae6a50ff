#include <gtest/gtest.h>

#include "qons/runner.hpp"

using qons::ConfigError;
using qons::ojson;
using qons::RunConfig;
using qons::RunReport;

namespace {

ojson small_config() {
  return ojson::parse(R"({"T": 3, "R": 6, "window": 2, "modules": [{"n": 1, "a": "q"}], "onsager": [{"c": ["1", "1"], "s": ["0", "0"]}]})");
}

}  // namespace

TEST(Config, Defaults) {
  RunConfig c = qons::parse_config(ojson::object());
  EXPECT_EQ(c.backend, "exact");
  ASSERT_EQ(c.modules.size(), 1u);
  EXPECT_EQ(c.modules[0].label(), "V1(q)");
  ASSERT_EQ(c.onsager.size(), 1u);
  EXPECT_FALSE(c.rank.has_value());
}

TEST(Config, TensorAndRank) {
  auto j = ojson::parse(R"({"modules": [{"tensor": [{"n": 1, "a": "q"}, {"n": 1, "a": "q^3"}]}], "rank": {"N": 3, "a": "q"}})");
  RunConfig c = qons::parse_config(j);
  EXPECT_TRUE(c.modules[0].is_tensor());
  ASSERT_TRUE(c.rank.has_value());
  EXPECT_EQ(c.rank->params.c.size(), 4u);
  EXPECT_TRUE(c.rank->params.standard_s());
}

TEST(Config, Rejections) {
  EXPECT_THROW(qons::parse_config(ojson::parse(R"({"onsager": [{"c": ["0", "1"], "s": ["0", "0"]}]})")), ConfigError);
  EXPECT_THROW(qons::parse_config(ojson::parse(R"({"backend": "float"})")), ConfigError);
  EXPECT_THROW(qons::parse_config(ojson::parse(R"({"checks": ["nonsense"]})")), ConfigError);
  EXPECT_THROW(qons::parse_config(ojson::parse(R"({"rank": {"N": 2, "c": ["1", "1"]}})")), ConfigError);
  EXPECT_THROW(qons::parse_config(ojson::parse(R"({"modules": [{"n": 1, "a": "0"}]})")), ConfigError);
  EXPECT_THROW(qons::parse_config(ojson::array()), ConfigError);
  EXPECT_THROW(qons::load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, SubcommandChecks) {
  EXPECT_EQ(qons::subcommand_checks("all"), qons::all_checks());
  auto f = qons::subcommand_checks("factorize");
  EXPECT_NE(std::find(f.begin(), f.end(), "factorize"), f.end());
}

TEST(Report, EmptyRunIsValidJson) {
  RunReport r;
  ojson j = qons::report_json(r, true);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_TRUE(j.at("suites").empty());
  EXPECT_NO_THROW(ojson::parse(qons::report_format(r, "json")));
  EXPECT_THROW(qons::report_format(r, "xml"), ConfigError);
}

TEST(Report, FormatsAndDeterminism) {
  RunConfig c = qons::parse_config(small_config());
  c.checks = {"scalars", "factorize"};
  RunReport a = qons::run(c, 1), b = qons::run(c, 2);
  EXPECT_TRUE(a.pass()) << qons::report_text(a);
  EXPECT_EQ(qons::strip_timings(qons::report_json(a, true)).dump(), qons::strip_timings(qons::report_json(b, true)).dump());
  EXPECT_EQ(qons::report_json(a, false).dump(), qons::strip_timings(qons::report_json(a, true)).dump());
  std::string csv = qons::report_csv(a);
  EXPECT_EQ(csv.rfind("suite,table,piece,z^0", 0), 0u);
  EXPECT_GT(std::count(csv.begin(), csv.end(), '\n'), 1);
  std::string text = qons::report_text(a);
  EXPECT_NE(text.find("PASS"), std::string::npos);
}

TEST(Report, NumericBackendAddsValues) {
  ojson j = small_config();
  j["backend"] = "numeric";
  RunConfig c = qons::parse_config(j);
  c.checks = {"factorize"};
  ojson out = qons::report_json(qons::run(c, 1), false);
  bool found = false;
  for (const auto& s : out.at("suites"))
    if (s.contains("tables"))
      for (const auto& t : s.at("tables"))
        for (const auto& row : t.at("rows")) {
          ASSERT_TRUE(row.at("coeffs").contains("numeric"));
          EXPECT_EQ(row.at("coeffs").at("numeric").size(), row.at("coeffs").at("exact").size());
          found = true;
        }
  EXPECT_TRUE(found);
}

TEST(Report, FailureCarriesWitness) {
  RunConfig c = qons::parse_config(small_config());
  c.checks = {"scalars"};
  RunReport r = qons::run(c, 1);
  ASSERT_EQ(r.suites.size(), 1u);
  EXPECT_TRUE(r.pass());
  r.suites[0].report.record("forced", false, "witness text");
  EXPECT_FALSE(r.pass());
  ojson j = qons::report_json(r, false);
  EXPECT_FALSE(j.at("pass").get<bool>());
  EXPECT_NE(j.dump().find("witness text"), std::string::npos);
}
