#include "iw/harness.hpp"
#include "suites.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace iw;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SuiteReport sample_report() {
  SuiteReport r;
  r.id = "sample";
  r.params = Json{{"k", 2}};
  r.seeds = {7};
  r.check("one half below one", Rational(1, 2), Relation::Le, 1, Json{{"leaf", 3}});
  r.check("equal", 3, Relation::Eq, 3);
  r.check("fails", 1, Relation::Ge, 2);
  r.timestamp = "2026-01-01T00:00:00Z";
  r.runtime_seconds = 0.5;
  return r;
}

}  // namespace

TEST(Report, RowsRecordPassAndFail) {
  auto r = sample_report();
  EXPECT_EQ(r.failures(), 1u);
  EXPECT_FALSE(r.pass());
  r.rows.pop_back();
  EXPECT_TRUE(r.pass());
  r.error = "boom";
  EXPECT_FALSE(r.pass());
}

TEST(Report, JsonRoundTrip) {
  auto r = sample_report();
  Json j = to_json(r);
  EXPECT_EQ(j["rows"][0]["lhs"], "1/2");
  auto back = report_from_json(j);
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_THROW(report_from_json(Json{{"suite", "x"}}), ParseError);
}

TEST(Report, CsvShape) {
  SuiteReport empty;
  empty.id = "empty";
  EXPECT_EQ(to_csv(empty), "suite,row,label,lhs,relation,rhs,pass\n");
  auto r = sample_report();
  std::string csv = to_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(r.rows.size() + 1));
  EXPECT_NE(csv.find("sample,0,one half below one,1/2,<=,1/1,true"), std::string::npos);
  r.rows[0].label = "a, \"b\"";
  EXPECT_NE(to_csv(r).find("\"a, \"\"b\"\"\""), std::string::npos);
}

TEST(Report, EmitWritesReportAndCertificates) {
  auto dir = std::filesystem::temp_directory_path() / "iw_report_test";
  std::filesystem::remove_all(dir);
  auto r = sample_report();
  auto path = emit_report(r, dir, ReportFormat::Json);
  EXPECT_TRUE(std::filesystem::exists(dir / "sample.certificates.json"));
  Json j = Json::parse(slurp(path));
  EXPECT_EQ(j["assertions"], 3);
  EXPECT_EQ(j["certificate_paths"][0], "sample.certificates.json");
  auto csv = emit_report(r, dir, ReportFormat::Csv);
  EXPECT_EQ(csv.extension(), ".csv");
  std::filesystem::remove_all(dir);
}

TEST(Config, ParsesAndRejectsWithPaths) {
  auto c = config_from_json(Json::parse(R"({"horizon": 5, "seed": 3, "interval_precision": "1/1000",
                                            "suites": {"norm-oracle": {"vectors": 10}}})"));
  EXPECT_EQ(c.horizon, 5u);
  EXPECT_EQ(c.interval_precision, Rational(1, 1000));
  EXPECT_EQ(suite_u64(c, "norm-oracle", "vectors", 200), 10u);
  EXPECT_EQ(suite_u64(c, "tilde", "count", 3), 3u);
  try {
    config_from_json(Json::parse(R"({"horizon": "x"})"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where, "/horizon");
  }
  try {
    config_from_json(Json::parse(R"({"bogus": 1})"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where, "/bogus");
  }
  auto bad = config_from_json(Json::parse(R"({"suites": {"tilde": {"count": -1}}})"));
  try {
    suite_u64(bad, "tilde", "count", 3);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where, "/suites/tilde/count");
  }
  EXPECT_THROW(config_from_json(Json::parse("[]")), ParseError);
}

TEST(Suites, RegistryAndUnknown) {
  EXPECT_EQ(suites::registry().size(), 11u);
  EXPECT_THROW(suites::run_suite("unknown", {}), suites::UnknownSuite);
}

TEST(Suites, ScheduleSuitePassesAndIsDeterministic) {
  HarnessConfig cfg;
  auto a = suites::run_suite("schedule", cfg);
  auto b = suites::run_suite("schedule", cfg);
  EXPECT_TRUE(a.pass()) << to_json(a).dump(2);
  Json ja = to_json(a), jb = to_json(b);
  ja.erase("volatile");
  jb.erase("volatile");
  EXPECT_EQ(ja.dump(), jb.dump());
}

TEST(Suites, SmallNormOracleRunPasses) {
  HarnessConfig cfg;
  cfg.suites = Json{{"norm-oracle", {{"vectors", 15}}}};
  auto r = suites::run_suite("norm-oracle", cfg);
  EXPECT_TRUE(r.pass()) << to_json(r).dump(2);
  EXPECT_EQ(r.rows.size(), 8u);
}

TEST(Suites, ConfigErrorPropagates) {
  HarnessConfig cfg;
  cfg.suites = Json{{"tilde", {{"count", 9}}}};
  EXPECT_THROW(suites::run_suite("tilde", cfg), ParseError);
}
