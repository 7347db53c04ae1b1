#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "qdist/runner.hpp"

using namespace qdist;

namespace {

std::string sample(const std::string& name) { return (std::filesystem::path(QDIST_SOURCE_DIR) / "samples" / name).string(); }

RunConfig make(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

}  // namespace

TEST(SetSource, Parsing) {
  const auto r = parse_set_source("random:20..25");
  EXPECT_EQ(r.kind, SetSource::Kind::Random);
  EXPECT_EQ(r.min_size, 20u);
  EXPECT_EQ(r.max_size, 25u);
  EXPECT_EQ(parse_set_source("random:7").max_size, 7u);
  const auto s = parse_set_source("sharpness:odd-ii:delta=0.3");
  EXPECT_EQ(s.sharpness, SharpnessKind::OddII);
  EXPECT_DOUBLE_EQ(s.delta, 0.3);
  EXPECT_EQ(parse_set_source("pts.txt").path, "pts.txt");
  EXPECT_THROW(parse_set_source(""), InvalidParameter);
  EXPECT_THROW(parse_set_source("random:9..3"), InvalidParameter);
  EXPECT_THROW(parse_set_source("sharpness:weird"), InvalidParameter);
  EXPECT_THROW(parse_set_source("sharpness:even:delta=x"), InvalidParameter);
}

TEST(RatioList, Parsing) {
  auto f = Field::make(5);
  EXPECT_EQ(parse_ratio_list(*f, "all").size(), 4u);
  EXPECT_EQ(parse_ratio_list(*f, "1,3"), (std::vector<Element>{Element{1}, Element{3}}));
  EXPECT_THROW(parse_ratio_list(*f, "0"), DomainError);
  EXPECT_THROW(parse_ratio_list(*f, "5"), InvalidParameter);
}

TEST(Count, TwoPointsJson) {
  auto cfg = make("count");
  cfg.set = sample("two_points.txt");
  cfg.r = "1";
  const auto res = run_command(cfg);
  EXPECT_EQ(res.exit_code, kExitPass);
  const auto j = nlohmann::json::parse(res.report);
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_EQ(j["reports"][0]["W"], 4);
  EXPECT_EQ(j["reports"][0]["M"], 8);
  EXPECT_EQ(j["reports"][0]["w0"], 2);
}

TEST(Count, EmptySetCsv) {
  auto cfg = make("count");
  cfg.set = sample("empty.txt");
  cfg.format = "csv";
  const auto res = run_command(cfg);
  EXPECT_EQ(res.report, "r,W,M,w0\n1,0,0,0\n2,0,0,0\n3,0,0,0\n4,0,0,0\n");
}

TEST(Count, GeneralFormMatchesStandardCoordinates) {
  auto cfg = make("count");
  cfg.set = "random:30";
  cfg.dim = 3;
  cfg.seed = 4;
  cfg.form = sample("form_3x3.txt");
  cfg.format = "csv";
  const auto res = run_command(cfg);
  EXPECT_EQ(res.exit_code, kExitPass);
  EXPECT_NE(res.report.find("r,W,M,w0\n"), std::string::npos);
}

TEST(Count, Errors) {
  auto cfg = make("count");
  cfg.set = sample("two_points.txt");
  cfg.r = "0";
  EXPECT_THROW(run_command(cfg), DomainError);
  cfg.r = "all";
  cfg.dim = 3;
  EXPECT_THROW(run_command(cfg), InvalidParameter);
  cfg.dim = 0;
  cfg.field = "7";
  EXPECT_THROW(run_command(cfg), InvalidParameter);  // file is over F_5
  cfg.field = "4";
  EXPECT_THROW(run_command(cfg), InvalidParameter);
}

TEST(Bounds, SmallSweepPasses) {
  auto cfg = make("bounds");
  cfg.set = "random:20..25";
  cfg.trials = 5;
  cfg.seed = 2024;
  const auto res = run_command(cfg);
  EXPECT_EQ(res.exit_code, kExitPass) << res.summary;
  const auto j = nlohmann::json::parse(res.report);
  EXPECT_EQ(j["results"].size(), 5u);
  EXPECT_FALSE(j["config"].contains("threads"));
  EXPECT_EQ(j["seed"], 2024);
}

TEST(Bounds, EuclideanFormUsesStandardCoordinates) {
  auto cfg = make("bounds");
  cfg.set = "random:17..20";
  cfg.field = "3";
  cfg.dim = 3;
  cfg.form = "euclidean";
  cfg.trials = 3;
  const auto res = run_command(cfg);
  EXPECT_EQ(res.exit_code, kExitPass) << res.summary;
}

TEST(Bounds, ThreadCountDoesNotChangeReport) {
  auto cfg = make("bounds");
  cfg.set = "random:5..30";
  cfg.field = "7";
  cfg.trials = 6;
  cfg.seed = 99;
  const auto one = run_command(cfg).report;
  cfg.threads = 4;
  EXPECT_EQ(run_command(cfg).report, one);
  cfg.format = "csv";
  const auto csv4 = run_command(cfg).report;
  cfg.threads = 1;
  EXPECT_EQ(run_command(cfg).report, csv4);
}

TEST(Bounds, BudgetExceeded) {
  auto cfg = make("bounds");
  cfg.set = "random:5";
  cfg.budget = 100;
  EXPECT_THROW(run_command(cfg), ResourceError);
}

TEST(Sharpness, EvenQ7ReportsNonSquares) {
  auto cfg = make("sharpness");
  cfg.field = "7";
  const auto res = run_command(cfg);
  EXPECT_EQ(res.exit_code, kExitPass);
  EXPECT_NE(res.summary.find("{3,5,6}"), std::string::npos) << res.summary;
  cfg.format = "csv";
  EXPECT_EQ(run_command(cfg).report.substr(0, 8), "r,eta,W\n");
}

TEST(Sharpness, OddKinds) {
  auto cfg = make("sharpness");
  cfg.field = "5";
  cfg.set = "sharpness:odd-iii";
  EXPECT_EQ(run_command(cfg).exit_code, kExitPass);
  cfg.field = "13";
  cfg.set = "sharpness:odd-ii:delta=0.25";
  const auto res = run_command(cfg);
  EXPECT_EQ(res.exit_code, kExitPass);
  const auto j = nlohmann::json::parse(res.report);
  EXPECT_EQ(j["construction"]["size"], 26);
  cfg.set = "random:3";
  EXPECT_THROW(run_command(cfg), InvalidParameter);
}

TEST(Fourier, SphereCsvRows) {
  auto cfg = make("fourier");
  cfg.field = "3";
  cfg.variety = "sphere:0";
  cfg.format = "csv";
  const auto res = run_command(cfg);
  std::size_t lines = 0;
  for (char c : res.report) lines += c == '\n';
  EXPECT_EQ(lines, 10u);
  EXPECT_NE(res.report.find("0,0 0,5;0,"), std::string::npos) << res.report;  // |S_0| = 5 at m = 0
}

TEST(Fourier, NeedsExactlyOneSource) {
  auto cfg = make("fourier");
  EXPECT_THROW(run_command(cfg), InvalidParameter);
  cfg.variety = "full";
  cfg.set = "random:3";
  EXPECT_THROW(run_command(cfg), InvalidParameter);
  cfg.set.clear();
  cfg.variety = "cube";
  EXPECT_THROW(run_command(cfg), InvalidParameter);
}

TEST(Verify, SingleFieldPassesAndInjectionFails) {
  auto cfg = make("verify");
  cfg.field = "3";
  cfg.dim = 2;
  EXPECT_EQ(run_command(cfg).exit_code, kExitPass);
  cfg.inject_sign_error = true;
  const auto res = run_command(cfg);
  EXPECT_EQ(res.exit_code, kExitFailure);
  EXPECT_NE(res.summary.find("witness"), std::string::npos);
}
