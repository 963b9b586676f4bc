#include "ocwobs/cli.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ocwobs/ingest.hpp"
#include "ocwobs/json_io.hpp"
#include "ocwobs/report.hpp"

namespace ocw {
namespace {

namespace fs = std::filesystem;

const fs::path kFixture(OCWOBS_FIXTURE_DIR);

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ocwobs");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ocwobs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, AssessFixtureToStdout) {
  const auto r = run({"assess", (kFixture / "courses.jsonl").string(), "--as-of", "2014-12-31"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto s = parse_summary_json(r.out);
  EXPECT_EQ(s.course_count, 100);
  EXPECT_EQ(s.open_license_count, 28);
}

TEST_F(CliTest, AssessJobsDoNotChangeOutput) {
  const auto a = run({"assess", (kFixture / "courses.jsonl").string(), "--as-of", "2014-12-31", "--jobs", "1"});
  const auto b = run({"assess", (kFixture / "courses.jsonl").string(), "--as-of", "2014-12-31", "--jobs", "7"});
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, AssessWritesDirectoryThenReportReproduces) {
  const auto out = dir_ / "run";
  const auto r = run({"assess", (kFixture / "courses.jsonl").string(), "--as-of", "2014-12-31", "--out",
                      out.string(), "--format", "json,csv,md"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (auto f : {"assessments.jsonl", "cleanup.json", "summary.json", "summary.csv", "summary.md",
                 "formats.csv", "availability.csv"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  const auto rep = run({"report", (out / "assessments.jsonl").string()});
  ASSERT_EQ(rep.code, 0) << rep.err;
  EXPECT_EQ(parse_summary_json(rep.out), parse_summary_json(slurp(out / "summary.json")));
}

TEST_F(CliTest, ValidateReportsBrokenLink) {
  std::ifstream in(kFixture / "courses.jsonl");
  std::string first, second;
  std::getline(in, first);
  std::getline(in, second);
  auto rec = parse_course_line(first);
  rec.link_broken = true;
  std::ofstream(dir_ / "c.jsonl") << serialize_course(rec) << "\n" << second << "\n";
  const auto r = run({"validate", (dir_ / "c.jsonl").string()});
  EXPECT_EQ(r.code, cli::kExitDataError);
  const auto report = json::parse(r.out);
  EXPECT_EQ(report.at("dropped").size(), 1u);
  EXPECT_EQ(report.at("dropped")[0].at("reason"), "broken-link");
  EXPECT_NE(r.err.find("broken-link"), std::string::npos);

  EXPECT_EQ(run({"validate", (kFixture / "courses.jsonl").string()}).code, cli::kExitOk);
}

TEST_F(CliTest, SampleIsReproducible) {
  const std::vector<std::string> args{"sample", (kFixture / "courses.jsonl").string(), "-n", "10", "--seed", "7"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 10);
  EXPECT_EQ(run({"sample", (kFixture / "courses.jsonl").string(), "-n", "0", "--seed", "1"}).code,
            cli::kExitUsage);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"assess", "x.jsonl"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"assess", (kFixture / "courses.jsonl").string(), "--as-of", "2014-13-01"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"assess", (kFixture / "courses.jsonl").string(), "--as-of", "2014-12-31", "--format", "xml"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"probe", (kFixture / "courses.jsonl").string(), "--transport", "carrier-pigeon"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"probe", (kFixture / "courses.jsonl").string(), "--interval", "soon"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"rank", (kFixture / "courses.jsonl").string(), "--provider", "google"}).code,
            cli::kExitUsage);
  // Observation date earlier than dated course data.
  EXPECT_EQ(run({"assess", (kFixture / "courses.jsonl").string(), "--as-of", "2013-01-01"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, DataErrors) {
  EXPECT_EQ(run({"validate", (dir_ / "missing.jsonl").string()}).code, cli::kExitDataError);
  std::ofstream(dir_ / "empty.jsonl") << "\n";
  EXPECT_EQ(run({"assess", (dir_ / "empty.jsonl").string(), "--as-of", "2014-12-31"}).code,
            cli::kExitDataError);
}

TEST_F(CliTest, RankFixtureReproducesStoredObservations) {
  const auto out = dir_ / "ranked.jsonl";
  const auto r = run({"rank", (kFixture / "courses.jsonl").string(), "--provider",
                      "fixture:" + (kFixture / "search_results.jsonl").string(), "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto before = load_corpus(kFixture / "courses.jsonl").records;
  const auto after = load_corpus(out).records;
  EXPECT_EQ(after, before);
}

TEST_F(CliTest, ProbeFixtureReproducesStoredLogs) {
  const auto r = run({"probe", (kFixture / "courses.jsonl").string(), "--transport",
                      "fixture:" + (kFixture / "probe_script.json").string(), "--start",
                      "2014-10-01T00:00:00Z", "--interval", "30d", "--jobs", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const auto after = load_corpus(in).records;
  EXPECT_EQ(after, load_corpus(kFixture / "courses.jsonl").records);
}

}  // namespace
}  // namespace ocw
