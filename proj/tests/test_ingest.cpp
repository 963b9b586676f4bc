#include "ocwobs/ingest.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "ocwobs/errors.hpp"
#include "ocwobs/json_io.hpp"
#include "random_corpus.hpp"

namespace ocw {
namespace {

CourseRecord course(std::string id) {
  CourseRecord r;
  r.id = std::move(id);
  r.title = "Calculus";
  r.url = "http://example.edu/" + r.id;
  r.original_language = "en";
  return r;
}

std::string lines(const std::vector<CourseRecord>& records) {
  std::ostringstream os;
  write_corpus(os, records);
  return os.str();
}

LoadedCorpus load(const std::string& text) {
  std::istringstream in(text);
  return load_corpus(in);
}

TEST(LoadCorpus, KeepsValidRecords) {
  const auto loaded = load(lines({course("a"), course("b"), course("c")}));
  EXPECT_EQ(loaded.records.size(), 3u);
  EXPECT_EQ(loaded.report.kept, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(loaded.report.dropped.empty());
}

TEST(LoadCorpus, EmptyUrlIsBrokenLink) {
  auto broken = course("b");
  broken.url.clear();
  const auto loaded = load(lines({course("a"), broken}));
  ASSERT_EQ(loaded.report.dropped.size(), 1u);
  EXPECT_EQ(loaded.report.dropped[0].id, "b");
  EXPECT_EQ(loaded.report.dropped[0].reason, DropReason::BrokenLink);
}

TEST(LoadCorpus, FlaggedLinkIsBroken) {
  auto broken = course("b");
  broken.link_broken = true;
  EXPECT_EQ(cleanup_verdict(broken)->reason, DropReason::BrokenLink);
}

TEST(LoadCorpus, EmptyMaterialOnlyWhenEveryProbeSaysSo) {
  auto r = course("e");
  const auto t0 = parse_timestamp("2014-10-01");
  const auto t1 = parse_timestamp("2014-11-01");
  r.probe_log = ProbeLog{{{t0, true, false}, {t1, true, false}}};
  EXPECT_EQ(cleanup_verdict(r)->reason, DropReason::EmptyMaterial);

  r.probe_log = ProbeLog{{{t0, true, false}, {t1, false, std::nullopt}}};
  EXPECT_FALSE(cleanup_verdict(r).has_value());

  r.probe_log.reset();
  EXPECT_FALSE(cleanup_verdict(r).has_value());
}

TEST(LoadCorpus, MalformedLinesDoNotStopProcessing) {
  auto text = lines({course("a")}) + "{broken json\n\n" +
              R"({"id":"named","title":"t"})" + "\n" + lines({course("z")});
  const auto loaded = load(text);
  EXPECT_EQ(loaded.report.kept, (std::vector<std::string>{"a", "z"}));
  ASSERT_EQ(loaded.report.dropped.size(), 2u);
  EXPECT_EQ(loaded.report.dropped[0].id, "line:2");
  EXPECT_EQ(loaded.report.dropped[1].id, "named");
  for (const auto& d : loaded.report.dropped) EXPECT_EQ(d.reason, DropReason::InvalidRecord);
}

TEST(LoadCorpus, DuplicateIdsAreInvalid) {
  const auto loaded = load(lines({course("a"), course("a")}));
  EXPECT_EQ(loaded.report.kept.size(), 1u);
  ASSERT_EQ(loaded.report.dropped.size(), 1u);
  EXPECT_EQ(loaded.report.dropped[0].detail, "duplicate id");
}

TEST(LoadCorpus, ValidationFailureIsInvalidRecord) {
  auto bad = course("v");
  bad.modules.push_back({"m", 1, 1, 2, 0, 0});
  const auto loaded = load(lines({bad}));
  ASSERT_EQ(loaded.report.dropped.size(), 1u);
  EXPECT_EQ(loaded.report.dropped[0].reason, DropReason::InvalidRecord);
}

TEST(LoadCorpus, KeptAndDroppedPartitionTheInput) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto records = testing::random_corpus(rng, 30);
    std::set<std::string> ids;
    for (auto& r : records) {
      ids.insert(r.id);
      const int roll = std::uniform_int_distribution<int>(0, 5)(rng);
      if (roll == 0) r.url.clear();
      if (roll == 1) r.modules.push_back({"m", 1, 0, 1, 0, 0});
    }
    const auto loaded = load(lines(records));
    std::set<std::string> seen(loaded.report.kept.begin(), loaded.report.kept.end());
    for (const auto& d : loaded.report.dropped) EXPECT_TRUE(seen.insert(d.id).second) << d.id;
    EXPECT_EQ(seen, ids);
    for (const auto& r : loaded.records) EXPECT_TRUE(validate(r).empty());
  }
}

TEST(LoadCorpus, MissingFileIsInputError) {
  EXPECT_THROW(load_corpus(std::filesystem::path("/nonexistent/corpus.jsonl")), InputError);
}

TEST(LoadCorpus, FixtureIsFullyKept) {
  const auto loaded = load_corpus(std::filesystem::path(OCWOBS_FIXTURE_DIR) / "courses.jsonl");
  EXPECT_EQ(loaded.records.size(), 100u);
  EXPECT_TRUE(loaded.report.dropped.empty());
  for (const auto& r : loaded.records) EXPECT_TRUE(validate(r).empty()) << r.id;
}

TEST(CleanupReportJson, ListsKeptAndDropped) {
  CleanupReport report{{"a"}, {{"b", DropReason::EmptyMaterial, "material absent in every probe"}}};
  const auto j = json::parse(cleanup_report_json(report));
  EXPECT_EQ(j["kept"][0], "a");
  EXPECT_EQ(j["dropped"][0]["reason"], "empty-material");
}

TEST(Sample, FullSizeIsPermutation) {
  std::vector<CourseRecord> records;
  for (int i = 0; i < 12; ++i) records.push_back(course("s" + std::to_string(i)));
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    auto picked = sample(records, records.size(), seed);
    std::set<std::string> ids;
    for (const auto& r : picked) ids.insert(r.id);
    EXPECT_EQ(ids.size(), records.size());
  }
}

TEST(Sample, DeterministicForSeed) {
  EXPECT_EQ(sample_indices(100, 10, 1), sample_indices(100, 10, 1));
  EXPECT_NE(sample_indices(100, 10, 1), sample_indices(100, 10, 2));
  const auto idx = sample_indices(100, 10, 1);
  EXPECT_EQ(std::set<std::size_t>(idx.begin(), idx.end()).size(), 10u);
}

TEST(Sample, RejectsBadSizes) {
  EXPECT_THROW(sample_indices(5, 6, 0), ArgumentError);
  EXPECT_THROW(sample_indices(5, 0, 0), ArgumentError);
}

TEST(Sample, PairsAreUniform) {
  // 2-of-4 over 6000 seeds: each of the 6 pairs expected 1000 times.
  std::map<std::pair<std::size_t, std::size_t>, int> hits;
  for (std::uint64_t seed = 0; seed < 6000; ++seed) {
    auto idx = sample_indices(4, 2, seed);
    std::sort(idx.begin(), idx.end());
    ++hits[{idx[0], idx[1]}];
  }
  ASSERT_EQ(hits.size(), 6u);
  // sd = sqrt(6000 * 1/6 * 5/6) ~ 28.9
  for (const auto& [pair, n] : hits) EXPECT_NEAR(n, 1000, 4 * 28.9);
}

}  // namespace
}  // namespace ocw
