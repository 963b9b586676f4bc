// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ocwobs/ingest.hpp"
#include "ocwobs/json_io.hpp"
#include "ocwobs/metrics.hpp"
#include "ocwobs/prober.hpp"
#include "ocwobs/report.hpp"
#include "oracle.hpp"
#include "random_corpus.hpp"

namespace {

using namespace ocw;
using namespace std::chrono_literals;

const std::filesystem::path kFixture(OCWOBS_FIXTURE_DIR);
const Date kObs(2014, 12, 31);

class Check {
 public:
  template <typename A, typename B>
  void equal(const std::string& what, const A& actual, const B& expected) {
    if (actual == expected) return;
    std::ostringstream os;
    os << what << ": got " << actual << ", expected " << expected;
    fail(os.str());
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void fail(std::string what) {
    if (failures_.size() < 5) failures_.push_back(std::move(what));
    ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    if (count_ > failures_.size()) s += "; and " + std::to_string(count_ - failures_.size()) + " more";
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

double as_double(const MetricValue& v) { return v.number().value_or(std::nan("")); }

// 1 ------------------------------------------------------------------------

void fixture_figures(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  const auto corpus = load_corpus(kFixture / "courses.jsonl");
  std::vector<CourseAssessment> assessments;
  for (const auto& r : corpus.records) assessments.push_back(assess(r, kObs));
  const auto s = summarize(assessments);
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  c.equal("courses", s.course_count, 100);
  c.equal("open licenses", s.open_license_count, 28);
  c.equal("CC-BY-NC-SA", s.license_label_histogram.count("CC-BY-NC-SA") ? s.license_label_histogram.at("CC-BY-NC-SA") : 0, 50);
  c.equal("NC", s.nc_count, 57);
  c.equal("ND", s.nd_count, 3);
  const std::vector<std::pair<std::string, std::int64_t>> languages{
      {"en", 88}, {"zh", 1}, {"es", 4}, {"ja", 1}, {"pt", 1}, {"de", 1}, {"others", 4}};
  c.expect(language_table(s.language_histogram) == languages, "language table differs");
  c.equal("repurposeable", s.repurposeable_count, 68);
  c.equal("pdf", s.format_histogram.count("pdf") ? s.format_histogram.at("pdf").courses : 0, 52);
  c.equal("updated in 2014", s.updated_in_observation_year, 10);
  c.equal("updated within 3 years", s.updated_within_three_years, 32);
  c.equal("unknown update", s.unknown_update_count, 11);
  c.equal("revision histories", s.revision_history_count, 14);
  c.equal("captioned videos", s.closed_caption_counts.with_captions, 18);
  c.equal("video courses", s.closed_caption_counts.video_courses, 37);
  c.equal("separate SA", s.sa_counts.separate, 40);
  c.equal("inline SA", s.sa_counts.inline_content, 15);
  c.equal("with SA", s.sa_counts.with_self_assessment, 55);
  c.equal("with solutions", s.sa_counts.with_solutions, 25);
  c.equal("example and illustration", s.example_illustration_counts.with_example_and_illustration, 65);
  c.equal(">50 examples", s.example_illustration_counts.more_than_50_examples, 25);
  c.equal("both high", s.attractiveness_cross_counts.both_high(), 10);
  c.equal("single author", s.creation_type_counts.single_author, 61);
  c.equal("collaborative", s.creation_type_counts.collaborative, 16);
  const std::map<std::int64_t, std::int64_t> contributors{{2, 6}, {3, 3}, {4, 3}, {5, 2}, {6, 1}, {7, 1}};
  c.expect(s.contributor_histogram == contributors, "contributor histogram differs");
  c.equal("rank 1", s.rank_histogram.rank1, 14);
  c.equal("rank 2", s.rank_histogram.rank2, 7);
  c.equal("rank 3", s.rank_histogram.rank3, 4);
  c.equal("rank 4-100", s.rank_histogram.rank4to100, 4 + 7);
  c.equal("above 100", s.rank_histogram.above100, 68);
  c.expect(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
}

// 2 ------------------------------------------------------------------------

void regularity_properties(Check& c) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    // Every third history uses equal yearly steps so both sides of the iff are exercised.
    const auto n = std::uniform_int_distribution<std::size_t>(0, 10)(rng);
    RevisionHistory h{true, {}};
    if (i % 3 == 0) {
      const int step = std::uniform_int_distribution<int>(1, 3)(rng);
      const Date first(1995 + i % 7, 1 + i % 12, 1 + i % 28);
      for (std::size_t k = 0; k < n; ++k) h.timestamps.push_back(first.plus_years(static_cast<int>(k) * step));
    } else {
      h.timestamps = testing::random_revision_dates(rng, n);
    }
    const auto r = regularity(h);
    if (r.measured() != (n >= 3)) {
      c.fail("measured state wrong for " + std::to_string(n) + " revisions");
      continue;
    }
    if (n < 3) continue;
    const double v = as_double(r);
    c.expect(v >= 0.0 && v <= 1.0, "R out of range: " + std::to_string(v));
    bool equal = true;
    const double g0 = years_between(h.timestamps[0], h.timestamps[1]);
    for (std::size_t k = 2; k < n; ++k) equal = equal && years_between(h.timestamps[k - 1], h.timestamps[k]) == g0;
    c.expect((v == 1.0) == equal, "R = 1 iff equal gaps violated");
  }
  const std::array<double, 2> days{365.0, 1095.0};
  c.expect(std::abs(regularity_from_gaps(days) - 0.5) <= 1e-9, "365/1095 day gaps do not give 0.5");
}

// 3 ------------------------------------------------------------------------

void self_assessment_identities(Check& c) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    auto rec = testing::random_course(rng, "sa" + std::to_string(i));
    if (rec.modules.empty()) rec.modules.push_back({"m", 1, 0, 0, 0, 0});
    const auto r = assess_self_assessment(rec);
    std::int64_t n_sa = 0, covered = 0, solutions = 0;
    for (const auto& m : rec.modules) {
      n_sa += m.sa_count;
      covered += m.sa_count >= 1;
      solutions += m.sa_with_solutions_count;
    }
    const auto n_m = static_cast<std::int64_t>(rec.modules.size());
    const double mean = as_double(r.at("M7.2"));
    const double cov = as_double(r.at("M7.3"));
    // M7.2 is the correctly rounded quotient, so multiplying back is exact to
    // within one rounding step.
    c.expect(mean == static_cast<double>(n_sa) / static_cast<double>(n_m), "M7.2 is not N_sa / N_m");
    c.expect(std::llround(mean * static_cast<double>(n_m)) == n_sa, "M7.2 * N_m != N_sa");
    c.expect(cov >= 0.0 && cov <= 1.0, "M7.3 out of range");
    c.expect((cov == 1.0) == (covered == n_m), "M7.3 = 1 iff all modules covered violated");
    c.expect(cov == static_cast<double>(covered) / static_cast<double>(n_m), "M7.3 recount differs");
    c.expect(r.at("M7.1") == MetricValue(n_sa > 0), "M7.1 recount differs");
    c.expect(r.at("M7.Sol.1") == MetricValue(solutions > 0), "M7.Sol.1 recount differs");
  }
}

// 4 ------------------------------------------------------------------------

void openness_table(Check& c) {
  // Index = by*27 + sa*9 + nc*3 + nd with false=0, true=1, unspecified=2.
  // First 81 entries: license present; last 81: absent.
  const std::string expected =
      "100000000" "100000000" "100000000" "100000000" "100000000" "100000000" "100000000"
      "100000000" "100000000"
      "000000000" "000000000" "000000000" "000000000" "000000000" "000000000" "000000000"
      "000000000" "000000000";
  const std::array<TriState, 3> values{TriState::False, TriState::True, TriState::Unspecified};
  int cases = 0;
  for (int present = 1; present >= 0; --present) {
    for (int idx = 0; idx < 81; ++idx) {
      LicenseDescriptor l;
      l.present = present == 1;
      l.by = values[idx / 27];
      l.sa = values[idx / 9 % 3];
      l.nc = values[idx / 3 % 3];
      l.nd = values[idx % 3];
      const bool want = expected[static_cast<std::size_t>((1 - present) * 81 + idx)] == '1';
      c.expect(is_open_license(l) == want, "case " + std::to_string(cases));
      c.expect(assess_legal(l).is_open == want, "assess_legal case " + std::to_string(cases));
      ++cases;
    }
  }
  c.equal("cases", cases, 162);
}

// 5 ------------------------------------------------------------------------

class Instrumented : public Transport {
 public:
  explicit Instrumented(const Transport& inner) : inner_(inner) {}
  FetchOutcome fetch(const std::string& url, std::chrono::milliseconds timeout) const override {
    const int now = ++current_;
    int seen = peak_.load();
    while (now > seen && !peak_.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(200us);
    auto out = inner_.fetch(url, timeout);
    --current_;
    return out;
  }
  int peak() const { return peak_; }

 private:
  const Transport& inner_;
  mutable std::atomic<int> current_{0};
  mutable std::atomic<int> peak_{0};
};

void prober_determinism(Check& c) {
  std::vector<CourseRecord> records;
  std::unordered_map<std::string, std::vector<FetchOutcome>> script;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    CourseRecord r;
    r.id = "p" + std::to_string(i);
    r.title = "Course " + std::to_string(i);
    r.url = "http://host" + std::to_string(i % 7) + ".example/" + std::to_string(i);
    r.original_language = "en";
    auto& s = script[r.url];
    for (int k = 0; k < 3; ++k) {
      switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
        case 0: s.push_back(FetchOutcome::down("scripted")); break;
        case 1: s.push_back(FetchOutcome::content_missing()); break;
        default: s.push_back(FetchOutcome::up());
      }
    }
    records.push_back(std::move(r));
  }
  const auto start = parse_timestamp("2014-10-01T00:00:00Z");
  const ProbeSchedule schedule{3, 30 * 24h, 5s, 6};

  auto run_once = [&](int& peak) {
    ScriptedTransport scripted(script);
    Instrumented t(scripted);
    auto logs = probe_corpus(records, schedule, t, ProbeClock::simulated(start));
    peak = t.peak();
    return logs;
  };
  int peak_a = 0, peak_b = 0;
  const auto a = run_once(peak_a);
  const auto b = run_once(peak_b);

  for (const auto& r : records) {
    const auto& samples = a.at(r.id).samples;
    const auto& want = script.at(r.url);
    if (samples.size() != want.size()) {
      c.fail(r.id + ": wrong sample count");
      continue;
    }
    for (std::size_t k = 0; k < want.size(); ++k) {
      const auto& s = samples[k];
      const bool up = want[k].status != FetchStatus::Down;
      c.expect(s.server_up == up, r.id + " round " + std::to_string(k) + " up state");
      if (up) c.expect(s.material_present == (want[k].status == FetchStatus::Up), r.id + " material");
      c.expect(s.timestamp == start + schedule.interval * static_cast<int>(k), r.id + " timestamp");
    }
  }
  c.expect(peak_a <= schedule.parallelism && peak_b <= schedule.parallelism,
           "in-flight peak " + std::to_string(std::max(peak_a, peak_b)));
  json ja, jb;
  for (const auto& [id, log] : a) ja[id] = log;
  for (const auto& [id, log] : b) jb[id] = log;
  c.expect(ja.dump() == jb.dump(), "runs differ");
}

// 6 ------------------------------------------------------------------------

void aggregation_oracle(Check& c) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto n = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
    const auto records = testing::random_corpus(rng, n);
    std::vector<CourseAssessment> assessments;
    for (const auto& r : records) assessments.push_back(assess(r, kObs));
    const auto s = summarize(assessments);
    for (const auto& d : testing::summary_differences(s, testing::brute_force_summary(records, kObs))) {
      c.fail("corpus " + std::to_string(i) + ": " + d);
    }
    std::shuffle(assessments.begin(), assessments.end(), rng);
    c.expect(summarize(assessments) == s, "corpus " + std::to_string(i) + " not permutation invariant");
  }
}

// 7 ------------------------------------------------------------------------

void round_trip(Check& c) {
  std::ifstream in(kFixture / "courses.jsonl");
  std::string line;
  std::vector<CourseAssessment> assessments;
  int records = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto rec = parse_course_line(line);
    c.expect(parse_course_line(serialize_course(rec)) == rec, rec.id + " does not round-trip");
    assessments.push_back(assess(rec, kObs));
    ++records;
  }
  c.equal("records", records, 100);
  const auto s = summarize(assessments);
  const auto text = emit(s, ReportFormat::Json);
  const auto back = parse_summary_json(text);
  c.expect(back == s, "summary.json does not round-trip");
  c.expect(emit(back, ReportFormat::Json) == text, "summary.json re-emits differently");
}

// 8 ------------------------------------------------------------------------

void sampling_uniformity(Check& c) {
  std::array<int, 5> hits{};
  for (std::uint64_t seed = 0; seed < 10'000; ++seed) ++hits[sample_indices(5, 1, seed).at(0)];
  for (std::size_t k = 0; k < hits.size(); ++k) {
    c.expect(std::abs(hits[k] - 2000) <= 150,
             "element " + std::to_string(k) + " drawn " + std::to_string(hits[k]) + " times");
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Check&);
  };
  const Criterion criteria[] = {
      {"fixture reproduction", fixture_figures},
      {"regularity properties", regularity_properties},
      {"self-assessment identities", self_assessment_identities},
      {"openness truth table", openness_table},
      {"prober determinism and bounds", prober_determinism},
      {"aggregation oracle", aggregation_oracle},
      {"round-trip", round_trip},
      {"sampling uniformity", sampling_uniformity},
  };
  int failed = 0;
  int number = 0;
  for (const auto& criterion : criteria) {
    ++number;
    Check c;
    try {
      criterion.run(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    std::cout << (c.ok() ? "PASS" : "FAIL") << " " << number << " " << criterion.name;
    if (!c.ok()) std::cout << ": " << c.summary();
    std::cout << '\n';
    failed += !c.ok();
  }
  return failed == 0 ? 0 : 1;
}
