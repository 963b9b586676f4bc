#pragma once

// Corpus-level aggregation of course assessments and report emitters.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ocwobs/metrics.hpp"

namespace ocw {

struct FormatCount {
  std::int64_t courses = 0;
  std::int64_t also_pdf = 0;  // courses offering this format and PDF
  bool operator==(const FormatCount&) const = default;
};

struct RoundCount {
  std::int64_t up = 0;
  std::int64_t down = 0;
  bool operator==(const RoundCount&) const = default;
};

struct SustainabilitySeries {
  std::string course_id;
  std::vector<double> recency;     // years before observation, per revision
  std::optional<double> regularity;
  bool operator==(const SustainabilitySeries&) const = default;
};

struct SelfAssessmentPoint {
  std::string course_id;
  double mean_objects = 0.0;  // M7.2
  double coverage = 0.0;      // M7.3
  bool operator==(const SelfAssessmentPoint&) const = default;
};

struct ClosedCaptionCounts {
  std::int64_t with_captions = 0;
  std::int64_t video_courses = 0;
  bool operator==(const ClosedCaptionCounts&) const = default;
};

struct SelfAssessmentCounts {
  std::int64_t with_self_assessment = 0;
  std::int64_t separate = 0;
  std::int64_t inline_content = 0;
  std::int64_t with_solutions = 0;
  bool operator==(const SelfAssessmentCounts&) const = default;
};

struct ExampleCounts {
  std::int64_t with_example_and_illustration = 0;
  std::int64_t more_than_50_examples = 0;
  bool operator==(const ExampleCounts&) const = default;
};

/// Band of an attractiveness criterion; Unmeasured when it is not available.
enum class Band { Low, Medium, High, Unmeasured };

template <>
struct EnumNames<Band> {
  static constexpr std::array<std::pair<Band, std::string_view>, 4> table{{
      {Band::Low, "low"},
      {Band::Medium, "medium"},
      {Band::High, "high"},
      {Band::Unmeasured, "unmeasured"},
  }};
};

/// Courses by subjective annotation (rows) and illustration-ratio band
/// (columns).
struct AttractivenessCrossCounts {
  std::array<std::array<std::int64_t, 4>, 4> cells{};

  std::int64_t& at(Band subjective, Band objective) {
    return cells[static_cast<std::size_t>(subjective)][static_cast<std::size_t>(objective)];
  }
  std::int64_t at(Band subjective, Band objective) const {
    return cells[static_cast<std::size_t>(subjective)][static_cast<std::size_t>(objective)];
  }
  std::int64_t subjective_total(Band b) const;
  std::int64_t objective_total(Band b) const;
  std::int64_t both_high() const { return at(Band::High, Band::High); }

  bool operator==(const AttractivenessCrossCounts&) const = default;
};

struct CreationTypeCounts {
  std::int64_t single_author = 0;
  std::int64_t collaborative = 0;
  std::int64_t unknown = 0;
  bool operator==(const CreationTypeCounts&) const = default;
};

/// Courses by M10.1, bucketed on the rounded-up average rank.
struct RankHistogram {
  std::int64_t rank1 = 0;
  std::int64_t rank2 = 0;
  std::int64_t rank3 = 0;
  std::int64_t rank4to100 = 0;
  std::int64_t above100 = 0;

  std::int64_t total() const { return rank1 + rank2 + rank3 + rank4to100 + above100; }
  bool operator==(const RankHistogram&) const = default;
};

struct CorpusSummary {
  std::int64_t course_count = 0;
  int observation_year = 0;

  // Legal reusability
  std::int64_t licensed_count = 0;
  std::int64_t open_license_count = 0;
  std::map<std::string, std::int64_t> license_label_histogram;  // "(none)" when unlabeled
  std::int64_t nc_count = 0;
  std::int64_t nd_count = 0;
  std::int64_t human_readable_license_count = 0;
  std::int64_t machine_readable_license_count = 0;

  // Multilinguality
  std::map<std::string, std::int64_t> language_histogram;  // original language code
  std::int64_t non_english_count = 0;
  std::int64_t translated_count = 0;

  // Format re-purposeability
  std::int64_t repurposeable_count = 0;
  std::int64_t direct_edit_count = 0;
  std::map<std::string, FormatCount> format_histogram;

  // Recency (sums to course_count - unknown_update_count)
  std::map<int, std::int64_t> recency_histogram;  // last-update year
  std::int64_t updated_in_observation_year = 0;
  std::int64_t updated_within_three_years = 0;
  std::int64_t unknown_update_count = 0;
  std::int64_t unit_recency_count = 0;

  // Sustainability
  std::int64_t revision_history_count = 0;
  std::int64_t regular_revision_count = 0;
  std::vector<SustainabilitySeries> sustainability_series;

  // Availability
  std::int64_t probed_count = 0;
  std::vector<RoundCount> availability_round_counts;
  ClosedCaptionCounts closed_caption_counts;
  std::int64_t downloadable_whole_count = 0;
  std::int64_t downloadable_parts_count = 0;
  std::int64_t downloadable_both_count = 0;
  std::int64_t structured_count = 0;

  // Self-assessment
  SelfAssessmentCounts sa_counts;
  std::vector<SelfAssessmentPoint> self_assessment_series;

  // Examples and illustrations
  ExampleCounts example_illustration_counts;
  AttractivenessCrossCounts attractiveness_cross_counts;

  // Community
  CreationTypeCounts creation_type_counts;
  std::map<std::int64_t, std::int64_t> contributor_histogram;  // contributors (>= 2) -> courses

  // Discoverability (sums to courses with a search observation)
  RankHistogram rank_histogram;

  bool operator==(const CorpusSummary&) const = default;
};

/// Folds assessments into corpus counts. Order-independent; series are
/// sorted by course id. Throws ArgumentError on empty input or mixed
/// observation years.
CorpusSummary summarize(std::span<const CourseAssessment> assessments);

/// Combines two partial summaries (associative and commutative).
CorpusSummary merge(const CorpusSummary& a, const CorpusSummary& b);

/// Rank bucket for an M10.1 value, or nullopt when unmeasured.
std::optional<std::string_view> rank_bucket(const MetricValue& m10);

/// Original languages grouped for reporting:
/// en, zh, es, ja, pt, de, then everything else as "others".
std::vector<std::pair<std::string, std::int64_t>> language_table(
    const std::map<std::string, std::int64_t>& histogram);

enum class ReportFormat { Csv, Json, Markdown };

template <>
struct EnumNames<ReportFormat> {
  static constexpr std::array<std::pair<ReportFormat, std::string_view>, 3> table{{
      {ReportFormat::Csv, "csv"},
      {ReportFormat::Json, "json"},
      {ReportFormat::Markdown, "md"},
  }};
};

void to_json(nlohmann::json& j, const CorpusSummary& s);
void from_json(const nlohmann::json& j, CorpusSummary& s);

/// Renders the summary. JSON is lossless; CSV holds one table per
/// histogram, each introduced by a `# table: <name>` line; Markdown has one
/// section per dimension.
std::string emit(const CorpusSummary& summary, ReportFormat format);

/// Parses the JSON emitted by emit(..., Json). Throws InputError.
CorpusSummary parse_summary_json(std::string_view text);

/// Plot-data files keyed by file name: formats.csv, sustainability.csv,
/// availability.csv, self_assessment.csv.
std::map<std::string, std::string> plot_data(const CorpusSummary& summary);

/// Writes summary.<ext> for each requested format plus the plot-data files.
void write_report(const CorpusSummary& summary, const std::filesystem::path& dir,
                  std::span<const ReportFormat> formats);

}  // namespace ocw
