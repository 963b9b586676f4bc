#pragma once

// Per-course quality metrics, one operation per dimension. Every operation is
// pure and reentrant; nothing here touches the network or the clock.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocwobs/model.hpp"

namespace ocw {

enum class Dimension { M1, M2, M3, M4, M5, M6, M7, M8, M9, M10 };

inline constexpr std::array<Dimension, 10> kAllDimensions{
    Dimension::M1, Dimension::M2, Dimension::M3, Dimension::M4, Dimension::M5,
    Dimension::M6, Dimension::M7, Dimension::M8, Dimension::M9, Dimension::M10};

/// "M1" ... "M10".
std::string_view dimension_code(Dimension d);
/// Human-readable dimension title, e.g. "Legal reusability".
std::string_view dimension_title(Dimension d);
std::optional<Dimension> dimension_from_code(std::string_view code);

/// Metric ids a DimensionResult for `d` must contain, in reporting order.
std::span<const std::string_view> metric_ids(Dimension d);

/// Top-level metric ids of the framework. Sub-metrics
/// (M1.3_BY, M6.4_2, ...) cover their parent id.
std::span<const std::string_view> overview_metric_ids();

struct DimensionResult {
  Dimension dimension = Dimension::M1;
  std::map<std::string, MetricValue> values;

  const MetricValue& at(std::string_view id) const;

  bool operator==(const DimensionResult&) const = default;
};

/// Descriptive per-course data carried alongside the metrics so corpus
/// reports can be folded from assessments alone.
struct CourseFacts {
  std::string title;
  std::string repository;
  std::optional<std::string> license_label;
  std::optional<SelfAssessmentPlacement> self_assessment_placement;
  std::int64_t example_total = 0;
  std::int64_t illustration_total = 0;
  std::int64_t unit_total = 0;
  std::vector<bool> probe_rounds_up;      // one entry per probe sample
  std::vector<double> revision_recency;  // years before t_obs, per revision

  bool operator==(const CourseFacts&) const = default;
};

struct CourseAssessment {
  std::string course_id;
  Date observation_date;
  std::array<DimensionResult, 10> results;
  bool is_open_license = false;
  CourseFacts facts;

  const DimensionResult& result(Dimension d) const {
    return results[static_cast<std::size_t>(d)];
  }
  const MetricValue& metric(std::string_view id) const;

  bool operator==(const CourseAssessment&) const = default;
};

// ---------------------------------------------------------------------------
// Dimension operations

struct LegalAssessment {
  DimensionResult result;
  bool is_open = false;
};

/// Open in the Open Definition sense: a license exists and neither the
/// non-commercial nor the no-derivatives condition is known to apply.
/// Unspecified conditions do not count as permissive.
bool is_open_license(const LicenseDescriptor& license);

LegalAssessment assess_legal(const LicenseDescriptor& license);
DimensionResult assess_multilinguality(const CourseRecord& record);
DimensionResult assess_format(const CourseRecord& record);

/// Throws ArgumentError if `t_obs` predates `last_updated` or a unit update.
DimensionResult assess_recency(const CourseRecord& record, const Date& t_obs);

/// M5.1: number of revisions, unmeasured when no history is published.
MetricValue revision_count(const RevisionHistory& history);

/// Regularity score from inter-revision gaps: max(0, 1 - sigma/mu) with the
/// population standard deviation. Exactly 1 iff all gaps are equal.
/// Requires at least two gaps with a positive mean.
double regularity_from_gaps(std::span<const double> gaps);

/// M5.2: regularity over revision gaps measured in calendar years.
/// Unmeasured with fewer than three revisions.
MetricValue regularity(const RevisionHistory& history);

struct RevisionRecency {
  MetricValue average_recency;  // mean years between each revision and t_obs
  MetricValue dispersion;       // variance of revision positions on [0, 1]
};

/// M5.3 under both readings. Throws ArgumentError if t_obs precedes the last
/// revision.
RevisionRecency revision_recency(const RevisionHistory& history, const Date& t_obs);

DimensionResult assess_sustainability(const RevisionHistory& history, const Date& t_obs);
DimensionResult assess_availability(const CourseRecord& record);
DimensionResult assess_self_assessment(const CourseRecord& record);
DimensionResult assess_examples(const CourseRecord& record);
DimensionResult assess_community(const CourseRecord& record);

/// M10.1 from an optional search observation (absent => unmeasured).
DimensionResult assess_discoverability(const std::optional<SearchObservation>& observation);

/// Objective attractiveness band for an illustrations-per-unit ratio:
/// low below 0.5, medium below 1.0, high from 1.0.
AttractivenessLevel objective_attractiveness(double illustrations_per_unit);

/// Runs all ten dimension operations. Throws ArgumentError if the record
/// fails validation or if t_obs precedes dated information in the record.
CourseAssessment assess(const CourseRecord& record, const Date& t_obs);

}  // namespace ocw
