#pragma once

// Canonical domain types for course records and metric values.

#include <array>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ocwobs/date.hpp"

namespace ocw {

// ---------------------------------------------------------------------------
// Enumerations and their wire names

enum class TriState { False, True, Unspecified };

enum class TranslationState { AutomaticTranslation, Synchronized, ExpertRevised, Localized, Unspecified };

enum class FormatKind {
  Pdf,
  Html,
  Epub,
  PlainText,
  Xml,
  PowerPoint,
  Latex,
  Video,
  Audio,
  Interactive,
  Simulation,
  Other,
};

enum class ReuseFunction { DirectEdit, CopyPaste, None };

enum class CreationType { SingleAuthor, Collaborative, Unknown };

enum class AttractivenessLevel { Low, Medium, High };

/// Whether self-assessment material ships as separate documents or inline with
/// the content. Supplied by the data producer.
enum class SelfAssessmentPlacement { Separate, Inline };

template <typename E>
struct EnumNames;

template <>
struct EnumNames<TriState> {
  static constexpr std::array<std::pair<TriState, std::string_view>, 3> table{{
      {TriState::False, "false"},
      {TriState::True, "true"},
      {TriState::Unspecified, "unspecified"},
  }};
};

template <>
struct EnumNames<TranslationState> {
  static constexpr std::array<std::pair<TranslationState, std::string_view>, 5> table{{
      {TranslationState::AutomaticTranslation, "automatic-translation"},
      {TranslationState::Synchronized, "synchronized"},
      {TranslationState::ExpertRevised, "expert-revised"},
      {TranslationState::Localized, "localized"},
      {TranslationState::Unspecified, "unspecified"},
  }};
};

template <>
struct EnumNames<FormatKind> {
  static constexpr std::array<std::pair<FormatKind, std::string_view>, 11> table{{
      {FormatKind::Pdf, "pdf"},
      {FormatKind::Html, "html"},
      {FormatKind::Epub, "epub"},
      {FormatKind::PlainText, "plain-text"},
      {FormatKind::Xml, "xml"},
      {FormatKind::PowerPoint, "powerpoint"},
      {FormatKind::Latex, "latex"},
      {FormatKind::Video, "video"},
      {FormatKind::Audio, "audio"},
      {FormatKind::Interactive, "interactive"},
      {FormatKind::Simulation, "simulation"},
  }};
};

template <>
struct EnumNames<ReuseFunction> {
  static constexpr std::array<std::pair<ReuseFunction, std::string_view>, 3> table{{
      {ReuseFunction::DirectEdit, "direct-edit"},
      {ReuseFunction::CopyPaste, "copy-paste"},
      {ReuseFunction::None, "none"},
  }};
};

template <>
struct EnumNames<CreationType> {
  static constexpr std::array<std::pair<CreationType, std::string_view>, 3> table{{
      {CreationType::SingleAuthor, "single-author"},
      {CreationType::Collaborative, "collaborative"},
      {CreationType::Unknown, "unknown"},
  }};
};

template <>
struct EnumNames<AttractivenessLevel> {
  static constexpr std::array<std::pair<AttractivenessLevel, std::string_view>, 3> table{{
      {AttractivenessLevel::Low, "low"},
      {AttractivenessLevel::Medium, "medium"},
      {AttractivenessLevel::High, "high"},
  }};
};

template <>
struct EnumNames<SelfAssessmentPlacement> {
  static constexpr std::array<std::pair<SelfAssessmentPlacement, std::string_view>, 2> table{{
      {SelfAssessmentPlacement::Separate, "separate"},
      {SelfAssessmentPlacement::Inline, "inline"},
  }};
};

template <typename E>
constexpr std::string_view enum_name(E value) {
  for (const auto& [e, name] : EnumNames<E>::table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename E>
constexpr std::optional<E> enum_from_name(std::string_view name) {
  for (const auto& [e, n] : EnumNames<E>::table) {
    if (n == name) return e;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Course record

struct LicenseDescriptor {
  bool present = false;
  bool human_readable = false;
  TriState by = TriState::Unspecified;
  TriState sa = TriState::Unspecified;
  TriState nc = TriState::Unspecified;
  TriState nd = TriState::Unspecified;
  bool machine_readable_indication = false;
  bool machine_readable_description = false;
  std::optional<std::string> label;

  bool operator==(const LicenseDescriptor&) const = default;
};

struct TranslationEntry {
  std::string language;
  TranslationState state = TranslationState::Unspecified;

  bool operator==(const TranslationEntry&) const = default;
};

/// A delivery format. Known formats map onto FormatKind; anything else is
/// kept verbatim as FormatKind::Other.
class CourseFormat {
 public:
  CourseFormat() = default;
  CourseFormat(FormatKind kind) : kind_(kind) {}  // NOLINT(google-explicit-constructor)

  static CourseFormat from_name(std::string_view name);

  FormatKind kind() const { return kind_; }
  std::string name() const;

  bool operator==(const CourseFormat&) const = default;

 private:
  FormatKind kind_ = FormatKind::Other;
  std::string other_;
};

struct FormatEntry {
  CourseFormat format;
  bool reusable = false;
  ReuseFunction reuse_function = ReuseFunction::None;
  bool downloadable_whole = false;
  bool downloadable_parts = false;
  bool viewer_all_os = false;
  bool lossless_all_os = false;
  bool free_viewer_all_os = false;
  bool structured_granularity = false;
  std::optional<bool> closed_captions;

  bool operator==(const FormatEntry&) const = default;
};

struct ModuleEntry {
  std::string title;
  std::int64_t unit_count = 0;
  std::int64_t sa_count = 0;
  std::int64_t sa_with_solutions_count = 0;
  std::int64_t example_count = 0;
  std::int64_t illustration_count = 0;

  bool operator==(const ModuleEntry&) const = default;
};

struct UnitUpdate {
  std::int64_t module_index = 0;
  std::int64_t unit_index = 0;
  int year = 0;

  bool operator==(const UnitUpdate&) const = default;
};

struct RevisionHistory {
  bool available = false;
  std::vector<Date> timestamps;

  bool operator==(const RevisionHistory&) const = default;
};

struct ProbeSample {
  Timestamp timestamp{};
  bool server_up = false;
  std::optional<bool> material_present;

  bool operator==(const ProbeSample&) const = default;
};

struct ProbeLog {
  std::vector<ProbeSample> samples;

  bool operator==(const ProbeLog&) const = default;
};

enum class RankStatus { Found, NotInTop, Unmeasured };

/// Outcome of one discoverability query.
struct QueryRank {
  std::string query;
  RankStatus status = RankStatus::NotInTop;
  int rank = 0;       // 1-based; meaningful only when status == Found
  std::string error;  // provider failure text when status == Unmeasured

  static QueryRank found(std::string query, int rank) {
    return {std::move(query), RankStatus::Found, rank, {}};
  }
  static QueryRank not_found(std::string query) {
    return {std::move(query), RankStatus::NotInTop, 0, {}};
  }
  static QueryRank unmeasured(std::string query, std::string error) {
    return {std::move(query), RankStatus::Unmeasured, 0, std::move(error)};
  }

  bool operator==(const QueryRank&) const = default;
};

inline constexpr int kSearchCutoff = 100;

struct SearchObservation {
  std::vector<QueryRank> queries;
  int cutoff = kSearchCutoff;

  bool operator==(const SearchObservation&) const = default;
};

struct CommunityInfo {
  CreationType creation_type = CreationType::Unknown;
  std::optional<std::int64_t> contributor_count;
  std::optional<std::int64_t> user_count;
  std::optional<std::int64_t> comment_count;
  std::optional<std::int64_t> download_count;

  bool operator==(const CommunityInfo&) const = default;
};

struct CourseRecord {
  std::string id;
  std::string title;
  std::string repository;
  std::string url;
  bool link_broken = false;
  std::string original_language;
  std::vector<TranslationEntry> translations;
  LicenseDescriptor license;
  std::vector<FormatEntry> formats;
  std::vector<ModuleEntry> modules;
  std::optional<int> last_updated;
  std::optional<std::vector<UnitUpdate>> unit_update_years;
  RevisionHistory revisions;
  CommunityInfo community;
  std::optional<ProbeLog> probe_log;
  std::optional<SearchObservation> search_observation;
  std::optional<AttractivenessLevel> attractiveness_annotation;
  std::optional<SelfAssessmentPlacement> self_assessment_placement;

  bool operator==(const CourseRecord&) const = default;
};

/// One broken invariant: the offending field path and the rule it breaks.
struct Violation {
  std::string field;
  std::string rule;

  std::string to_string() const { return field + ": " + rule; }
  bool operator==(const Violation&) const = default;
};

/// Checks every record-level invariant. Pure; an empty result means valid.
/// Corpus-level id uniqueness is checked by ingest.
std::vector<Violation> validate(const CourseRecord& record);

// ---------------------------------------------------------------------------
// Metric values

struct Count {
  std::int64_t value = 0;
  bool operator==(const Count&) const = default;
};

/// A value in [0, 1]; construction outside that range throws ArgumentError.
class Ratio {
 public:
  explicit Ratio(double value);
  double value() const { return value_; }
  bool operator==(const Ratio&) const = default;

 private:
  double value_;
};

struct Real {
  double value = 0.0;
  bool operator==(const Real&) const = default;
};

struct Label {
  std::string value;
  bool operator==(const Label&) const = default;
};

struct Year {
  int value = 0;
  bool operator==(const Year&) const = default;
};

struct LabelList {
  std::vector<std::string> values;
  bool operator==(const LabelList&) const = default;
};

struct RealList {
  std::vector<double> values;
  bool operator==(const RealList&) const = default;
};

/// The course was not found within the first `cutoff` results of any query.
struct AboveCutoff {
  int cutoff = kSearchCutoff;
  bool operator==(const AboveCutoff&) const = default;
};

/// The information needed for the metric was not available.
struct Unmeasured {
  std::string reason;
  bool operator==(const Unmeasured&) const = default;
};

class MetricValue {
 public:
  using Storage = std::variant<bool, TriState, Count, Ratio, Real, Label, Year, LabelList, RealList,
                               AboveCutoff, Unmeasured>;

  template <std::same_as<bool> B>
  MetricValue(B v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  MetricValue(TriState v) : v_(v) {}  // NOLINT
  MetricValue(Count v) : v_(v) {}  // NOLINT
  MetricValue(Ratio v) : v_(v) {}  // NOLINT
  MetricValue(Real v) : v_(v) {}  // NOLINT
  MetricValue(Label v) : v_(std::move(v)) {}  // NOLINT
  MetricValue(Year v) : v_(v) {}  // NOLINT
  MetricValue(LabelList v) : v_(std::move(v)) {}  // NOLINT
  MetricValue(RealList v) : v_(std::move(v)) {}  // NOLINT
  MetricValue(AboveCutoff v) : v_(v) {}  // NOLINT
  MetricValue(Unmeasured v);  // NOLINT

  static MetricValue unmeasured(std::string reason) { return Unmeasured{std::move(reason)}; }

  bool measured() const { return !std::holds_alternative<Unmeasured>(v_); }

  template <typename T>
  const T* get() const {
    return std::get_if<T>(&v_);
  }

  /// Numeric view of Count, Ratio, Real and Year values.
  std::optional<double> number() const;

  /// Wire name of the held alternative ("boolean", "ratio", ...).
  std::string_view kind() const;

  const Storage& storage() const { return v_; }

  bool operator==(const MetricValue&) const = default;

 private:
  Storage v_;
};

}  // namespace ocw
