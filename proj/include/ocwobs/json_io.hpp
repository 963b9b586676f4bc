#pragma once

// JSON (de)serialization for course records and metric values. Field names
// follow the record types in lower_snake_case; absent optionals are omitted.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ocwobs/metrics.hpp"
#include "ocwobs/model.hpp"

namespace ocw {

using json = nlohmann::json;

void to_json(json& j, const Date& d);
void from_json(const json& j, Date& d);

void to_json(json& j, const LicenseDescriptor& v);
void from_json(const json& j, LicenseDescriptor& v);
void to_json(json& j, const TranslationEntry& v);
void from_json(const json& j, TranslationEntry& v);
void to_json(json& j, const FormatEntry& v);
void from_json(const json& j, FormatEntry& v);
void to_json(json& j, const ModuleEntry& v);
void from_json(const json& j, ModuleEntry& v);
void to_json(json& j, const UnitUpdate& v);
void from_json(const json& j, UnitUpdate& v);
void to_json(json& j, const RevisionHistory& v);
void from_json(const json& j, RevisionHistory& v);
void to_json(json& j, const ProbeSample& v);
void from_json(const json& j, ProbeSample& v);
void to_json(json& j, const ProbeLog& v);
void from_json(const json& j, ProbeLog& v);
void to_json(json& j, const QueryRank& v);
void from_json(const json& j, QueryRank& v);
void to_json(json& j, const SearchObservation& v);
void from_json(const json& j, SearchObservation& v);
void to_json(json& j, const CommunityInfo& v);
void from_json(const json& j, CommunityInfo& v);
void to_json(json& j, const CourseRecord& v);
void from_json(const json& j, CourseRecord& v);
void to_json(json& j, const Violation& v);

void to_json(json& j, const MetricValue& v);
MetricValue metric_value_from_json(const json& j);

void to_json(json& j, const CourseAssessment& v);
void from_json(const json& j, CourseAssessment& v);

/// Parses one JSON Lines record. Throws InputError on malformed JSON,
/// missing required fields, wrong types, or unknown enum names.
CourseRecord parse_course_line(std::string_view line);

/// Single-line JSON encoding of a record (no trailing newline).
std::string serialize_course(const CourseRecord& record);

}  // namespace ocw
