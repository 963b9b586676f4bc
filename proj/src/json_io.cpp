#include "ocwobs/json_io.hpp"

#include "ocwobs/errors.hpp"

namespace ocw {

namespace {

const json& required(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw InputError(std::string("missing required field '") + key + "'");
  }
  return *it;
}

template <typename T>
void read_required(const json& j, const char* key, T& out) {
  required(j, key).get_to(out);
}

template <typename T>
void read_optional(const json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it != j.end() && !it->is_null()) it->get_to(out);
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
  } else {
    out = it->get<T>();
  }
}

template <typename T>
void write_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename E>
E read_enum(const json& j, const char* what) {
  const auto& name = j.get_ref<const std::string&>();
  auto value = enum_from_name<E>(name);
  if (!value) {
    throw InputError(std::string("unknown ") + what + " '" + name + "'");
  }
  return *value;
}

template <typename E>
void read_enum_field(const json& j, const char* key, E& out) {
  auto it = j.find(key);
  if (it != j.end() && !it->is_null()) out = read_enum<E>(*it, key);
}

template <typename E>
void read_enum_field(const json& j, const char* key, std::optional<E>& out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
  } else {
    out = read_enum<E>(*it, key);
  }
}

template <typename E>
json enum_json(E value) {
  return std::string(enum_name(value));
}

json tri_json(TriState t) {
  switch (t) {
    case TriState::True:
      return true;
    case TriState::False:
      return false;
    case TriState::Unspecified:
      break;
  }
  return "unspecified";
}

TriState tri_from_json(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return TriState::Unspecified;
  if (it->is_boolean()) return it->get<bool>() ? TriState::True : TriState::False;
  return read_enum<TriState>(*it, key);
}

}  // namespace

void to_json(json& j, const Date& d) { j = d.to_string(); }
void from_json(const json& j, Date& d) { d = Date::parse(j.get_ref<const std::string&>()); }

void to_json(json& j, const LicenseDescriptor& v) {
  j = json{{"present", v.present},
           {"human_readable", v.human_readable},
           {"by", tri_json(v.by)},
           {"sa", tri_json(v.sa)},
           {"nc", tri_json(v.nc)},
           {"nd", tri_json(v.nd)},
           {"machine_readable_indication", v.machine_readable_indication},
           {"machine_readable_description", v.machine_readable_description}};
  write_optional(j, "label", v.label);
}

void from_json(const json& j, LicenseDescriptor& v) {
  v = {};
  read_required(j, "present", v.present);
  read_optional(j, "human_readable", v.human_readable);
  v.by = tri_from_json(j, "by");
  v.sa = tri_from_json(j, "sa");
  v.nc = tri_from_json(j, "nc");
  v.nd = tri_from_json(j, "nd");
  read_optional(j, "machine_readable_indication", v.machine_readable_indication);
  read_optional(j, "machine_readable_description", v.machine_readable_description);
  read_optional(j, "label", v.label);
}

void to_json(json& j, const TranslationEntry& v) {
  j = json{{"language", v.language}, {"state", enum_json(v.state)}};
}

void from_json(const json& j, TranslationEntry& v) {
  v = {};
  read_required(j, "language", v.language);
  read_enum_field(j, "state", v.state);
}

void to_json(json& j, const FormatEntry& v) {
  j = json{{"format", v.format.name()},
           {"reusable", v.reusable},
           {"reuse_function", enum_json(v.reuse_function)},
           {"downloadable_whole", v.downloadable_whole},
           {"downloadable_parts", v.downloadable_parts},
           {"viewer_all_os", v.viewer_all_os},
           {"lossless_all_os", v.lossless_all_os},
           {"free_viewer_all_os", v.free_viewer_all_os},
           {"structured_granularity", v.structured_granularity}};
  write_optional(j, "closed_captions", v.closed_captions);
}

void from_json(const json& j, FormatEntry& v) {
  v = {};
  v.format = CourseFormat::from_name(required(j, "format").get_ref<const std::string&>());
  read_optional(j, "reusable", v.reusable);
  read_enum_field(j, "reuse_function", v.reuse_function);
  read_optional(j, "downloadable_whole", v.downloadable_whole);
  read_optional(j, "downloadable_parts", v.downloadable_parts);
  read_optional(j, "viewer_all_os", v.viewer_all_os);
  read_optional(j, "lossless_all_os", v.lossless_all_os);
  read_optional(j, "free_viewer_all_os", v.free_viewer_all_os);
  read_optional(j, "structured_granularity", v.structured_granularity);
  read_optional(j, "closed_captions", v.closed_captions);
}

void to_json(json& j, const ModuleEntry& v) {
  j = json{{"title", v.title},
           {"unit_count", v.unit_count},
           {"sa_count", v.sa_count},
           {"sa_with_solutions_count", v.sa_with_solutions_count},
           {"example_count", v.example_count},
           {"illustration_count", v.illustration_count}};
}

void from_json(const json& j, ModuleEntry& v) {
  v = {};
  read_optional(j, "title", v.title);
  read_required(j, "unit_count", v.unit_count);
  read_optional(j, "sa_count", v.sa_count);
  read_optional(j, "sa_with_solutions_count", v.sa_with_solutions_count);
  read_optional(j, "example_count", v.example_count);
  read_optional(j, "illustration_count", v.illustration_count);
}

void to_json(json& j, const UnitUpdate& v) {
  j = json{{"module_index", v.module_index}, {"unit_index", v.unit_index}, {"year", v.year}};
}

void from_json(const json& j, UnitUpdate& v) {
  read_required(j, "module_index", v.module_index);
  read_required(j, "unit_index", v.unit_index);
  read_required(j, "year", v.year);
}

void to_json(json& j, const RevisionHistory& v) {
  j = json{{"available", v.available}, {"timestamps", v.timestamps}};
}

void from_json(const json& j, RevisionHistory& v) {
  v = {};
  read_required(j, "available", v.available);
  read_optional(j, "timestamps", v.timestamps);
}

void to_json(json& j, const ProbeSample& v) {
  j = json{{"timestamp", format_timestamp(v.timestamp)}, {"server_up", v.server_up}};
  write_optional(j, "material_present", v.material_present);
}

void from_json(const json& j, ProbeSample& v) {
  v = {};
  v.timestamp = parse_timestamp(required(j, "timestamp").get_ref<const std::string&>());
  read_required(j, "server_up", v.server_up);
  read_optional(j, "material_present", v.material_present);
}

void to_json(json& j, const ProbeLog& v) { j = json{{"samples", v.samples}}; }

void from_json(const json& j, ProbeLog& v) {
  v = {};
  read_required(j, "samples", v.samples);
}

void to_json(json& j, const QueryRank& v) {
  j = json{{"query", v.query}};
  switch (v.status) {
    case RankStatus::Found:
      j["rank"] = v.rank;
      break;
    case RankStatus::NotInTop:
      j["rank"] = "not-in-top-100";
      break;
    case RankStatus::Unmeasured:
      j["rank"] = "unmeasured";
      j["error"] = v.error;
      break;
  }
}

void from_json(const json& j, QueryRank& v) {
  v = {};
  read_required(j, "query", v.query);
  const auto& rank = required(j, "rank");
  if (rank.is_number_integer()) {
    v.status = RankStatus::Found;
    v.rank = rank.get<int>();
  } else if (rank == "not-in-top-100") {
    v.status = RankStatus::NotInTop;
  } else if (rank == "unmeasured") {
    v.status = RankStatus::Unmeasured;
    read_optional(j, "error", v.error);
  } else {
    throw InputError("invalid rank value " + rank.dump());
  }
}

void to_json(json& j, const SearchObservation& v) {
  j = json{{"queries", v.queries}, {"cutoff", v.cutoff}};
}

void from_json(const json& j, SearchObservation& v) {
  v = {};
  read_required(j, "queries", v.queries);
  read_optional(j, "cutoff", v.cutoff);
}

void to_json(json& j, const CommunityInfo& v) {
  j = json{{"creation_type", enum_json(v.creation_type)}};
  write_optional(j, "contributor_count", v.contributor_count);
  write_optional(j, "user_count", v.user_count);
  write_optional(j, "comment_count", v.comment_count);
  write_optional(j, "download_count", v.download_count);
}

void from_json(const json& j, CommunityInfo& v) {
  v = {};
  read_enum_field(j, "creation_type", v.creation_type);
  read_optional(j, "contributor_count", v.contributor_count);
  read_optional(j, "user_count", v.user_count);
  read_optional(j, "comment_count", v.comment_count);
  read_optional(j, "download_count", v.download_count);
}

void to_json(json& j, const CourseRecord& v) {
  j = json{{"id", v.id},
           {"title", v.title},
           {"repository", v.repository},
           {"url", v.url},
           {"link_broken", v.link_broken},
           {"original_language", v.original_language},
           {"translations", v.translations},
           {"license", v.license},
           {"formats", v.formats},
           {"modules", v.modules}};
  write_optional(j, "last_updated", v.last_updated);
  write_optional(j, "unit_update_years", v.unit_update_years);
  j["revisions"] = v.revisions;
  j["community"] = v.community;
  write_optional(j, "probe_log", v.probe_log);
  write_optional(j, "search_observation", v.search_observation);
  if (v.attractiveness_annotation) {
    j["attractiveness_annotation"] = enum_json(*v.attractiveness_annotation);
  }
  if (v.self_assessment_placement) {
    j["self_assessment_placement"] = enum_json(*v.self_assessment_placement);
  }
}

void from_json(const json& j, CourseRecord& v) {
  v = {};
  read_required(j, "id", v.id);
  read_required(j, "title", v.title);
  read_optional(j, "repository", v.repository);
  read_required(j, "url", v.url);
  read_optional(j, "link_broken", v.link_broken);
  read_required(j, "original_language", v.original_language);
  read_optional(j, "translations", v.translations);
  read_required(j, "license", v.license);
  read_required(j, "formats", v.formats);
  read_required(j, "modules", v.modules);
  read_optional(j, "last_updated", v.last_updated);
  read_optional(j, "unit_update_years", v.unit_update_years);
  read_required(j, "revisions", v.revisions);
  read_required(j, "community", v.community);
  read_optional(j, "probe_log", v.probe_log);
  read_optional(j, "search_observation", v.search_observation);
  read_enum_field(j, "attractiveness_annotation", v.attractiveness_annotation);
  read_enum_field(j, "self_assessment_placement", v.self_assessment_placement);
}

void to_json(json& j, const Violation& v) { j = json{{"field", v.field}, {"rule", v.rule}}; }

void to_json(json& j, const MetricValue& v) {
  j = json{{"type", v.kind()}};
  std::visit(
      [&j](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          j["value"] = x;
        } else if constexpr (std::is_same_v<T, TriState>) {
          j["value"] = tri_json(x);
        } else if constexpr (std::is_same_v<T, Ratio>) {
          j["value"] = x.value();
        } else if constexpr (std::is_same_v<T, LabelList> || std::is_same_v<T, RealList>) {
          j["value"] = x.values;
        } else if constexpr (std::is_same_v<T, AboveCutoff>) {
          j["cutoff"] = x.cutoff;
        } else if constexpr (std::is_same_v<T, Unmeasured>) {
          j["reason"] = x.reason;
        } else {
          j["value"] = x.value;
        }
      },
      v.storage());
}

MetricValue metric_value_from_json(const json& j) {
  const auto& type = required(j, "type").get_ref<const std::string&>();
  if (type == "unmeasured") return Unmeasured{required(j, "reason").get<std::string>()};
  if (type == "above-cutoff") return AboveCutoff{required(j, "cutoff").get<int>()};
  const auto& value = required(j, "value");
  if (type == "boolean") return value.get<bool>();
  if (type == "tri-state") return tri_from_json(j, "value");
  if (type == "count") return Count{value.get<std::int64_t>()};
  if (type == "ratio") return Ratio{value.get<double>()};
  if (type == "real") return Real{value.get<double>()};
  if (type == "label") return Label{value.get<std::string>()};
  if (type == "year") return Year{value.get<int>()};
  if (type == "labels") return LabelList{value.get<std::vector<std::string>>()};
  if (type == "reals") return RealList{value.get<std::vector<double>>()};
  throw InputError("unknown metric value type '" + type + "'");
}

CourseRecord parse_course_line(std::string_view line) {
  try {
    return json::parse(line).get<CourseRecord>();
  } catch (const json::exception& e) {
    throw InputError(e.what());
  }
}

std::string serialize_course(const CourseRecord& record) { return json(record).dump(); }

}  // namespace ocw

namespace ocw {

void to_json(json& j, const CourseAssessment& v) {
  json results = json::object();
  for (const auto& r : v.results) {
    json metrics = json::object();
    for (const auto& [id, value] : r.values) metrics[id] = value;
    results[std::string(dimension_code(r.dimension))] = std::move(metrics);
  }
  const auto& f = v.facts;
  json facts{{"title", f.title},
             {"repository", f.repository},
             {"example_total", f.example_total},
             {"illustration_total", f.illustration_total},
             {"unit_total", f.unit_total},
             {"probe_rounds_up", f.probe_rounds_up},
             {"revision_recency", f.revision_recency}};
  write_optional(facts, "license_label", f.license_label);
  if (f.self_assessment_placement) {
    facts["self_assessment_placement"] = enum_json(*f.self_assessment_placement);
  }
  j = json{{"course_id", v.course_id},
           {"observation_date", v.observation_date},
           {"is_open_license", v.is_open_license},
           {"results", std::move(results)},
           {"facts", std::move(facts)}};
}

void from_json(const json& j, CourseAssessment& v) {
  v = {};
  read_required(j, "course_id", v.course_id);
  read_required(j, "observation_date", v.observation_date);
  read_required(j, "is_open_license", v.is_open_license);
  const auto& results = required(j, "results");
  for (auto d : kAllDimensions) {
    auto& r = v.results[static_cast<std::size_t>(d)];
    r.dimension = d;
    const auto& metrics = required(results, std::string(dimension_code(d)).c_str());
    for (auto it = metrics.begin(); it != metrics.end(); ++it) {
      r.values.insert_or_assign(it.key(), metric_value_from_json(it.value()));
    }
  }
  const auto& f = required(j, "facts");
  auto& facts = v.facts;
  read_optional(f, "title", facts.title);
  read_optional(f, "repository", facts.repository);
  read_optional(f, "license_label", facts.license_label);
  read_enum_field(f, "self_assessment_placement", facts.self_assessment_placement);
  read_optional(f, "example_total", facts.example_total);
  read_optional(f, "illustration_total", facts.illustration_total);
  read_optional(f, "unit_total", facts.unit_total);
  read_optional(f, "probe_rounds_up", facts.probe_rounds_up);
  read_optional(f, "revision_recency", facts.revision_recency);
}

}  // namespace ocw
