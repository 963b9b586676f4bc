#include "ocwobs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ocwobs/errors.hpp"

namespace ocw {

namespace {

constexpr std::array<std::string_view, 8> kM1{"M1.1",    "M1.2",    "M1.3_BY", "M1.3_SA",
                                              "M1.3_NC", "M1.3_ND", "M1.4",    "M1.5"};
constexpr std::array<std::string_view, 4> kM2{"M2.1", "M2.2", "M2.3", "M2.4"};
constexpr std::array<std::string_view, 3> kM3{"M3.1", "M3.2", "M3.3"};
constexpr std::array<std::string_view, 4> kM4{"M4.1", "M4.1_1", "M4.1_2", "M4.2"};
constexpr std::array<std::string_view, 4> kM5{"M5.1", "M5.2", "M5.3", "M5.3_dispersion"};
constexpr std::array<std::string_view, 9> kM6{"M6.1",   "M6.2",   "M6.2_1", "M6.3_1", "M6.3_2",
                                              "M6.4_1", "M6.4_2", "M6.4_3", "M6.5_1"};
constexpr std::array<std::string_view, 5> kM7{"M7.1", "M7.2", "M7.3", "M7.Sol.1", "M7.Sol.2"};
constexpr std::array<std::string_view, 5> kM8{"M8.1", "M8.2", "M8.learnability", "M8.3_1",
                                              "M8.3_2"};
constexpr std::array<std::string_view, 5> kM9{"M9.1", "M9.2", "M9.3", "M9.4", "M9.5"};
constexpr std::array<std::string_view, 1> kM10{"M10.1"};

constexpr std::array<std::string_view, 36> kOverview{
    "M1.1", "M1.2", "M1.3", "M1.4", "M1.5", "M2.1",     "M2.2",     "M2.3", "M2.4",
    "M3.1", "M3.2", "M3.3", "M4.1", "M4.2", "M5.1",     "M5.2",     "M5.3", "M6.1",
    "M6.2", "M6.3", "M6.4", "M6.5", "M7.1", "M7.2",     "M7.3",     "M7.Sol.1",
    "M7.Sol.2",     "M8.1", "M8.2", "M8.3", "M9.1",     "M9.2",     "M9.3", "M9.4",
    "M9.5", "M10.1"};

struct DimensionInfo {
  std::string_view code;
  std::string_view title;
};

constexpr std::array<DimensionInfo, 10> kDimensions{{
    {"M1", "Legal reusability"},
    {"M2", "Multilinguality level"},
    {"M3", "Format re-purposeability"},
    {"M4", "Recency"},
    {"M5", "Sustainability"},
    {"M6", "Availability"},
    {"M7", "Learning by self-assessment"},
    {"M8", "Learning by examples and illustrations"},
    {"M9", "Community involvement"},
    {"M10", "Discoverability"},
}};

DimensionResult make_result(Dimension d) { return DimensionResult{d, {}}; }

void put(DimensionResult& r, std::string_view id, MetricValue v) {
  r.values.insert_or_assign(std::string(id), std::move(v));
}

MetricValue count_or_unmeasured(const std::optional<std::int64_t>& v, const char* reason) {
  if (v) return Count{*v};
  return MetricValue::unmeasured(reason);
}

double mean(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double population_variance(std::span<const double> xs) {
  const double mu = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - mu) * (x - mu);
  return acc / static_cast<double>(xs.size());
}

}  // namespace

std::string_view dimension_code(Dimension d) { return kDimensions[static_cast<std::size_t>(d)].code; }

std::string_view dimension_title(Dimension d) {
  return kDimensions[static_cast<std::size_t>(d)].title;
}

std::optional<Dimension> dimension_from_code(std::string_view code) {
  for (std::size_t i = 0; i < kDimensions.size(); ++i) {
    if (kDimensions[i].code == code) return static_cast<Dimension>(i);
  }
  return std::nullopt;
}

std::span<const std::string_view> metric_ids(Dimension d) {
  switch (d) {
    case Dimension::M1: return kM1;
    case Dimension::M2: return kM2;
    case Dimension::M3: return kM3;
    case Dimension::M4: return kM4;
    case Dimension::M5: return kM5;
    case Dimension::M6: return kM6;
    case Dimension::M7: return kM7;
    case Dimension::M8: return kM8;
    case Dimension::M9: return kM9;
    case Dimension::M10: return kM10;
  }
  return {};
}

std::span<const std::string_view> overview_metric_ids() { return kOverview; }

const MetricValue& DimensionResult::at(std::string_view id) const {
  auto it = values.find(std::string(id));
  if (it == values.end()) {
    throw ArgumentError("metric " + std::string(id) + " not in dimension " +
                        std::string(dimension_code(dimension)));
  }
  return it->second;
}

const MetricValue& CourseAssessment::metric(std::string_view id) const {
  const auto dot = id.find('.');
  auto d = dimension_from_code(id.substr(0, dot));
  if (!d) throw ArgumentError("unknown metric id " + std::string(id));
  return result(*d).at(id);
}

// ---------------------------------------------------------------------------
// M1

bool is_open_license(const LicenseDescriptor& license) {
  return license.present && license.nc == TriState::False && license.nd == TriState::False;
}

LegalAssessment assess_legal(const LicenseDescriptor& license) {
  LegalAssessment out{make_result(Dimension::M1), is_open_license(license)};
  auto& r = out.result;
  put(r, "M1.1", license.present);
  if (!license.present) {
    for (auto id : std::span(kM1).subspan(1)) put(r, id, MetricValue::unmeasured("no license"));
    return out;
  }
  put(r, "M1.2", license.human_readable);
  put(r, "M1.3_BY", license.by);
  put(r, "M1.3_SA", license.sa);
  put(r, "M1.3_NC", license.nc);
  put(r, "M1.3_ND", license.nd);
  put(r, "M1.4", license.machine_readable_indication);
  put(r, "M1.5", license.machine_readable_description);
  return out;
}

// ---------------------------------------------------------------------------
// M2

DimensionResult assess_multilinguality(const CourseRecord& record) {
  auto r = make_result(Dimension::M2);
  put(r, "M2.1", Label{record.original_language});
  put(r, "M2.2", !record.translations.empty());

  std::set<std::string> languages;
  for (const auto& t : record.translations) languages.insert(t.language);
  put(r, "M2.3", Count{static_cast<std::int64_t>(languages.size())});

  const bool any_state = std::any_of(
      record.translations.begin(), record.translations.end(),
      [](const TranslationEntry& t) { return t.state != TranslationState::Unspecified; });
  if (any_state) {
    LabelList states;
    for (const auto& t : record.translations) states.values.emplace_back(enum_name(t.state));
    put(r, "M2.4", std::move(states));
  } else {
    put(r, "M2.4", MetricValue::unmeasured("translation state not provided"));
  }
  return r;
}

// ---------------------------------------------------------------------------
// M3

DimensionResult assess_format(const CourseRecord& record) {
  auto r = make_result(Dimension::M3);
  if (record.formats.empty()) {
    for (auto id : kM3) put(r, id, MetricValue::unmeasured("no formats recorded"));
    return r;
  }
  LabelList names;
  bool reusable = false;
  std::set<ReuseFunction> functions;
  for (const auto& f : record.formats) {
    names.values.push_back(f.format.name());
    reusable = reusable || f.reusable;
    if (f.reuse_function != ReuseFunction::None) functions.insert(f.reuse_function);
  }
  LabelList fn_names;
  for (auto fn : functions) fn_names.values.emplace_back(enum_name(fn));
  put(r, "M3.1", std::move(names));
  put(r, "M3.2", reusable);
  put(r, "M3.3", std::move(fn_names));
  return r;
}

// ---------------------------------------------------------------------------
// M4

DimensionResult assess_recency(const CourseRecord& record, const Date& t_obs) {
  auto r = make_result(Dimension::M4);
  const int obs_year = t_obs.year();

  if (record.last_updated) {
    if (*record.last_updated > obs_year) {
      throw ArgumentError("observation year " + std::to_string(obs_year) +
                          " precedes last update " + std::to_string(*record.last_updated));
    }
    put(r, "M4.2", Count{obs_year - *record.last_updated});
  } else {
    put(r, "M4.2", MetricValue::unmeasured("last update not provided"));
  }

  if (!record.unit_update_years || record.unit_update_years->empty()) {
    for (auto id : {"M4.1", "M4.1_1", "M4.1_2"}) {
      put(r, id, MetricValue::unmeasured("unit update dates not provided"));
    }
    return r;
  }

  const auto& updates = *record.unit_update_years;
  std::vector<double> per_unit;
  std::map<std::int64_t, std::vector<double>> per_module;
  for (const auto& u : updates) {
    if (u.year > obs_year) {
      throw ArgumentError("observation year " + std::to_string(obs_year) +
                          " precedes unit update " + std::to_string(u.year));
    }
    const double age = static_cast<double>(obs_year - u.year);
    per_unit.push_back(age);
    per_module[u.module_index].push_back(age);
  }
  RealList module_means;
  for (const auto& [index, ages] : per_module) module_means.values.push_back(mean(ages));

  put(r, "M4.1", Real{mean(per_unit)});
  put(r, "M4.1_1", std::move(module_means));
  put(r, "M4.1_2", RealList{std::move(per_unit)});
  return r;
}

// ---------------------------------------------------------------------------
// M5

MetricValue revision_count(const RevisionHistory& history) {
  if (!history.available) return MetricValue::unmeasured("revision history not available");
  return Count{static_cast<std::int64_t>(history.timestamps.size())};
}

double regularity_from_gaps(std::span<const double> gaps) {
  if (gaps.size() < 2) throw ArgumentError("regularity needs at least two gaps");
  const double mu = mean(gaps);
  if (!(mu > 0.0)) throw ArgumentError("regularity needs a positive mean gap");
  if (std::all_of(gaps.begin(), gaps.end(), [&](double g) { return g == gaps.front(); })) {
    return 1.0;
  }
  const double score = std::max(0.0, 1.0 - std::sqrt(population_variance(gaps)) / mu);
  // Unequal gaps never score exactly 1, even when the deviation underflows.
  return score < 1.0 ? score : std::nextafter(1.0, 0.0);
}

MetricValue regularity(const RevisionHistory& history) {
  if (!history.available) return MetricValue::unmeasured("revision history not available");
  const auto& ts = history.timestamps;
  if (ts.size() < 3) return MetricValue::unmeasured("fewer than three revisions");
  std::vector<double> gaps;
  gaps.reserve(ts.size() - 1);
  for (std::size_t i = 1; i < ts.size(); ++i) gaps.push_back(years_between(ts[i - 1], ts[i]));
  return Ratio{regularity_from_gaps(gaps)};
}

RevisionRecency revision_recency(const RevisionHistory& history, const Date& t_obs) {
  if (!history.available) {
    return {MetricValue::unmeasured("revision history not available"),
            MetricValue::unmeasured("revision history not available")};
  }
  const auto& ts = history.timestamps;
  if (!ts.empty() && t_obs < ts.back()) {
    throw ArgumentError("observation date " + t_obs.to_string() + " precedes revision " +
                        ts.back().to_string());
  }
  RevisionRecency out{MetricValue::unmeasured("no revisions"),
                      MetricValue::unmeasured("fewer than two revisions")};
  if (ts.empty()) return out;

  std::vector<double> ages;
  for (const auto& t : ts) ages.push_back(years_between(t, t_obs));
  out.average_recency = Real{mean(ages)};

  if (ts.size() >= 2) {
    const double lifetime = years_between(ts.front(), ts.back());
    std::vector<double> positions;
    for (const auto& t : ts) positions.push_back(years_between(ts.front(), t) / lifetime);
    out.dispersion = Real{population_variance(positions)};
  }
  return out;
}

DimensionResult assess_sustainability(const RevisionHistory& history, const Date& t_obs) {
  auto r = make_result(Dimension::M5);
  auto recency = revision_recency(history, t_obs);
  put(r, "M5.1", revision_count(history));
  put(r, "M5.2", regularity(history));
  put(r, "M5.3", std::move(recency.average_recency));
  put(r, "M5.3_dispersion", std::move(recency.dispersion));
  return r;
}

// ---------------------------------------------------------------------------
// M6

DimensionResult assess_availability(const CourseRecord& record) {
  auto r = make_result(Dimension::M6);

  if (!record.probe_log) {
    put(r, "M6.1", MetricValue::unmeasured("no probe log"));
    put(r, "M6.2", MetricValue::unmeasured("no probe log"));
  } else if (record.probe_log->samples.empty()) {
    put(r, "M6.1", MetricValue::unmeasured("no probe samples"));
    put(r, "M6.2", MetricValue::unmeasured("no probe samples"));
  } else {
    const auto& samples = record.probe_log->samples;
    const auto up = std::count_if(samples.begin(), samples.end(),
                                  [](const ProbeSample& s) { return s.server_up; });
    put(r, "M6.1", Ratio{static_cast<double>(up) / static_cast<double>(samples.size())});

    bool any_known = false;
    bool all_present = true;
    for (const auto& s : samples) {
      if (!s.material_present) continue;
      any_known = true;
      all_present = all_present && *s.material_present;
    }
    if (any_known) {
      put(r, "M6.2", all_present);
    } else {
      put(r, "M6.2", MetricValue::unmeasured("material presence never observed"));
    }
  }

  const auto& formats = record.formats;
  bool has_video = false;
  std::optional<bool> captions;
  for (const auto& f : formats) {
    if (f.format.kind() != FormatKind::Video) continue;
    has_video = true;
    if (f.closed_captions) captions = captions.value_or(false) || *f.closed_captions;
  }
  if (!has_video) {
    put(r, "M6.2_1", MetricValue::unmeasured("no video format"));
  } else if (!captions) {
    put(r, "M6.2_1", MetricValue::unmeasured("closed captions not recorded"));
  } else {
    put(r, "M6.2_1", *captions);
  }

  if (formats.empty()) {
    for (auto id : {"M6.3_1", "M6.3_2", "M6.4_1", "M6.4_2", "M6.4_3", "M6.5_1"}) {
      put(r, id, MetricValue::unmeasured("no formats recorded"));
    }
    return r;
  }
  auto any = [&](bool FormatEntry::*flag) {
    return std::any_of(formats.begin(), formats.end(),
                       [flag](const FormatEntry& f) { return f.*flag; });
  };
  auto all = [&](bool FormatEntry::*flag) {
    return std::all_of(formats.begin(), formats.end(),
                       [flag](const FormatEntry& f) { return f.*flag; });
  };
  put(r, "M6.3_1", any(&FormatEntry::downloadable_whole));
  put(r, "M6.3_2", any(&FormatEntry::downloadable_parts));
  put(r, "M6.4_1", all(&FormatEntry::viewer_all_os));
  put(r, "M6.4_2", all(&FormatEntry::lossless_all_os));
  put(r, "M6.4_3", all(&FormatEntry::free_viewer_all_os));
  put(r, "M6.5_1", any(&FormatEntry::structured_granularity));
  return r;
}

// ---------------------------------------------------------------------------
// M7

DimensionResult assess_self_assessment(const CourseRecord& record) {
  auto r = make_result(Dimension::M7);
  std::int64_t total = 0;
  std::int64_t with_solutions = 0;
  std::int64_t covered = 0;
  for (const auto& m : record.modules) {
    total += m.sa_count;
    with_solutions += m.sa_with_solutions_count;
    if (m.sa_count >= 1) ++covered;
  }
  put(r, "M7.1", total > 0);
  put(r, "M7.Sol.1", with_solutions > 0);

  const auto modules = static_cast<std::int64_t>(record.modules.size());
  if (modules == 0) {
    for (auto id : {"M7.2", "M7.3", "M7.Sol.2"}) put(r, id, MetricValue::unmeasured("no modules"));
    return r;
  }
  const auto n = static_cast<double>(modules);
  put(r, "M7.2", Real{static_cast<double>(total) / n});
  put(r, "M7.3", Ratio{static_cast<double>(covered) / n});
  put(r, "M7.Sol.2", Real{static_cast<double>(with_solutions) / n});
  return r;
}

// ---------------------------------------------------------------------------
// M8

AttractivenessLevel objective_attractiveness(double illustrations_per_unit) {
  if (illustrations_per_unit >= 1.0) return AttractivenessLevel::High;
  if (illustrations_per_unit >= 0.5) return AttractivenessLevel::Medium;
  return AttractivenessLevel::Low;
}

DimensionResult assess_examples(const CourseRecord& record) {
  auto r = make_result(Dimension::M8);
  std::int64_t units = 0;
  std::int64_t examples = 0;
  std::int64_t illustrations = 0;
  for (const auto& m : record.modules) {
    units += m.unit_count;
    examples += m.example_count;
    illustrations += m.illustration_count;
  }
  if (units == 0) {
    for (auto id : {"M8.1", "M8.2", "M8.learnability", "M8.3_1"}) {
      put(r, id, MetricValue::unmeasured("no content units"));
    }
  } else {
    const double u = static_cast<double>(units);
    const double per_unit_examples = static_cast<double>(examples) / u;
    const double per_unit_illustrations = static_cast<double>(illustrations) / u;
    put(r, "M8.1", Real{per_unit_examples});
    put(r, "M8.2", Real{per_unit_illustrations});
    put(r, "M8.learnability", Real{per_unit_examples + per_unit_illustrations});
    put(r, "M8.3_1", Real{per_unit_illustrations});
  }
  if (record.attractiveness_annotation) {
    put(r, "M8.3_2", Label{std::string(enum_name(*record.attractiveness_annotation))});
  } else {
    put(r, "M8.3_2", MetricValue::unmeasured("no attractiveness annotation"));
  }
  return r;
}

// ---------------------------------------------------------------------------
// M9

DimensionResult assess_community(const CourseRecord& record) {
  auto r = make_result(Dimension::M9);
  const auto& c = record.community;
  if (c.creation_type == CreationType::Unknown) {
    put(r, "M9.1", MetricValue::unmeasured("creation type not provided"));
  } else {
    put(r, "M9.1", Label{std::string(enum_name(c.creation_type))});
  }
  put(r, "M9.2", count_or_unmeasured(c.contributor_count, "contributor count not provided"));
  put(r, "M9.3", count_or_unmeasured(c.user_count, "user count not provided"));
  put(r, "M9.4", count_or_unmeasured(c.comment_count, "comment count not provided"));
  put(r, "M9.5", count_or_unmeasured(c.download_count, "download count not provided"));
  return r;
}

// ---------------------------------------------------------------------------
// M10

DimensionResult assess_discoverability(const std::optional<SearchObservation>& observation) {
  auto r = make_result(Dimension::M10);
  if (!observation) {
    put(r, "M10.1", MetricValue::unmeasured("no search observation"));
    return r;
  }
  std::vector<double> ranks;
  bool any_ranked = false;
  for (const auto& q : observation->queries) {
    if (q.status == RankStatus::Found) ranks.push_back(q.rank);
    any_ranked = any_ranked || q.status != RankStatus::Unmeasured;
  }
  if (!ranks.empty()) {
    put(r, "M10.1", Real{mean(ranks)});
  } else if (any_ranked) {
    put(r, "M10.1", AboveCutoff{observation->cutoff});
  } else {
    put(r, "M10.1", MetricValue::unmeasured("no query could be ranked"));
  }
  return r;
}

// ---------------------------------------------------------------------------

CourseAssessment assess(const CourseRecord& record, const Date& t_obs) {
  const auto violations = validate(record);
  if (!violations.empty()) {
    throw ArgumentError("record '" + record.id + "' is invalid: " + violations.front().to_string());
  }

  CourseAssessment out;
  out.course_id = record.id;
  out.observation_date = t_obs;

  auto legal = assess_legal(record.license);
  out.is_open_license = legal.is_open;
  out.results[0] = std::move(legal.result);
  out.results[1] = assess_multilinguality(record);
  out.results[2] = assess_format(record);
  out.results[3] = assess_recency(record, t_obs);
  out.results[4] = assess_sustainability(record.revisions, t_obs);
  out.results[5] = assess_availability(record);
  out.results[6] = assess_self_assessment(record);
  out.results[7] = assess_examples(record);
  out.results[8] = assess_community(record);
  out.results[9] = assess_discoverability(record.search_observation);

  auto& facts = out.facts;
  facts.title = record.title;
  facts.repository = record.repository;
  facts.license_label = record.license.label;
  facts.self_assessment_placement = record.self_assessment_placement;
  for (const auto& m : record.modules) {
    facts.example_total += m.example_count;
    facts.illustration_total += m.illustration_count;
    facts.unit_total += m.unit_count;
  }
  if (record.probe_log) {
    for (const auto& s : record.probe_log->samples) facts.probe_rounds_up.push_back(s.server_up);
  }
  for (const auto& t : record.revisions.timestamps) {
    facts.revision_recency.push_back(years_between(t, t_obs));
  }
  return out;
}

}  // namespace ocw
