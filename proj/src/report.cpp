#include "ocwobs/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ocwobs/errors.hpp"

namespace ocw {

using nlohmann::json;

namespace {

bool is_true(const MetricValue& v) {
  const auto* b = v.get<bool>();
  return b && *b;
}

bool is_tri_true(const MetricValue& v) {
  const auto* t = v.get<TriState>();
  return t && *t == TriState::True;
}

bool has_label(const MetricValue& v, std::string_view label) {
  const auto* list = v.get<LabelList>();
  return list && std::find(list->values.begin(), list->values.end(), label) != list->values.end();
}

Band band_of(std::optional<AttractivenessLevel> level) {
  if (!level) return Band::Unmeasured;
  switch (*level) {
    case AttractivenessLevel::Low: return Band::Low;
    case AttractivenessLevel::Medium: return Band::Medium;
    case AttractivenessLevel::High: return Band::High;
  }
  return Band::Unmeasured;
}

template <typename K>
void add_into(std::map<K, std::int64_t>& into, const std::map<K, std::int64_t>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

void sort_series(CorpusSummary& s) {
  std::sort(s.sustainability_series.begin(), s.sustainability_series.end(),
            [](const auto& a, const auto& b) { return a.course_id < b.course_id; });
  std::sort(s.self_assessment_series.begin(), s.self_assessment_series.end(),
            [](const auto& a, const auto& b) { return a.course_id < b.course_id; });
}

void add_course(CorpusSummary& s, const CourseAssessment& a) {
  const auto& f = a.facts;
  ++s.course_count;

  // M1
  if (is_true(a.metric("M1.1"))) ++s.licensed_count;
  if (a.is_open_license) ++s.open_license_count;
  ++s.license_label_histogram[f.license_label.value_or("(none)")];
  if (is_tri_true(a.metric("M1.3_NC"))) ++s.nc_count;
  if (is_tri_true(a.metric("M1.3_ND"))) ++s.nd_count;
  if (is_true(a.metric("M1.2"))) ++s.human_readable_license_count;
  if (is_true(a.metric("M1.4"))) ++s.machine_readable_license_count;

  // M2
  if (const auto* lang = a.metric("M2.1").get<Label>()) {
    ++s.language_histogram[lang->value];
    if (lang->value != "en") ++s.non_english_count;
  }
  if (is_true(a.metric("M2.2"))) ++s.translated_count;

  // M3
  if (is_true(a.metric("M3.2"))) ++s.repurposeable_count;
  if (has_label(a.metric("M3.3"), "direct-edit")) ++s.direct_edit_count;
  if (const auto* formats = a.metric("M3.1").get<LabelList>()) {
    const bool pdf = has_label(a.metric("M3.1"), "pdf");
    std::vector<std::string> distinct = formats->values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const auto& name : distinct) {
      auto& fc = s.format_histogram[name];
      ++fc.courses;
      if (pdf) ++fc.also_pdf;
    }
  }

  // M4
  if (const auto* age = a.metric("M4.2").get<Count>()) {
    ++s.recency_histogram[s.observation_year - static_cast<int>(age->value)];
    if (age->value == 0) ++s.updated_in_observation_year;
    if (age->value <= 2) ++s.updated_within_three_years;
  } else {
    ++s.unknown_update_count;
  }
  if (a.metric("M4.1").measured()) ++s.unit_recency_count;

  // M5
  if (a.metric("M5.1").measured()) {
    ++s.revision_history_count;
    std::optional<double> reg;
    if (const auto* r = a.metric("M5.2").get<Ratio>()) {
      reg = r->value();
      if (r->value() == 1.0) ++s.regular_revision_count;
    }
    if (!f.revision_recency.empty()) {
      s.sustainability_series.push_back({a.course_id, f.revision_recency, reg});
    }
  }

  // M6
  if (a.metric("M6.1").measured()) ++s.probed_count;
  if (s.availability_round_counts.size() < f.probe_rounds_up.size()) {
    s.availability_round_counts.resize(f.probe_rounds_up.size());
  }
  for (std::size_t i = 0; i < f.probe_rounds_up.size(); ++i) {
    auto& rc = s.availability_round_counts[i];
    if (f.probe_rounds_up[i]) {
      ++rc.up;
    } else {
      ++rc.down;
    }
  }
  if (has_label(a.metric("M3.1"), "video")) ++s.closed_caption_counts.video_courses;
  if (is_true(a.metric("M6.2_1"))) ++s.closed_caption_counts.with_captions;
  const bool whole = is_true(a.metric("M6.3_1"));
  const bool parts = is_true(a.metric("M6.3_2"));
  if (whole) ++s.downloadable_whole_count;
  if (parts) ++s.downloadable_parts_count;
  if (whole && parts) ++s.downloadable_both_count;
  if (is_true(a.metric("M6.5_1"))) ++s.structured_count;

  // M7
  if (is_true(a.metric("M7.1"))) {
    ++s.sa_counts.with_self_assessment;
    if (f.self_assessment_placement == SelfAssessmentPlacement::Separate) ++s.sa_counts.separate;
    if (f.self_assessment_placement == SelfAssessmentPlacement::Inline) ++s.sa_counts.inline_content;
    const auto* mean_objects = a.metric("M7.2").get<Real>();
    const auto* coverage = a.metric("M7.3").get<Ratio>();
    if (mean_objects && coverage) {
      s.self_assessment_series.push_back({a.course_id, mean_objects->value, coverage->value()});
    }
  }
  if (is_true(a.metric("M7.Sol.1"))) ++s.sa_counts.with_solutions;

  // M8
  if (f.example_total >= 1 && f.illustration_total >= 1) {
    ++s.example_illustration_counts.with_example_and_illustration;
  }
  if (f.example_total > 50) ++s.example_illustration_counts.more_than_50_examples;
  std::optional<AttractivenessLevel> subjective;
  if (const auto* l = a.metric("M8.3_2").get<Label>()) {
    subjective = enum_from_name<AttractivenessLevel>(l->value);
  }
  std::optional<AttractivenessLevel> objective;
  if (const auto* r = a.metric("M8.3_1").get<Real>()) objective = objective_attractiveness(r->value);
  ++s.attractiveness_cross_counts.at(band_of(subjective), band_of(objective));

  // M9
  const auto* creation = a.metric("M9.1").get<Label>();
  if (creation && creation->value == "single-author") {
    ++s.creation_type_counts.single_author;
  } else if (creation && creation->value == "collaborative") {
    ++s.creation_type_counts.collaborative;
  } else {
    ++s.creation_type_counts.unknown;
  }
  if (const auto* c = a.metric("M9.2").get<Count>(); c && c->value >= 2) {
    ++s.contributor_histogram[c->value];
  }

  // M10
  if (auto bucket = rank_bucket(a.metric("M10.1"))) {
    auto& h = s.rank_histogram;
    if (*bucket == "rank1") ++h.rank1;
    else if (*bucket == "rank2") ++h.rank2;
    else if (*bucket == "rank3") ++h.rank3;
    else if (*bucket == "rank4to100") ++h.rank4to100;
    else ++h.above100;
  }
}

// CSV ------------------------------------------------------------------------

std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt_real(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

class CsvDoc {
 public:
  void table(std::string_view name, std::initializer_list<std::string_view> header) {
    if (!first_) os_ << '\n';
    first_ = false;
    os_ << "# table: " << name << '\n';
    row(std::vector<std::string>(header.begin(), header.end()));
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << csv_field(cells[i]);
    }
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
  bool first_ = true;
};

std::string n(std::int64_t v) { return std::to_string(v); }

std::string pct(std::int64_t part, std::int64_t whole) {
  if (whole == 0) return "-";
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(0);
  os << 100.0 * static_cast<double>(part) / static_cast<double>(whole) << "%";
  return os.str();
}

std::vector<std::pair<std::string, std::int64_t>> scalar_counts(const CorpusSummary& s) {
  return {
      {"course_count", s.course_count},
      {"observation_year", s.observation_year},
      {"licensed_count", s.licensed_count},
      {"open_license_count", s.open_license_count},
      {"nc_count", s.nc_count},
      {"nd_count", s.nd_count},
      {"human_readable_license_count", s.human_readable_license_count},
      {"machine_readable_license_count", s.machine_readable_license_count},
      {"non_english_count", s.non_english_count},
      {"translated_count", s.translated_count},
      {"repurposeable_count", s.repurposeable_count},
      {"direct_edit_count", s.direct_edit_count},
      {"updated_in_observation_year", s.updated_in_observation_year},
      {"updated_within_three_years", s.updated_within_three_years},
      {"unknown_update_count", s.unknown_update_count},
      {"unit_recency_count", s.unit_recency_count},
      {"revision_history_count", s.revision_history_count},
      {"regular_revision_count", s.regular_revision_count},
      {"probed_count", s.probed_count},
      {"closed_captions_with", s.closed_caption_counts.with_captions},
      {"closed_captions_video_courses", s.closed_caption_counts.video_courses},
      {"downloadable_whole_count", s.downloadable_whole_count},
      {"downloadable_parts_count", s.downloadable_parts_count},
      {"downloadable_both_count", s.downloadable_both_count},
      {"structured_count", s.structured_count},
      {"sa_with_self_assessment", s.sa_counts.with_self_assessment},
      {"sa_separate", s.sa_counts.separate},
      {"sa_inline", s.sa_counts.inline_content},
      {"sa_with_solutions", s.sa_counts.with_solutions},
      {"with_example_and_illustration", s.example_illustration_counts.with_example_and_illustration},
      {"more_than_50_examples", s.example_illustration_counts.more_than_50_examples},
      {"subjective_low", s.attractiveness_cross_counts.subjective_total(Band::Low)},
      {"objective_low", s.attractiveness_cross_counts.objective_total(Band::Low)},
      {"both_high", s.attractiveness_cross_counts.both_high()},
      {"single_author", s.creation_type_counts.single_author},
      {"collaborative", s.creation_type_counts.collaborative},
      {"creation_unknown", s.creation_type_counts.unknown},
  };
}

std::vector<std::pair<std::string, std::int64_t>> rank_rows(const RankHistogram& h) {
  return {{"rank1", h.rank1},
          {"rank2", h.rank2},
          {"rank3", h.rank3},
          {"rank4to100", h.rank4to100},
          {"above100", h.above100}};
}

std::string emit_csv(const CorpusSummary& s) {
  CsvDoc doc;
  doc.table("counts", {"metric", "value"});
  for (const auto& [k, v] : scalar_counts(s)) doc.row({k, n(v)});

  doc.table("license_labels", {"license", "courses"});
  for (const auto& [k, v] : s.license_label_histogram) doc.row({k, n(v)});

  doc.table("languages", {"language", "courses"});
  for (const auto& [k, v] : language_table(s.language_histogram)) doc.row({k, n(v)});

  doc.table("original_languages", {"language", "courses"});
  for (const auto& [k, v] : s.language_histogram) doc.row({k, n(v)});

  doc.table("formats", {"format", "courses", "also_pdf"});
  for (const auto& [k, v] : s.format_histogram) doc.row({k, n(v.courses), n(v.also_pdf)});

  doc.table("last_update_years", {"year", "courses"});
  for (const auto& [k, v] : s.recency_histogram) doc.row({std::to_string(k), n(v)});

  doc.table("availability_rounds", {"round", "up", "down"});
  for (std::size_t i = 0; i < s.availability_round_counts.size(); ++i) {
    const auto& rc = s.availability_round_counts[i];
    doc.row({std::to_string(i + 1), n(rc.up), n(rc.down)});
  }

  doc.table("attractiveness", {"subjective", "objective", "courses"});
  for (const auto& [sb, sname] : EnumNames<Band>::table) {
    for (const auto& [ob, oname] : EnumNames<Band>::table) {
      doc.row({std::string(sname), std::string(oname), n(s.attractiveness_cross_counts.at(sb, ob))});
    }
  }

  doc.table("contributors", {"contributors", "courses"});
  for (const auto& [k, v] : s.contributor_histogram) doc.row({n(k), n(v)});

  doc.table("rank_histogram", {"bucket", "courses"});
  for (const auto& [k, v] : rank_rows(s.rank_histogram)) doc.row({k, n(v)});
  return doc.str();
}

// Markdown --------------------------------------------------------------------

class MdDoc {
 public:
  void heading(Dimension d) {
    os_ << "\n## " << dimension_code(d) << ". " << dimension_title(d) << "\n\n";
  }
  void line(std::string_view text) { os_ << text << '\n'; }
  void bullet(std::string_view label, std::int64_t v, std::int64_t whole) {
    os_ << "- " << label << ": " << v << " (" << pct(v, whole) << ")\n";
  }
  void table(std::initializer_list<std::string_view> header) {
    os_ << '\n' << '|';
    for (auto h : header) os_ << ' ' << h << " |";
    os_ << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) os_ << "---|";
    os_ << '\n';
  }
  void row(const std::vector<std::string>& cells) {
    os_ << '|';
    for (const auto& c : cells) os_ << ' ' << c << " |";
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::string emit_markdown(const CorpusSummary& s) {
  const auto total = s.course_count;
  MdDoc md;
  md.line("# Course quality summary");
  md.line("");
  md.line("Courses: " + n(total) + ", observation year " + std::to_string(s.observation_year) + ".");

  md.heading(Dimension::M1);
  md.bullet("licensed", s.licensed_count, total);
  md.bullet("open license", s.open_license_count, total);
  md.bullet("non-commercial clause", s.nc_count, total);
  md.bullet("no-derivatives clause", s.nd_count, total);
  md.bullet("human-readable license", s.human_readable_license_count, total);
  md.bullet("machine-readable license", s.machine_readable_license_count, total);
  md.table({"license", "courses"});
  for (const auto& [k, v] : s.license_label_histogram) md.row({k, n(v)});

  md.heading(Dimension::M2);
  md.bullet("not in English", s.non_english_count, total);
  md.bullet("translated", s.translated_count, total);
  md.table({"language", "courses"});
  for (const auto& [k, v] : language_table(s.language_histogram)) md.row({k, n(v)});

  md.heading(Dimension::M3);
  md.bullet("re-purposeable", s.repurposeable_count, total);
  md.bullet("direct-edit", s.direct_edit_count, total);
  md.table({"format", "courses", "also PDF"});
  for (const auto& [k, v] : s.format_histogram) md.row({k, n(v.courses), n(v.also_pdf)});

  md.heading(Dimension::M4);
  md.bullet("updated in " + std::to_string(s.observation_year), s.updated_in_observation_year, total);
  md.bullet("updated within three years", s.updated_within_three_years, total);
  md.bullet("update date unknown", s.unknown_update_count, total);
  md.bullet("unit-level update dates", s.unit_recency_count, total);
  md.table({"last update", "courses"});
  for (const auto& [k, v] : s.recency_histogram) md.row({std::to_string(k), n(v)});

  md.heading(Dimension::M5);
  md.bullet("revision history available", s.revision_history_count, total);
  md.bullet("perfectly regular revisions", s.regular_revision_count, total);
  md.table({"course", "revisions", "regularity"});
  for (const auto& series : s.sustainability_series) {
    md.row({series.course_id, std::to_string(series.recency.size()),
            series.regularity ? fmt_real(*series.regularity) : "-"});
  }

  md.heading(Dimension::M6);
  md.bullet("probed", s.probed_count, total);
  md.bullet("videos with closed captions", s.closed_caption_counts.with_captions,
            s.closed_caption_counts.video_courses);
  md.bullet("downloadable as a whole", s.downloadable_whole_count, total);
  md.bullet("downloadable in parts", s.downloadable_parts_count, total);
  md.bullet("downloadable both ways", s.downloadable_both_count, total);
  md.bullet("structured granularity", s.structured_count, total);
  md.table({"round", "up", "down"});
  for (std::size_t i = 0; i < s.availability_round_counts.size(); ++i) {
    const auto& rc = s.availability_round_counts[i];
    md.row({std::to_string(i + 1), n(rc.up), n(rc.down)});
  }

  md.heading(Dimension::M7);
  md.bullet("with self-assessment", s.sa_counts.with_self_assessment, total);
  md.bullet("separate documents", s.sa_counts.separate, s.sa_counts.with_self_assessment);
  md.bullet("inline with content", s.sa_counts.inline_content, s.sa_counts.with_self_assessment);
  md.bullet("with solutions", s.sa_counts.with_solutions, total);

  md.heading(Dimension::M8);
  md.bullet("at least one example and illustration",
            s.example_illustration_counts.with_example_and_illustration, total);
  md.bullet("more than 50 examples", s.example_illustration_counts.more_than_50_examples, total);
  const auto& ac = s.attractiveness_cross_counts;
  md.bullet("low subjective attractiveness", ac.subjective_total(Band::Low), total);
  md.bullet("low illustration ratio", ac.objective_total(Band::Low), total);
  md.bullet("high on both", ac.both_high(), total);
  md.table({"subjective \\ objective", "low", "medium", "high", "unmeasured"});
  for (const auto& [sb, sname] : EnumNames<Band>::table) {
    std::vector<std::string> cells{std::string(sname)};
    for (const auto& [ob, oname] : EnumNames<Band>::table) cells.push_back(n(ac.at(sb, ob)));
    md.row(cells);
  }

  md.heading(Dimension::M9);
  md.bullet("single author", s.creation_type_counts.single_author, total);
  md.bullet("collaborative", s.creation_type_counts.collaborative, total);
  md.bullet("creation type unknown", s.creation_type_counts.unknown, total);
  md.table({"contributors", "courses"});
  for (const auto& [k, v] : s.contributor_histogram) md.row({n(k), n(v)});

  md.heading(Dimension::M10);
  md.table({"average rank", "courses"});
  for (const auto& [k, v] : rank_rows(s.rank_histogram)) md.row({k, n(v)});
  return md.str();
}

}  // namespace

std::int64_t AttractivenessCrossCounts::subjective_total(Band b) const {
  std::int64_t t = 0;
  for (auto v : cells[static_cast<std::size_t>(b)]) t += v;
  return t;
}

std::int64_t AttractivenessCrossCounts::objective_total(Band b) const {
  std::int64_t t = 0;
  for (const auto& row : cells) t += row[static_cast<std::size_t>(b)];
  return t;
}

std::optional<std::string_view> rank_bucket(const MetricValue& m10) {
  if (m10.get<AboveCutoff>()) return "above100";
  const auto* r = m10.get<Real>();
  if (!r) return std::nullopt;
  const double c = std::ceil(r->value);
  if (c <= 1.0) return "rank1";
  if (c <= 2.0) return "rank2";
  if (c <= 3.0) return "rank3";
  return "rank4to100";
}

std::vector<std::pair<std::string, std::int64_t>> language_table(
    const std::map<std::string, std::int64_t>& histogram) {
  static constexpr std::array<std::string_view, 6> kListed{"en", "zh", "es", "ja", "pt", "de"};
  std::vector<std::pair<std::string, std::int64_t>> out;
  std::int64_t others = 0;
  for (auto code : kListed) {
    auto it = histogram.find(std::string(code));
    out.emplace_back(code, it == histogram.end() ? 0 : it->second);
  }
  for (const auto& [code, count] : histogram) {
    if (std::find(kListed.begin(), kListed.end(), code) == kListed.end()) others += count;
  }
  out.emplace_back("others", others);
  return out;
}

CorpusSummary summarize(std::span<const CourseAssessment> assessments) {
  if (assessments.empty()) throw ArgumentError("cannot summarize an empty corpus");
  CorpusSummary s;
  s.observation_year = assessments.front().observation_date.year();
  for (const auto& a : assessments) {
    if (a.observation_date.year() != s.observation_year) {
      throw ArgumentError("assessments mix observation years");
    }
    add_course(s, a);
  }
  sort_series(s);
  return s;
}

CorpusSummary merge(const CorpusSummary& a, const CorpusSummary& b) {
  if (a.course_count == 0) return b;
  if (b.course_count == 0) return a;
  if (a.observation_year != b.observation_year) {
    throw ArgumentError("summaries have different observation years");
  }
  CorpusSummary s = a;
  s.course_count += b.course_count;
  s.licensed_count += b.licensed_count;
  s.open_license_count += b.open_license_count;
  add_into(s.license_label_histogram, b.license_label_histogram);
  s.nc_count += b.nc_count;
  s.nd_count += b.nd_count;
  s.human_readable_license_count += b.human_readable_license_count;
  s.machine_readable_license_count += b.machine_readable_license_count;

  add_into(s.language_histogram, b.language_histogram);
  s.non_english_count += b.non_english_count;
  s.translated_count += b.translated_count;

  s.repurposeable_count += b.repurposeable_count;
  s.direct_edit_count += b.direct_edit_count;
  for (const auto& [k, v] : b.format_histogram) {
    s.format_histogram[k].courses += v.courses;
    s.format_histogram[k].also_pdf += v.also_pdf;
  }

  add_into(s.recency_histogram, b.recency_histogram);
  s.updated_in_observation_year += b.updated_in_observation_year;
  s.updated_within_three_years += b.updated_within_three_years;
  s.unknown_update_count += b.unknown_update_count;
  s.unit_recency_count += b.unit_recency_count;

  s.revision_history_count += b.revision_history_count;
  s.regular_revision_count += b.regular_revision_count;
  s.sustainability_series.insert(s.sustainability_series.end(), b.sustainability_series.begin(),
                                 b.sustainability_series.end());

  s.probed_count += b.probed_count;
  if (s.availability_round_counts.size() < b.availability_round_counts.size()) {
    s.availability_round_counts.resize(b.availability_round_counts.size());
  }
  for (std::size_t i = 0; i < b.availability_round_counts.size(); ++i) {
    s.availability_round_counts[i].up += b.availability_round_counts[i].up;
    s.availability_round_counts[i].down += b.availability_round_counts[i].down;
  }
  s.closed_caption_counts.with_captions += b.closed_caption_counts.with_captions;
  s.closed_caption_counts.video_courses += b.closed_caption_counts.video_courses;
  s.downloadable_whole_count += b.downloadable_whole_count;
  s.downloadable_parts_count += b.downloadable_parts_count;
  s.downloadable_both_count += b.downloadable_both_count;
  s.structured_count += b.structured_count;

  s.sa_counts.with_self_assessment += b.sa_counts.with_self_assessment;
  s.sa_counts.separate += b.sa_counts.separate;
  s.sa_counts.inline_content += b.sa_counts.inline_content;
  s.sa_counts.with_solutions += b.sa_counts.with_solutions;
  s.self_assessment_series.insert(s.self_assessment_series.end(), b.self_assessment_series.begin(),
                                  b.self_assessment_series.end());

  s.example_illustration_counts.with_example_and_illustration +=
      b.example_illustration_counts.with_example_and_illustration;
  s.example_illustration_counts.more_than_50_examples +=
      b.example_illustration_counts.more_than_50_examples;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      s.attractiveness_cross_counts.cells[i][j] += b.attractiveness_cross_counts.cells[i][j];
    }
  }

  s.creation_type_counts.single_author += b.creation_type_counts.single_author;
  s.creation_type_counts.collaborative += b.creation_type_counts.collaborative;
  s.creation_type_counts.unknown += b.creation_type_counts.unknown;
  add_into(s.contributor_histogram, b.contributor_histogram);

  s.rank_histogram.rank1 += b.rank_histogram.rank1;
  s.rank_histogram.rank2 += b.rank_histogram.rank2;
  s.rank_histogram.rank3 += b.rank_histogram.rank3;
  s.rank_histogram.rank4to100 += b.rank_histogram.rank4to100;
  s.rank_histogram.above100 += b.rank_histogram.above100;

  sort_series(s);
  return s;
}

// JSON ------------------------------------------------------------------------

namespace {

template <typename K>
json keyed_counts(const std::map<K, std::int64_t>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) {
    if constexpr (std::is_same_v<K, std::string>) {
      j[k] = v;
    } else {
      j[std::to_string(k)] = v;
    }
  }
  return j;
}

template <typename K>
std::map<K, std::int64_t> keyed_counts_from(const json& j) {
  std::map<K, std::int64_t> m;
  for (const auto& [k, v] : j.items()) {
    if constexpr (std::is_same_v<K, std::string>) {
      m[k] = v.template get<std::int64_t>();
    } else {
      m[static_cast<K>(std::stoll(k))] = v.template get<std::int64_t>();
    }
  }
  return m;
}

}  // namespace

void to_json(json& j, const CorpusSummary& s) {
  j = json::object();
  for (const auto& [k, v] : scalar_counts(s)) {
    // derived totals are recomputed from the cross table on read
    if (k == "subjective_low" || k == "objective_low" || k == "both_high") continue;
    j["counts"][k] = v;
  }
  j["license_label_histogram"] = keyed_counts(s.license_label_histogram);
  j["language_histogram"] = keyed_counts(s.language_histogram);

  j["format_histogram"] = json::object();
  for (const auto& [k, v] : s.format_histogram) {
    j["format_histogram"][k] = {{"courses", v.courses}, {"also_pdf", v.also_pdf}};
  }
  j["recency_histogram"] = keyed_counts(s.recency_histogram);

  j["sustainability_series"] = json::array();
  for (const auto& series : s.sustainability_series) {
    json e{{"course_id", series.course_id}, {"recency", series.recency}};
    if (series.regularity) e["regularity"] = *series.regularity;
    j["sustainability_series"].push_back(std::move(e));
  }

  j["availability_round_counts"] = json::array();
  for (const auto& rc : s.availability_round_counts) {
    j["availability_round_counts"].push_back({{"up", rc.up}, {"down", rc.down}});
  }

  j["self_assessment_series"] = json::array();
  for (const auto& p : s.self_assessment_series) {
    j["self_assessment_series"].push_back(
        {{"course_id", p.course_id}, {"mean_objects", p.mean_objects}, {"coverage", p.coverage}});
  }

  json cross = json::object();
  for (const auto& [sb, sname] : EnumNames<Band>::table) {
    for (const auto& [ob, oname] : EnumNames<Band>::table) {
      cross[std::string(sname)][std::string(oname)] = s.attractiveness_cross_counts.at(sb, ob);
    }
  }
  j["attractiveness_cross_counts"] = std::move(cross);
  j["contributor_histogram"] = keyed_counts(s.contributor_histogram);

  json ranks = json::object();
  for (const auto& [k, v] : rank_rows(s.rank_histogram)) ranks[k] = v;
  j["rank_histogram"] = std::move(ranks);
}

void from_json(const json& j, CorpusSummary& s) {
  s = CorpusSummary{};
  const auto& c = j.at("counts");
  auto get = [&](const char* key) { return c.at(key).get<std::int64_t>(); };
  s.course_count = get("course_count");
  s.observation_year = static_cast<int>(get("observation_year"));
  s.licensed_count = get("licensed_count");
  s.open_license_count = get("open_license_count");
  s.nc_count = get("nc_count");
  s.nd_count = get("nd_count");
  s.human_readable_license_count = get("human_readable_license_count");
  s.machine_readable_license_count = get("machine_readable_license_count");
  s.non_english_count = get("non_english_count");
  s.translated_count = get("translated_count");
  s.repurposeable_count = get("repurposeable_count");
  s.direct_edit_count = get("direct_edit_count");
  s.updated_in_observation_year = get("updated_in_observation_year");
  s.updated_within_three_years = get("updated_within_three_years");
  s.unknown_update_count = get("unknown_update_count");
  s.unit_recency_count = get("unit_recency_count");
  s.revision_history_count = get("revision_history_count");
  s.regular_revision_count = get("regular_revision_count");
  s.probed_count = get("probed_count");
  s.closed_caption_counts.with_captions = get("closed_captions_with");
  s.closed_caption_counts.video_courses = get("closed_captions_video_courses");
  s.downloadable_whole_count = get("downloadable_whole_count");
  s.downloadable_parts_count = get("downloadable_parts_count");
  s.downloadable_both_count = get("downloadable_both_count");
  s.structured_count = get("structured_count");
  s.sa_counts.with_self_assessment = get("sa_with_self_assessment");
  s.sa_counts.separate = get("sa_separate");
  s.sa_counts.inline_content = get("sa_inline");
  s.sa_counts.with_solutions = get("sa_with_solutions");
  s.example_illustration_counts.with_example_and_illustration =
      get("with_example_and_illustration");
  s.example_illustration_counts.more_than_50_examples = get("more_than_50_examples");
  s.creation_type_counts.single_author = get("single_author");
  s.creation_type_counts.collaborative = get("collaborative");
  s.creation_type_counts.unknown = get("creation_unknown");

  s.license_label_histogram = keyed_counts_from<std::string>(j.at("license_label_histogram"));
  s.language_histogram = keyed_counts_from<std::string>(j.at("language_histogram"));
  for (const auto& [k, v] : j.at("format_histogram").items()) {
    s.format_histogram[k] = {v.at("courses").get<std::int64_t>(), v.at("also_pdf").get<std::int64_t>()};
  }
  s.recency_histogram = keyed_counts_from<int>(j.at("recency_histogram"));

  for (const auto& e : j.at("sustainability_series")) {
    SustainabilitySeries series{e.at("course_id").get<std::string>(),
                                e.at("recency").get<std::vector<double>>(), std::nullopt};
    if (e.contains("regularity")) series.regularity = e.at("regularity").get<double>();
    s.sustainability_series.push_back(std::move(series));
  }
  for (const auto& e : j.at("availability_round_counts")) {
    s.availability_round_counts.push_back(
        {e.at("up").get<std::int64_t>(), e.at("down").get<std::int64_t>()});
  }
  for (const auto& e : j.at("self_assessment_series")) {
    s.self_assessment_series.push_back({e.at("course_id").get<std::string>(),
                                        e.at("mean_objects").get<double>(),
                                        e.at("coverage").get<double>()});
  }
  const auto& cross = j.at("attractiveness_cross_counts");
  for (const auto& [sb, sname] : EnumNames<Band>::table) {
    for (const auto& [ob, oname] : EnumNames<Band>::table) {
      s.attractiveness_cross_counts.at(sb, ob) =
          cross.at(std::string(sname)).at(std::string(oname)).get<std::int64_t>();
    }
  }
  s.contributor_histogram = keyed_counts_from<std::int64_t>(j.at("contributor_histogram"));

  const auto& r = j.at("rank_histogram");
  s.rank_histogram = {r.at("rank1").get<std::int64_t>(), r.at("rank2").get<std::int64_t>(),
                      r.at("rank3").get<std::int64_t>(), r.at("rank4to100").get<std::int64_t>(),
                      r.at("above100").get<std::int64_t>()};
}

std::string emit(const CorpusSummary& summary, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return emit_csv(summary);
    case ReportFormat::Json: return json(summary).dump(2) + "\n";
    case ReportFormat::Markdown: return emit_markdown(summary);
  }
  return {};
}

CorpusSummary parse_summary_json(std::string_view text) {
  try {
    return json::parse(text).get<CorpusSummary>();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed summary: ") + e.what());
  }
}

std::map<std::string, std::string> plot_data(const CorpusSummary& s) {
  std::map<std::string, std::string> out;
  {
    std::ostringstream os;
    os << "format,courses,also_pdf\n";
    for (const auto& [k, v] : s.format_histogram) {
      os << csv_field(k) << ',' << v.courses << ',' << v.also_pdf << '\n';
    }
    out["formats.csv"] = os.str();
  }
  {
    std::ostringstream os;
    os << "course_id,revision,years_before_observation,regularity\n";
    for (const auto& series : s.sustainability_series) {
      for (std::size_t i = 0; i < series.recency.size(); ++i) {
        os << csv_field(series.course_id) << ',' << i + 1 << ',' << fmt_real(series.recency[i])
           << ',' << (series.regularity ? fmt_real(*series.regularity) : "") << '\n';
      }
    }
    out["sustainability.csv"] = os.str();
  }
  {
    std::ostringstream os;
    os << "round,up,down\n";
    for (std::size_t i = 0; i < s.availability_round_counts.size(); ++i) {
      os << i + 1 << ',' << s.availability_round_counts[i].up << ','
         << s.availability_round_counts[i].down << '\n';
    }
    out["availability.csv"] = os.str();
  }
  {
    std::ostringstream os;
    os << "course_id,mean_objects_per_module,module_coverage\n";
    for (const auto& p : s.self_assessment_series) {
      os << csv_field(p.course_id) << ',' << fmt_real(p.mean_objects) << ',' << fmt_real(p.coverage)
         << '\n';
    }
    out["self_assessment.csv"] = os.str();
  }
  return out;
}

void write_report(const CorpusSummary& summary, const std::filesystem::path& dir,
                  std::span<const ReportFormat> formats) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw InputError("cannot write " + (dir / name).string());
    out << text;
  };
  for (auto f : formats) write("summary." + std::string(enum_name(f)), emit(summary, f));
  for (const auto& [name, text] : plot_data(summary)) write(name, text);
}

}  // namespace ocw
