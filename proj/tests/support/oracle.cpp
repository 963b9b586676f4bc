#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ocw::testing {

namespace {

bool any_format(const CourseRecord& r, bool FormatEntry::*flag) {
  for (const auto& f : r.formats) {
    if (f.*flag) return true;
  }
  return false;
}

bool offers(const CourseRecord& r, FormatKind kind) {
  for (const auto& f : r.formats) {
    if (f.format.kind() == kind) return true;
  }
  return false;
}

Band band(AttractivenessLevel l) { return static_cast<Band>(static_cast<int>(l)); }

}  // namespace

CorpusSummary brute_force_summary(const std::vector<CourseRecord>& records, const Date& t_obs) {
  CorpusSummary s;
  s.observation_year = t_obs.year();
  for (const auto& r : records) {
    ++s.course_count;
    const auto& l = r.license;
    if (l.present) ++s.licensed_count;
    if (l.present && l.nc == TriState::False && l.nd == TriState::False) ++s.open_license_count;
    ++s.license_label_histogram[l.label ? *l.label : "(none)"];
    if (l.present && l.nc == TriState::True) ++s.nc_count;
    if (l.present && l.nd == TriState::True) ++s.nd_count;
    if (l.present && l.human_readable) ++s.human_readable_license_count;
    if (l.present && l.machine_readable_indication) ++s.machine_readable_license_count;

    ++s.language_histogram[r.original_language];
    if (r.original_language != "en") ++s.non_english_count;
    if (!r.translations.empty()) ++s.translated_count;

    if (any_format(r, &FormatEntry::reusable)) ++s.repurposeable_count;
    if (std::any_of(r.formats.begin(), r.formats.end(),
                    [](const FormatEntry& f) { return f.reuse_function == ReuseFunction::DirectEdit; })) {
      ++s.direct_edit_count;
    }
    std::set<std::string> names;
    for (const auto& f : r.formats) names.insert(f.format.name());
    for (const auto& n : names) {
      ++s.format_histogram[n].courses;
      if (names.count("pdf")) ++s.format_histogram[n].also_pdf;
    }

    if (r.last_updated) {
      ++s.recency_histogram[*r.last_updated];
      if (*r.last_updated == t_obs.year()) ++s.updated_in_observation_year;
      if (t_obs.year() - *r.last_updated <= 2) ++s.updated_within_three_years;
    } else {
      ++s.unknown_update_count;
    }
    if (r.unit_update_years && !r.unit_update_years->empty()) ++s.unit_recency_count;

    if (r.revisions.available) {
      ++s.revision_history_count;
      const auto& ts = r.revisions.timestamps;
      std::optional<double> reg;
      if (ts.size() >= 3) {
        std::vector<double> gaps;
        for (std::size_t i = 1; i < ts.size(); ++i) gaps.push_back(years_between(ts[i - 1], ts[i]));
        const bool equal = std::all_of(gaps.begin(), gaps.end(), [&](double g) { return g == gaps[0]; });
        double mu = 0;
        for (double g : gaps) mu += g;
        mu /= static_cast<double>(gaps.size());
        double var = 0;
        for (double g : gaps) var += (g - mu) * (g - mu);
        var /= static_cast<double>(gaps.size());
        reg = equal ? 1.0 : std::max(0.0, 1.0 - std::sqrt(var) / mu);
        if (equal) ++s.regular_revision_count;
      }
      if (!ts.empty()) {
        SustainabilitySeries series{r.id, {}, reg};
        for (const auto& t : ts) series.recency.push_back(years_between(t, t_obs));
        s.sustainability_series.push_back(std::move(series));
      }
    }

    if (r.probe_log) {
      const auto& samples = r.probe_log->samples;
      if (!samples.empty()) ++s.probed_count;
      if (s.availability_round_counts.size() < samples.size()) {
        s.availability_round_counts.resize(samples.size());
      }
      for (std::size_t i = 0; i < samples.size(); ++i) {
        (samples[i].server_up ? s.availability_round_counts[i].up
                              : s.availability_round_counts[i].down)++;
      }
    }
    if (offers(r, FormatKind::Video)) ++s.closed_caption_counts.video_courses;
    if (std::any_of(r.formats.begin(), r.formats.end(), [](const FormatEntry& f) {
          return f.format.kind() == FormatKind::Video && f.closed_captions.value_or(false);
        })) {
      ++s.closed_caption_counts.with_captions;
    }
    const bool whole = any_format(r, &FormatEntry::downloadable_whole);
    const bool parts = any_format(r, &FormatEntry::downloadable_parts);
    s.downloadable_whole_count += whole;
    s.downloadable_parts_count += parts;
    s.downloadable_both_count += whole && parts;
    s.structured_count += any_format(r, &FormatEntry::structured_granularity);

    std::int64_t sa = 0, sol = 0, covered = 0, units = 0, examples = 0, illustrations = 0;
    for (const auto& m : r.modules) {
      sa += m.sa_count;
      sol += m.sa_with_solutions_count;
      covered += m.sa_count >= 1;
      units += m.unit_count;
      examples += m.example_count;
      illustrations += m.illustration_count;
    }
    if (sa > 0) {
      ++s.sa_counts.with_self_assessment;
      if (r.self_assessment_placement == SelfAssessmentPlacement::Separate) ++s.sa_counts.separate;
      if (r.self_assessment_placement == SelfAssessmentPlacement::Inline) ++s.sa_counts.inline_content;
      const double nm = static_cast<double>(r.modules.size());
      s.self_assessment_series.push_back(
          {r.id, static_cast<double>(sa) / nm, static_cast<double>(covered) / nm});
    }
    if (sol > 0) ++s.sa_counts.with_solutions;

    if (examples >= 1 && illustrations >= 1) ++s.example_illustration_counts.with_example_and_illustration;
    if (examples > 50) ++s.example_illustration_counts.more_than_50_examples;
    Band subjective = r.attractiveness_annotation ? band(*r.attractiveness_annotation) : Band::Unmeasured;
    Band objective = Band::Unmeasured;
    if (units > 0) {
      // twice the illustrations against the units avoids floating point
      if (illustrations >= units) {
        objective = Band::High;
      } else if (2 * illustrations >= units) {
        objective = Band::Medium;
      } else {
        objective = Band::Low;
      }
    }
    ++s.attractiveness_cross_counts.at(subjective, objective);

    switch (r.community.creation_type) {
      case CreationType::SingleAuthor: ++s.creation_type_counts.single_author; break;
      case CreationType::Collaborative: ++s.creation_type_counts.collaborative; break;
      case CreationType::Unknown: ++s.creation_type_counts.unknown; break;
    }
    if (r.community.contributor_count && *r.community.contributor_count >= 2) {
      ++s.contributor_histogram[*r.community.contributor_count];
    }

    if (r.search_observation) {
      int found = 0, sum = 0;
      bool ranked = false;
      for (const auto& q : r.search_observation->queries) {
        if (q.status == RankStatus::Found) {
          ++found;
          sum += q.rank;
        }
        ranked = ranked || q.status != RankStatus::Unmeasured;
      }
      auto& h = s.rank_histogram;
      if (found > 0) {
        // ceil(sum / found) in integers
        const int bucket = (sum + found - 1) / found;
        if (bucket == 1) ++h.rank1;
        else if (bucket == 2) ++h.rank2;
        else if (bucket == 3) ++h.rank3;
        else ++h.rank4to100;
      } else if (ranked) {
        ++h.above100;
      }
    }
  }
  auto by_id = [](const auto& a, const auto& b) { return a.course_id < b.course_id; };
  std::sort(s.sustainability_series.begin(), s.sustainability_series.end(), by_id);
  std::sort(s.self_assessment_series.begin(), s.self_assessment_series.end(), by_id);
  return s;
}

std::vector<std::string> summary_differences(const CorpusSummary& a, const CorpusSummary& b) {
  std::vector<std::string> out;
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-9; };

  if (a.sustainability_series.size() != b.sustainability_series.size()) {
    out.push_back("sustainability_series size");
  } else {
    for (std::size_t i = 0; i < a.sustainability_series.size(); ++i) {
      const auto& x = a.sustainability_series[i];
      const auto& y = b.sustainability_series[i];
      bool same = x.course_id == y.course_id && x.recency.size() == y.recency.size() &&
                  x.regularity.has_value() == y.regularity.has_value();
      for (std::size_t k = 0; same && k < x.recency.size(); ++k) same = close(x.recency[k], y.recency[k]);
      if (same && x.regularity) same = close(*x.regularity, *y.regularity);
      if (!same) out.push_back("sustainability_series[" + x.course_id + "]");
    }
  }
  if (a.self_assessment_series.size() != b.self_assessment_series.size()) {
    out.push_back("self_assessment_series size");
  } else {
    for (std::size_t i = 0; i < a.self_assessment_series.size(); ++i) {
      const auto& x = a.self_assessment_series[i];
      const auto& y = b.self_assessment_series[i];
      if (x.course_id != y.course_id || !close(x.mean_objects, y.mean_objects) ||
          !close(x.coverage, y.coverage)) {
        out.push_back("self_assessment_series[" + x.course_id + "]");
      }
    }
  }

  CorpusSummary x = a, y = b;
  x.sustainability_series.clear();
  y.sustainability_series.clear();
  x.self_assessment_series.clear();
  y.self_assessment_series.clear();
  if (x == y) return out;

  // Narrow down for the failure message.
  const auto jx = nlohmann::json(x);
  const auto jy = nlohmann::json(y);
  for (const auto& patch : nlohmann::json::diff(jx, jy)) out.push_back(patch.dump());
  return out;
}

}  // namespace ocw::testing
