#include "ocwobs/model.hpp"

#include <algorithm>
#include <cmath>

#include "ocwobs/errors.hpp"

namespace ocw {

CourseFormat CourseFormat::from_name(std::string_view name) {
  if (auto kind = enum_from_name<FormatKind>(name)) {
    return CourseFormat{*kind};
  }
  CourseFormat out;
  out.kind_ = FormatKind::Other;
  out.other_ = std::string(name);
  return out;
}

std::string CourseFormat::name() const {
  if (kind_ == FormatKind::Other) return other_.empty() ? "other" : other_;
  return std::string(enum_name(kind_));
}

namespace {

class Checker {
 public:
  void require(bool ok, std::string field, std::string rule) {
    if (!ok) out_.push_back({std::move(field), std::move(rule)});
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string at(std::string_view base, std::size_t i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

}  // namespace

std::vector<Violation> validate(const CourseRecord& r) {
  Checker c;
  c.require(!r.id.empty(), "id", "must be non-empty");
  c.require(!r.original_language.empty() && !has_space(r.original_language), "original_language",
            "must be a non-empty language code");

  for (std::size_t i = 0; i < r.translations.size(); ++i) {
    const auto& t = r.translations[i];
    const auto field = at("translations", i) + ".language";
    c.require(!t.language.empty() && !has_space(t.language), field,
              "must be a non-empty language code");
    c.require(t.language != r.original_language, field, "must differ from original_language");
  }

  const auto& lic = r.license;
  if (!lic.present) {
    const bool all_unspecified = lic.by == TriState::Unspecified &&
                                 lic.sa == TriState::Unspecified &&
                                 lic.nc == TriState::Unspecified && lic.nd == TriState::Unspecified;
    c.require(all_unspecified, "license", "conditions must be unspecified when no license is present");
    c.require(!lic.machine_readable_indication && !lic.machine_readable_description, "license",
              "machine-readable flags must be false when no license is present");
  }

  for (std::size_t i = 0; i < r.formats.size(); ++i) {
    const auto& f = r.formats[i];
    const auto base = at("formats", i);
    c.require((f.reuse_function == ReuseFunction::None) == !f.reusable, base + ".reuse_function",
              "must be none exactly when reusable is false");
    c.require(!f.closed_captions || f.format.kind() == FormatKind::Video, base + ".closed_captions",
              "only allowed for video");
    c.require(!f.format.name().empty(), base + ".format", "must be non-empty");
  }

  for (std::size_t i = 0; i < r.modules.size(); ++i) {
    const auto& m = r.modules[i];
    const auto base = at("modules", i);
    c.require(m.unit_count >= 0 && m.sa_count >= 0 && m.sa_with_solutions_count >= 0 &&
                  m.example_count >= 0 && m.illustration_count >= 0,
              base, "counts must be nonnegative");
    c.require(m.sa_with_solutions_count <= m.sa_count, base + ".sa_with_solutions_count",
              "must not exceed sa_count");
  }

  if (r.unit_update_years) {
    for (std::size_t i = 0; i < r.unit_update_years->size(); ++i) {
      const auto& u = (*r.unit_update_years)[i];
      const auto base = at("unit_update_years", i);
      c.require(u.module_index >= 0 && static_cast<std::size_t>(u.module_index) < r.modules.size(),
                base + ".module_index", "must index into modules");
      c.require(u.unit_index >= 0, base + ".unit_index", "must be nonnegative");
    }
  }

  const auto& rev = r.revisions;
  c.require(rev.available || rev.timestamps.empty(), "revisions.timestamps",
            "must be empty when revisions are unavailable");
  c.require(std::adjacent_find(rev.timestamps.begin(), rev.timestamps.end(),
                               [](const Date& a, const Date& b) { return !(a < b); }) ==
                rev.timestamps.end(),
            "revisions.timestamps", "must be strictly ascending");

  if (r.probe_log) {
    const auto& s = r.probe_log->samples;
    c.require(std::is_sorted(s.begin(), s.end(),
                             [](const ProbeSample& a, const ProbeSample& b) {
                               return a.timestamp < b.timestamp;
                             }),
              "probe_log.samples", "timestamps must be ascending");
  }

  if (r.search_observation) {
    const auto& obs = *r.search_observation;
    c.require(obs.cutoff == kSearchCutoff, "search_observation.cutoff",
              "must be " + std::to_string(kSearchCutoff));
    for (std::size_t i = 0; i < obs.queries.size(); ++i) {
      const auto& q = obs.queries[i];
      if (q.status == RankStatus::Found) {
        c.require(q.rank >= 1 && q.rank <= obs.cutoff, at("search_observation.queries", i) + ".rank",
                  "must lie in [1, cutoff]");
      }
    }
  }

  const auto& com = r.community;
  for (const auto& [name, value] :
       {std::pair{"contributor_count", com.contributor_count}, {"user_count", com.user_count},
        {"comment_count", com.comment_count}, {"download_count", com.download_count}}) {
    c.require(!value || *value >= 0, std::string("community.") + name, "must be nonnegative");
  }
  if (com.creation_type == CreationType::SingleAuthor && com.contributor_count) {
    c.require(*com.contributor_count == 1, "community.contributor_count",
              "must equal 1 for single-author courses");
  }
  return c.take();
}

Ratio::Ratio(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ArgumentError("ratio " + std::to_string(value) + " outside [0, 1]");
  }
}

MetricValue::MetricValue(Unmeasured v) : v_(std::move(v)) {
  if (std::get<Unmeasured>(v_).reason.empty()) {
    throw ArgumentError("unmeasured metric values must carry a reason");
  }
}

std::optional<double> MetricValue::number() const {
  if (auto c = get<Count>()) return static_cast<double>(c->value);
  if (auto r = get<Ratio>()) return r->value();
  if (auto r = get<Real>()) return r->value;
  if (auto y = get<Year>()) return static_cast<double>(y->value);
  return std::nullopt;
}

std::string_view MetricValue::kind() const {
  static constexpr std::array<std::string_view, std::variant_size_v<Storage>> names{
      "boolean", "tri-state", "count", "ratio", "real", "label",
      "year", "labels", "reals", "above-cutoff", "unmeasured"};
  return names[v_.index()];
}

}  // namespace ocw
