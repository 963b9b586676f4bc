#include "ocwobs/ingest.hpp"

#include <fstream>
#include <numeric>
#include <random>
#include <unordered_set>

#include "ocwobs/errors.hpp"
#include "ocwobs/json_io.hpp"

namespace ocw {

std::optional<DroppedCourse> cleanup_verdict(const CourseRecord& record) {
  if (auto violations = validate(record); !violations.empty()) {
    return DroppedCourse{record.id, DropReason::InvalidRecord, violations.front().to_string()};
  }
  if (record.url.empty() || record.link_broken) {
    return DroppedCourse{record.id, DropReason::BrokenLink,
                         record.url.empty() ? "empty url" : "link flagged broken"};
  }
  if (record.probe_log && !record.probe_log->samples.empty()) {
    const auto& samples = record.probe_log->samples;
    const bool all_missing = std::all_of(samples.begin(), samples.end(), [](const ProbeSample& s) {
      return s.material_present.has_value() && !*s.material_present;
    });
    if (all_missing) {
      return DroppedCourse{record.id, DropReason::EmptyMaterial, "material absent in every probe"};
    }
  }
  return std::nullopt;
}

LoadedCorpus load_corpus(std::istream& in) {
  LoadedCorpus out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    CourseRecord record;
    try {
      record = parse_course_line(line);
    } catch (const InputError& e) {
      // Salvage the id when the JSON itself is well-formed.
      std::string id = "line:" + std::to_string(line_no);
      auto doc = json::parse(line, nullptr, false);
      if (!doc.is_discarded() && doc.is_object() && doc.contains("id") && doc["id"].is_string() &&
          !doc["id"].get<std::string>().empty()) {
        id = doc["id"].get<std::string>();
      }
      out.report.dropped.push_back({std::move(id), DropReason::InvalidRecord, e.what()});
      continue;
    }

    if (!record.id.empty() && !seen.insert(record.id).second) {
      out.report.dropped.push_back({record.id, DropReason::InvalidRecord, "duplicate id"});
      continue;
    }
    if (auto verdict = cleanup_verdict(record)) {
      if (verdict->id.empty()) verdict->id = "line:" + std::to_string(line_no);
      out.report.dropped.push_back(std::move(*verdict));
      continue;
    }
    out.report.kept.push_back(record.id);
    out.records.push_back(std::move(record));
  }
  return out;
}

LoadedCorpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file '" + path.string() + "'");
  return load_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<CourseRecord>& records) {
  for (const auto& r : records) out << serialize_course(r) << '\n';
}

std::string cleanup_report_json(const CleanupReport& report) {
  json dropped = json::array();
  for (const auto& d : report.dropped) {
    dropped.push_back({{"id", d.id}, {"reason", enum_name(d.reason)}, {"detail", d.detail}});
  }
  return json{{"kept", report.kept}, {"dropped", std::move(dropped)}}.dump(2);
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ArgumentError("sample size must be positive");
  if (n > population) {
    throw ArgumentError("sample size " + std::to_string(n) + " exceeds population " +
                        std::to_string(population));
  }
  std::vector<std::size_t> idx(population);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first n slots end up a uniform n-subset in random order.
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, population - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(n);
  return idx;
}

std::vector<CourseRecord> sample(const std::vector<CourseRecord>& records, std::size_t n,
                                 std::uint64_t seed) {
  std::vector<CourseRecord> out;
  out.reserve(n);
  for (auto i : sample_indices(records.size(), n, seed)) out.push_back(records[i]);
  return out;
}

}  // namespace ocw
