#pragma once

// Corpus loading, cleanup and random sampling.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "ocwobs/model.hpp"

namespace ocw {

enum class DropReason { BrokenLink, EmptyMaterial, InvalidRecord };

template <>
struct EnumNames<DropReason> {
  static constexpr std::array<std::pair<DropReason, std::string_view>, 3> table{{
      {DropReason::BrokenLink, "broken-link"},
      {DropReason::EmptyMaterial, "empty-material"},
      {DropReason::InvalidRecord, "invalid-record"},
  }};
};

struct DroppedCourse {
  std::string id;  // "line:<n>" when the line could not be parsed far enough to read an id
  DropReason reason = DropReason::InvalidRecord;
  std::string detail;

  bool operator==(const DroppedCourse&) const = default;
};

struct CleanupReport {
  std::vector<std::string> kept;
  std::vector<DroppedCourse> dropped;

  bool operator==(const CleanupReport&) const = default;
};

struct LoadedCorpus {
  std::vector<CourseRecord> records;  // input order
  CleanupReport report;
};

/// Cleanup verdict for one parsed record, or nullopt when it is kept.
/// A record without a probe log is never considered empty.
std::optional<DroppedCourse> cleanup_verdict(const CourseRecord& record);

/// Reads a JSON Lines corpus from a stream. Blank lines are skipped;
/// malformed lines, invalid records and duplicate ids become
/// invalid-record drops.
LoadedCorpus load_corpus(std::istream& in);

/// Reads a JSON Lines corpus file. Throws InputError when the file cannot
/// be opened.
LoadedCorpus load_corpus(const std::filesystem::path& path);

/// Writes records as JSON Lines.
void write_corpus(std::ostream& out, const std::vector<CourseRecord>& records);

std::string cleanup_report_json(const CleanupReport& report);

/// Draws `n` distinct records uniformly without replacement, deterministic
/// for a given seed. Throws ArgumentError when n is 0 or exceeds the input.
std::vector<CourseRecord> sample(const std::vector<CourseRecord>& records, std::size_t n,
                                 std::uint64_t seed);

/// Index form of sample(): positions into a population of `population` items.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n, std::uint64_t seed);

}  // namespace ocw
