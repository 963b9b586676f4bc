#pragma once

// Discoverability: title-derived queries ranked through a pluggable provider.

#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ocwobs/model.hpp"

namespace ocw {

/// Lowercases ASCII letters, strips ASCII punctuation and collapses runs
/// of whitespace to single spaces.
std::string normalize_title(std::string_view title);

/// The three query forms: normalized title, "+ course", "+ open course".
/// Throws ArgumentError for a title with no searchable characters.
std::vector<std::string> build_queries(std::string_view title);

/// Drops the scheme, lowercases the host and strips trailing slashes.
std::string normalize_url(std::string_view url);

inline bool same_course_url(std::string_view a, std::string_view b) {
  return normalize_url(a) == normalize_url(b);
}

/// Ordered result URLs for a query. Implementations throw on failure.
class SearchProvider {
 public:
  virtual ~SearchProvider() = default;
  virtual std::vector<std::string> search(const std::string& query, int max_results) const = 0;
};

/// Serves canned result lists. Input is JSON Lines, one
/// {"query": ..., "results": [url, ...]} object per line. Asking for a
/// query without canned results is a provider failure.
class FixtureSearchProvider : public SearchProvider {
 public:
  static FixtureSearchProvider from_jsonl(std::istream& in);

  void add(std::string query, std::vector<std::string> results);
  std::vector<std::string> search(const std::string& query, int max_results) const override;

 private:
  std::unordered_map<std::string, std::vector<std::string>> results_;
};

/// Runs every query for the course; rank is the 1-based position of the
/// first result matching the course URL within `cutoff` results. Provider
/// failures mark that query unmeasured and never propagate.
SearchObservation rank_course(const CourseRecord& course, const SearchProvider& provider,
                              int cutoff = kSearchCutoff);

}  // namespace ocw
