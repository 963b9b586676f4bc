#include "ocwobs/searchrank.hpp"

#include <algorithm>
#include <cctype>

#include "ocwobs/errors.hpp"
#include "ocwobs/json_io.hpp"

namespace ocw {

namespace {

bool is_ascii(unsigned char c) { return c < 0x80; }

}  // namespace

std::string normalize_title(std::string_view title) {
  std::string out;
  out.reserve(title.size());
  bool pending_space = false;
  for (unsigned char c : title) {
    if (is_ascii(c) && std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (is_ascii(c) && std::ispunct(c)) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(is_ascii(c) ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
  }
  return out;
}

std::vector<std::string> build_queries(std::string_view title) {
  auto base = normalize_title(title);
  if (base.empty()) throw ArgumentError("course title has no searchable words");
  return {base, base + " course", base + " open course"};
}

std::string normalize_url(std::string_view url) {
  if (auto p = url.find("://"); p != std::string_view::npos) url.remove_prefix(p + 3);
  while (!url.empty() && url.back() == '/') url.remove_suffix(1);
  std::string out(url);
  const auto host_end = std::min(out.find('/'), out.size());
  std::transform(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(host_end), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

FixtureSearchProvider FixtureSearchProvider::from_jsonl(std::istream& in) {
  FixtureSearchProvider provider;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto doc = json::parse(line);
      provider.add(doc.at("query").get<std::string>(),
                   doc.at("results").get<std::vector<std::string>>());
    } catch (const json::exception& e) {
      throw InputError("search fixture line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return provider;
}

void FixtureSearchProvider::add(std::string query, std::vector<std::string> results) {
  results_.insert_or_assign(std::move(query), std::move(results));
}

std::vector<std::string> FixtureSearchProvider::search(const std::string& query,
                                                       int max_results) const {
  auto it = results_.find(query);
  if (it == results_.end()) throw InputError("no canned results for query '" + query + "'");
  const auto n = std::min(it->second.size(), static_cast<std::size_t>(std::max(0, max_results)));
  return {it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(n)};
}

SearchObservation rank_course(const CourseRecord& course, const SearchProvider& provider,
                              int cutoff) {
  if (cutoff < 1) throw ArgumentError("search cutoff must be positive");
  SearchObservation obs;
  obs.cutoff = cutoff;
  const auto target = normalize_url(course.url);
  for (auto& query : build_queries(course.title)) {
    std::vector<std::string> results;
    try {
      results = provider.search(query, cutoff);
    } catch (const std::exception& e) {
      obs.queries.push_back(QueryRank::unmeasured(std::move(query), e.what()));
      continue;
    }
    const auto limit = std::min(results.size(), static_cast<std::size_t>(cutoff));
    const auto hit = std::find_if(results.begin(), results.begin() + static_cast<std::ptrdiff_t>(limit),
                                  [&](const std::string& u) { return normalize_url(u) == target; });
    if (hit == results.begin() + static_cast<std::ptrdiff_t>(limit)) {
      obs.queries.push_back(QueryRank::not_found(std::move(query)));
    } else {
      obs.queries.push_back(
          QueryRank::found(std::move(query), static_cast<int>(hit - results.begin()) + 1));
    }
  }
  return obs;
}

}  // namespace ocw
