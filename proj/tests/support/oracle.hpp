#pragma once

// Brute-force recount of corpus figures straight from raw records. Shares no
// code with the metrics or report modules.

#include <string>
#include <vector>

#include "ocwobs/model.hpp"
#include "ocwobs/report.hpp"

namespace ocw::testing {

CorpusSummary brute_force_summary(const std::vector<CourseRecord>& records, const Date& t_obs);

/// Empty when equal; otherwise names the first differing fields. Series
/// values are compared with an absolute tolerance of 1e-9.
std::vector<std::string> summary_differences(const CorpusSummary& a, const CorpusSummary& b);

}  // namespace ocw::testing
