#include "ocwobs/prober.hpp"

#include <atomic>
#include <set>
#include <thread>

#include "ocwobs/errors.hpp"
#include "ocwobs/json_io.hpp"

namespace ocw {

void ProbeSchedule::check() const {
  if (rounds < 1) throw ArgumentError("probe schedule needs at least one round");
  if (parallelism < 1) throw ArgumentError("probe parallelism must be at least 1");
  if (interval.count() < 0 || timeout.count() < 0) {
    throw ArgumentError("probe interval and timeout must be nonnegative");
  }
}

ProbeClock ProbeClock::system() {
  return {std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()),
          [](std::chrono::seconds d) { std::this_thread::sleep_for(d); }};
}

ProbeClock ProbeClock::simulated(Timestamp start) {
  return {start, [](std::chrono::seconds) {}};
}

namespace {

ProbeSample to_sample(Timestamp at, const FetchOutcome& outcome) {
  switch (outcome.status) {
    case FetchStatus::Up:
      return {at, true, true};
    case FetchStatus::ContentMissing:
      return {at, true, false};
    case FetchStatus::Down:
      break;
  }
  return {at, false, std::nullopt};
}

}  // namespace

std::map<std::string, ProbeLog> probe_corpus(const std::vector<CourseRecord>& records,
                                             const ProbeSchedule& schedule,
                                             const Transport& transport, const ProbeClock& clock) {
  schedule.check();
  std::set<std::string> ids;
  for (const auto& r : records) {
    if (!ids.insert(r.id).second) throw ArgumentError("duplicate course id '" + r.id + "'");
  }

  // Each course owns one slot; workers only write their claimed slot.
  std::vector<ProbeLog> logs(records.size());
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(schedule.parallelism),
                                             records.size());

  for (int round = 0; round < schedule.rounds; ++round) {
    if (round > 0 && clock.sleep) clock.sleep(schedule.interval);
    const Timestamp at = clock.start + schedule.interval * round;

    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < records.size(); i = next++) {
        FetchOutcome outcome;
        try {
          outcome = transport.fetch(records[i].url, schedule.timeout);
        } catch (const std::exception& e) {
          outcome = FetchOutcome::down(e.what());
        } catch (...) {
          outcome = FetchOutcome::down("unknown transport failure");
        }
        logs[i].samples.push_back(to_sample(at, outcome));
      }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::map<std::string, ProbeLog> out;
  for (std::size_t i = 0; i < records.size(); ++i) out.emplace(records[i].id, std::move(logs[i]));
  return out;
}

ScriptedTransport::ScriptedTransport(
    std::unordered_map<std::string, std::vector<FetchOutcome>> script)
    : script_(std::move(script)) {}

ScriptedTransport ScriptedTransport::from_json(std::istream& in) {
  std::unordered_map<std::string, std::vector<FetchOutcome>> script;
  try {
    const auto doc = json::parse(in);
    if (!doc.is_object()) throw InputError("probe script must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      auto& outcomes = script[it.key()];
      for (const auto& entry : it.value()) {
        const auto& name = entry.get_ref<const std::string&>();
        auto status = enum_from_name<FetchStatus>(name);
        if (!status) throw InputError("unknown probe outcome '" + name + "'");
        outcomes.push_back({*status, *status == FetchStatus::Down ? "scripted down" : ""});
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed probe script: ") + e.what());
  }
  return ScriptedTransport(std::move(script));
}

FetchOutcome ScriptedTransport::fetch(const std::string& url, std::chrono::milliseconds) const {
  std::size_t call = 0;
  {
    std::lock_guard lock(mutex_);
    call = calls_[url]++;
  }
  auto it = script_.find(url);
  if (it == script_.end()) return FetchOutcome::down("unscripted url");
  if (call >= it->second.size()) return FetchOutcome::down("script exhausted");
  return it->second[call];
}

}  // namespace ocw
