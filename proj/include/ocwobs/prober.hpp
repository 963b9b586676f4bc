#pragma once

// Time-sampled availability probing through an abstract transport.

#include <chrono>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "ocwobs/model.hpp"

namespace ocw {

enum class FetchStatus { Up, Down, ContentMissing };

template <>
struct EnumNames<FetchStatus> {
  static constexpr std::array<std::pair<FetchStatus, std::string_view>, 3> table{{
      {FetchStatus::Up, "up"},
      {FetchStatus::Down, "down"},
      {FetchStatus::ContentMissing, "content-missing"},
  }};
};

struct FetchOutcome {
  FetchStatus status = FetchStatus::Down;
  std::string reason;

  static FetchOutcome up() { return {FetchStatus::Up, {}}; }
  static FetchOutcome down(std::string reason) { return {FetchStatus::Down, std::move(reason)}; }
  static FetchOutcome content_missing() { return {FetchStatus::ContentMissing, {}}; }
};

/// Fetch capability used by the prober. Implementations must be safe to
/// call concurrently and must not modify their inputs.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual FetchOutcome fetch(const std::string& url, std::chrono::milliseconds timeout) const = 0;
};

struct ProbeSchedule {
  int rounds = 3;
  std::chrono::seconds interval{0};
  std::chrono::milliseconds timeout{10'000};
  int parallelism = 4;

  /// Throws ArgumentError unless rounds >= 1, parallelism >= 1, and the
  /// interval and timeout are nonnegative.
  void check() const;
};

struct ProbeClock {
  /// Timestamp of round 0; round k is stamped start + k * interval.
  Timestamp start{};
  /// Called between rounds with the schedule interval.
  std::function<void(std::chrono::seconds)> sleep;

  /// Wall-clock start and a real sleep.
  static ProbeClock system();
  /// Fixed start and no waiting, for reproducible runs.
  static ProbeClock simulated(Timestamp start);
};

/// Probes every record once per round. Rounds run sequentially; within a
/// round at most `schedule.parallelism` fetches are in flight. Transport
/// failures (including exceptions) become down samples. Record ids must be
/// unique.
std::map<std::string, ProbeLog> probe_corpus(const std::vector<CourseRecord>& records,
                                             const ProbeSchedule& schedule,
                                             const Transport& transport, const ProbeClock& clock);

/// Transport that replays a per-URL script: the n-th fetch of a URL returns
/// the n-th scripted outcome. Unscripted URLs and exhausted scripts report
/// down.
class ScriptedTransport : public Transport {
 public:
  ScriptedTransport() = default;
  explicit ScriptedTransport(std::unordered_map<std::string, std::vector<FetchOutcome>> script);
  ScriptedTransport(ScriptedTransport&& other) noexcept : script_(std::move(other.script_)) {}

  /// Reads a JSON object mapping URL to a list of "up" / "down" /
  /// "content-missing" entries. Throws InputError on malformed input.
  static ScriptedTransport from_json(std::istream& in);

  FetchOutcome fetch(const std::string& url, std::chrono::milliseconds timeout) const override;

 private:
  std::unordered_map<std::string, std::vector<FetchOutcome>> script_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, std::size_t> calls_;
};

}  // namespace ocw
