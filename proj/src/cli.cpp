#include "ocwobs/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <optional>
#include <regex>
#include <thread>

#include "ocwobs/errors.hpp"
#include "ocwobs/http_transport.hpp"
#include "ocwobs/ingest.hpp"
#include "ocwobs/json_io.hpp"
#include "ocwobs/metrics.hpp"
#include "ocwobs/prober.hpp"
#include "ocwobs/report.hpp"
#include "ocwobs/searchrank.hpp"

namespace ocw::cli {

namespace fs = std::filesystem;

namespace {

std::chrono::seconds parse_duration(const std::string& text) {
  static const std::regex re(R"(^(\d+)([smhd]?)$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw ArgumentError("bad duration '" + text + "' (expected e.g. 90, 30s, 15m, 2h, 1d)");
  }
  const long long n = std::stoll(m[1].str());
  const std::string unit = m[2].str();
  if (unit == "m") return std::chrono::minutes(n);
  if (unit == "h") return std::chrono::hours(n);
  if (unit == "d") return std::chrono::days(n);
  return std::chrono::seconds(n);
}

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OCW_OBS_JOBS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<ReportFormat> parse_formats(const std::vector<std::string>& names) {
  std::vector<ReportFormat> out;
  for (const auto& n : names) {
    auto f = enum_from_name<ReportFormat>(n);
    if (!f) throw ArgumentError("unknown report format '" + n + "'");
    if (std::find(out.begin(), out.end(), *f) == out.end()) out.push_back(*f);
  }
  return out;
}

// Applies fn to each index with up to `jobs` workers; results keep input order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, int jobs, Fn fn) {
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    const auto count = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    for (std::size_t w = 0; w < count; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            slots[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

void report_drops(const CleanupReport& report, std::ostream& err) {
  for (const auto& d : report.dropped) {
    err << "dropped " << d.id << " (" << enum_name(d.reason) << "): " << d.detail << '\n';
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

void write_records(const std::string& out_path, const std::vector<CourseRecord>& records,
                   std::ostream& out) {
  if (out_path.empty()) {
    write_corpus(out, records);
    return;
  }
  const fs::path p(out_path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream file(p, std::ios::binary);
  if (!file) throw InputError("cannot write " + out_path);
  write_corpus(file, records);
}

std::vector<CourseAssessment> read_assessments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open assessments file '" + path + "'");
  std::vector<CourseAssessment> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line).get<CourseAssessment>());
    } catch (const json::exception& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void emit_summary(const CorpusSummary& summary, const std::string& out_dir,
                  const std::vector<ReportFormat>& formats, std::ostream& out) {
  if (out_dir.empty()) {
    for (auto f : formats) out << emit(summary, f);
    return;
  }
  write_report(summary, out_dir, formats);
}

struct Options {
  std::string corpus;
  std::string as_of;
  std::string out;
  std::vector<std::string> formats{"json"};
  int jobs = 0;

  int rounds = 3;
  std::string interval = "0";
  std::string timeout = "10";
  std::string transport = "real";
  std::string start;

  std::string provider;

  std::size_t n = 0;
  std::uint64_t seed = 0;
};

Date parse_as_of(const std::string& text) {
  try {
    return Date::parse(text);
  } catch (const InputError& e) {
    throw ArgumentError(std::string("--as-of: ") + e.what());
  }
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto corpus = load_corpus(fs::path(o.corpus));
  out << cleanup_report_json(corpus.report) << '\n';
  report_drops(corpus.report, err);
  return corpus.report.dropped.empty() ? kExitOk : kExitDataError;
}

int cmd_assess(const Options& o, std::ostream& out, std::ostream& err) {
  const Date t_obs = parse_as_of(o.as_of);
  const auto formats = parse_formats(o.formats);
  const auto corpus = load_corpus(fs::path(o.corpus));
  report_drops(corpus.report, err);
  if (corpus.records.empty()) {
    err << "no usable courses in " << o.corpus << '\n';
    return kExitDataError;
  }
  const auto& records = corpus.records;
  auto assessments = parallel_map<CourseAssessment>(
      records.size(), resolve_jobs(o.jobs), [&](std::size_t i) { return assess(records[i], t_obs); });
  const auto summary = summarize(assessments);

  if (!o.out.empty()) {
    std::string lines;
    for (const auto& a : assessments) lines += json(a).dump() + "\n";
    write_text(fs::path(o.out) / "assessments.jsonl", lines);
    write_text(fs::path(o.out) / "cleanup.json", cleanup_report_json(corpus.report) + "\n");
  }
  emit_summary(summary, o.out, formats, out);
  return kExitOk;
}

int cmd_probe(const Options& o, std::ostream& out, std::ostream& err) {
  ProbeSchedule schedule;
  schedule.rounds = o.rounds;
  schedule.interval = parse_duration(o.interval);
  schedule.timeout = std::chrono::duration_cast<std::chrono::milliseconds>(parse_duration(o.timeout));
  schedule.parallelism = resolve_jobs(o.jobs);
  schedule.check();

  auto corpus = load_corpus(fs::path(o.corpus));
  report_drops(corpus.report, err);

  std::unique_ptr<Transport> transport;
  ProbeClock clock = ProbeClock::system();
  if (o.transport == "real") {
    transport = std::make_unique<HttpTransport>();
  } else if (o.transport.rfind("fixture:", 0) == 0) {
    const std::string path = o.transport.substr(8);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open probe script '" + path + "'");
    transport = std::make_unique<ScriptedTransport>(ScriptedTransport::from_json(in));
    clock = ProbeClock::simulated(clock.start);
  } else {
    throw ArgumentError("unknown transport '" + o.transport + "' (expected real or fixture:<file>)");
  }
  if (!o.start.empty()) {
    try {
      clock.start = parse_timestamp(o.start);
    } catch (const InputError& e) {
      throw ArgumentError(std::string("--start: ") + e.what());
    }
  }

  auto logs = probe_corpus(corpus.records, schedule, *transport, clock);
  for (auto& r : corpus.records) r.probe_log = std::move(logs.at(r.id));
  write_records(o.out, corpus.records, out);
  return kExitOk;
}

int cmd_rank(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.provider.rfind("fixture:", 0) != 0) {
    throw ArgumentError("unknown provider '" + o.provider + "' (expected fixture:<file>)");
  }
  const std::string path = o.provider.substr(8);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open search fixture '" + path + "'");
  const auto provider = FixtureSearchProvider::from_jsonl(in);

  auto corpus = load_corpus(fs::path(o.corpus));
  report_drops(corpus.report, err);
  for (auto& r : corpus.records) r.search_observation = rank_course(r, provider);
  write_records(o.out, corpus.records, out);
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream&) {
  const auto formats = parse_formats(o.formats);
  const auto assessments = read_assessments(o.corpus);
  emit_summary(summarize(assessments), o.out, formats, out);
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out, std::ostream& err) {
  const auto corpus = load_corpus(fs::path(o.corpus));
  report_drops(corpus.report, err);
  const auto picked = sample(corpus.records, o.n, o.seed);
  if (!o.out.empty()) write_records(o.out, picked, out);
  for (const auto& r : picked) out << r.id << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quality observatory for OpenCourseWare collections", "ocwobs"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check a corpus and list dropped courses");
  validate->add_option("corpus", o.corpus, "Course corpus (JSON Lines)")->required();

  auto* assess_cmd = app.add_subcommand("assess", "Assess every course and summarize the corpus");
  assess_cmd->add_option("corpus", o.corpus, "Course corpus (JSON Lines)")->required();
  assess_cmd->add_option("--as-of", o.as_of, "Observation date, YYYY-MM-DD")->required();
  assess_cmd->add_option("--out", o.out, "Output directory (default: summary on stdout)");
  assess_cmd->add_option("--format", o.formats, "Summary formats: csv, json, md")->delimiter(',');
  assess_cmd->add_option("--jobs", o.jobs, "Worker threads (default: OCW_OBS_JOBS or CPU count)");

  auto* probe = app.add_subcommand("probe", "Probe course URLs and record availability samples");
  probe->add_option("corpus", o.corpus, "Course corpus (JSON Lines)")->required();
  probe->add_option("--rounds", o.rounds, "Number of probe rounds")->capture_default_str();
  probe->add_option("--interval", o.interval, "Pause between rounds, e.g. 30s, 2h, 1d")
      ->capture_default_str();
  probe->add_option("--timeout", o.timeout, "Per-request timeout")->capture_default_str();
  probe->add_option("--transport", o.transport, "real or fixture:<script.json>")
      ->capture_default_str();
  probe->add_option("--start", o.start, "Timestamp of the first round (YYYY-MM-DDTHH:MM:SSZ)");
  probe->add_option("--jobs", o.jobs, "Concurrent fetches per round");
  probe->add_option("--out", o.out, "Output corpus file (default: stdout)");

  auto* rank = app.add_subcommand("rank", "Record search ranks for each course");
  rank->add_option("corpus", o.corpus, "Course corpus (JSON Lines)")->required();
  rank->add_option("--provider", o.provider, "fixture:<results.jsonl>")->required();
  rank->add_option("--out", o.out, "Output corpus file (default: stdout)");

  auto* report = app.add_subcommand("report", "Summarize previously written assessments");
  report->add_option("assessments", o.corpus, "assessments.jsonl from `assess --out`")->required();
  report->add_option("--out", o.out, "Output directory (default: stdout)");
  report->add_option("--format", o.formats, "Summary formats: csv, json, md")->delimiter(',');

  auto* sample_cmd = app.add_subcommand("sample", "Draw a reproducible random sample of courses");
  sample_cmd->add_option("corpus", o.corpus, "Course corpus (JSON Lines)")->required();
  sample_cmd->add_option("-n", o.n, "Sample size")->required();
  sample_cmd->add_option("--seed", o.seed, "Random seed")->required();
  sample_cmd->add_option("--out", o.out, "Also write the sampled records here");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (assess_cmd->parsed()) return cmd_assess(o, out, err);
    if (probe->parsed()) return cmd_probe(o, out, err);
    if (rank->parsed()) return cmd_rank(o, out, err);
    if (report->parsed()) return cmd_report(o, out, err);
    if (sample_cmd->parsed()) return cmd_sample(o, out, err);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace ocw::cli
