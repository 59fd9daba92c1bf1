#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "abc/net.hpp"
#include "abc/scheme.hpp"

namespace abc::bench {

using json = nlohmann::json;
using scheme::SchemeId;

enum class Phase { Issue, Verify };
enum class Mode { InProcess, OverWire };
enum class Metric { TimeMs, RssMb };

std::string_view phase_name(Phase phase);
std::string_view mode_name(Mode mode);
std::string_view metric_name(Metric metric);
std::optional<Phase> parse_phase(std::string_view name);
std::optional<Mode> parse_mode(std::string_view name);
std::optional<Metric> parse_metric(std::string_view name);

struct BenchConfig {
  std::vector<SchemeId> schemes{SchemeId::Ecc160, SchemeId::Modexp1024};
  std::vector<std::size_t> attr_counts{1, 5, 10};
  std::size_t runs = 100;
  Mode mode = Mode::InProcess;
  std::chrono::milliseconds memory_sample_interval{10};
  std::string output_path;
  std::optional<std::uint64_t> seed;
  net::Endpoint issuer{"127.0.0.1", net::kDefaultIssuerPort};
  net::Endpoint verifier{"127.0.0.1", net::kDefaultVerifierPort};

  // Throws BadConfig: runs >= 1, attr_counts within 1..10, non-empty lists, interval >= 1 ms.
  void validate() const;
  json to_json() const;
  // Missing fields keep their defaults.
  static BenchConfig from_json(const json& doc);
};

struct BenchRecord {
  SchemeId scheme = SchemeId::Ecc160;
  Phase phase = Phase::Issue;
  std::size_t attr_count = 0;
  std::size_t run_index = 0;
  double elapsed_ms = 0.0;
  std::vector<double> rss_mb_samples;
  bool valid = true;                // verify phase: the verifier's answer
  std::string credential_digest;    // issue phase: SHA-256 of the wire credential

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct StatsSummary {
  SchemeId scheme = SchemeId::Ecc160;
  Phase phase = Phase::Issue;
  std::size_t attr_count = 0;
  Metric metric = Metric::TimeMs;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double pct_ge_mean = 0.0;
  std::size_t runs = 0;

  friend bool operator==(const StatsSummary&, const StatsSummary&) = default;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  // "scheme/attr_count" of cells aborted after repeated service failures.
  std::vector<std::string> failed_cells;
};

// Wall-clock milliseconds of `action` on the monotonic clock; exceptions propagate.
template <typename Action>
double time_phase(Action&& action) {
  const auto start = std::chrono::steady_clock::now();
  std::forward<Action>(action)();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

double round2(double v);

// Resident set size of this process in MB (bytes / 2^20), rounded to 2 decimals.
// Throws UnsupportedPlatform when /proc/self/statm is unavailable.
double read_rss_mb();

// Background observer appending timestamped RSS readings to a log.
class MemorySampler {
 public:
  using Clock = std::chrono::steady_clock;

  struct Sample {
    Clock::time_point at;
    double rss_mb;
  };

  explicit MemorySampler(std::chrono::milliseconds interval);
  ~MemorySampler();
  MemorySampler(const MemorySampler&) = delete;
  MemorySampler& operator=(const MemorySampler&) = delete;

  void stop();
  std::vector<double> samples_between(Clock::time_point from, Clock::time_point to) const;
  std::vector<Sample> samples() const;

 private:
  void loop();

  std::chrono::milliseconds interval_;
  mutable std::mutex mutex_;
  std::condition_variable wake_;
  bool stopping_ = false;
  std::vector<Sample> log_;
  std::thread worker_;
};

using Progress = std::function<void(const std::string&)>;

// Runs the grid schemes x attr_counts x runs, each run an issue followed by
// an immediate verify. Records come out in that nesting order.
BenchResult run_benchmark(const BenchConfig& config, const Progress& progress = {});

// One time summary and one memory summary per (scheme, phase, attr_count).
// Throws EmptyCell for an empty record list.
std::vector<StatsSummary> summarize(const std::vector<BenchRecord>& records);

struct RatioRow {
  Phase phase = Phase::Issue;
  std::size_t attr_count = 0;
  Metric metric = Metric::TimeMs;
  double ecc_mean = 0.0;
  double modexp_mean = 0.0;
  double ratio = 0.0;  // modexp1024 mean / ecc160 mean
};

std::vector<RatioRow> compute_ratios(const std::vector<StatsSummary>& summaries);

enum class ReportFormat { Csv, Markdown, Json };
std::optional<ReportFormat> parse_report_format(std::string_view name);

std::string render_report(const std::vector<StatsSummary>& summaries, ReportFormat format);
// Throws IoFailure.
void emit_report(const std::vector<StatsSummary>& summaries, ReportFormat format, const std::string& path);
std::vector<StatsSummary> parse_report_json(const json& doc);

json records_to_json(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> records_from_json(const json& doc);

}  // namespace abc::bench
