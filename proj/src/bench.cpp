#include "abc/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

#include "abc/error.hpp"
#include "abc/hash.hpp"
#include "abc/rng.hpp"
#include "abc/services.hpp"
#include "abc/wire.hpp"

namespace abc::bench {

namespace {

constexpr int kServiceAttempts = 3;

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorCode::BadConfig, what); }

// Independent, reproducible stream per (scheme, attr_count, run).
std::uint64_t run_seed(std::uint64_t seed, SchemeId id, std::size_t attr_count, std::size_t run) {
  Sha256 h;
  std::uint8_t buf[25];
  for (int i = 0; i < 8; ++i) {
    buf[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
    buf[8 + i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(attr_count) >> (56 - 8 * i));
    buf[16 + i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(run) >> (56 - 8 * i));
  }
  buf[24] = static_cast<std::uint8_t>(id);
  Digest d = h.update(buf).finish();
  std::uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out = out << 8 | d[static_cast<std::size_t>(i)];
  return out;
}

std::string digest_of(const wire::json& credential) {
  std::string text = credential.dump();
  return to_hex(sha256({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()}));
}

struct Cell {
  SchemeId scheme;
  std::size_t attr_count;
};

class GridRunner {
 public:
  GridRunner(const BenchConfig& config, MemorySampler& sampler) : config_(config), sampler_(sampler) {}

  void add(const Cell& cell, std::size_t run, Phase phase, MemorySampler::Clock::time_point start,
           double elapsed_ms, bool valid, std::string digest) {
    BenchRecord rec;
    rec.scheme = cell.scheme;
    rec.phase = phase;
    rec.attr_count = cell.attr_count;
    rec.run_index = run;
    rec.elapsed_ms = elapsed_ms;
    rec.valid = valid;
    rec.credential_digest = std::move(digest);
    const auto end = MemorySampler::Clock::now();
    rec.rss_mb_samples = sampler_.samples_between(start, end);
    rec.rss_mb_samples.push_back(read_rss_mb());
    result.records.push_back(std::move(rec));
  }

  void run_in_process(const Cell& cell, std::uint64_t seed) {
    const auto attrs = scheme::fixture_attributes(cell.attr_count);
    for (std::size_t run = 0; run < config_.runs; ++run) {
      SeededRng rng(run_seed(seed, cell.scheme, cell.attr_count, run));
      if (cell.scheme == SchemeId::Ecc160) {
        const auto key = scheme::ecc_keygen(rng);
        std::optional<scheme::EccCredential> cred;
        auto t0 = MemorySampler::Clock::now();
        double issue_ms = time_phase([&] { cred = scheme::ecc_issue(key, attrs, rng); });
        add(cell, run, Phase::Issue, t0, issue_ms, true, digest_of(wire::encode_credential(*cred)));
        bool valid = false;
        t0 = MemorySampler::Clock::now();
        double verify_ms = time_phase([&] { valid = scheme::ecc_verify(key.pub, *cred); });
        add(cell, run, Phase::Verify, t0, verify_ms, valid, {});
      } else {
        const auto key = scheme::rsa_keygen(rng);
        std::optional<scheme::ModexpCredential> cred;
        auto t0 = MemorySampler::Clock::now();
        double issue_ms = time_phase([&] { cred = scheme::rsa_issue(key, attrs); });
        add(cell, run, Phase::Issue, t0, issue_ms, true, digest_of(wire::encode_credential(*cred)));
        bool valid = false;
        t0 = MemorySampler::Clock::now();
        double verify_ms = time_phase([&] { valid = scheme::rsa_verify(key.public_key(), *cred); });
        add(cell, run, Phase::Verify, t0, verify_ms, valid, {});
      }
    }
  }

  // User-side round-trip times against running services. The issuer keeps
  // its own key, so keys are not refreshed per run in this mode.
  void run_over_wire(const Cell& cell) {
    const auto attrs = scheme::fixture_attributes(cell.attr_count);
    for (std::size_t run = 0; run < config_.runs; ++run) {
      std::optional<services::IssueResult> issued;
      std::optional<services::VerifyResult> verified;
      auto t_issue = MemorySampler::Clock::now();
      auto t_verify = t_issue;
      for (int attempt = 0; attempt < kServiceAttempts && !verified; ++attempt) {
        try {
          t_issue = MemorySampler::Clock::now();
          issued = services::client_issue(config_.issuer, cell.scheme, attrs);
          t_verify = MemorySampler::Clock::now();
          verified = services::client_verify(config_.verifier, issued->credential);
        } catch (const Error&) {
          issued.reset();
        }
      }
      if (!verified) {
        result.failed_cells.push_back(std::string(scheme::scheme_name(cell.scheme)) + "/" +
                                      std::to_string(cell.attr_count));
        return;
      }
      add(cell, run, Phase::Issue, t_issue, issued->round_trip_ms, true, digest_of(issued->credential));
      add(cell, run, Phase::Verify, t_verify, verified->round_trip_ms, verified->valid, {});
    }
  }

  BenchResult result;

 private:
  const BenchConfig& config_;
  MemorySampler& sampler_;
};

}  // namespace

std::string_view phase_name(Phase phase) { return phase == Phase::Issue ? "issue" : "verify"; }
std::string_view mode_name(Mode mode) { return mode == Mode::InProcess ? "in-process" : "over-wire"; }
std::string_view metric_name(Metric metric) { return metric == Metric::TimeMs ? "time_ms" : "rss_mb"; }

std::optional<Phase> parse_phase(std::string_view name) {
  if (name == "issue") return Phase::Issue;
  if (name == "verify") return Phase::Verify;
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "in-process") return Mode::InProcess;
  if (name == "over-wire") return Mode::OverWire;
  return std::nullopt;
}

std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "time_ms") return Metric::TimeMs;
  if (name == "rss_mb") return Metric::RssMb;
  return std::nullopt;
}

void BenchConfig::validate() const {
  if (runs < 1) bad_config("runs must be at least 1");
  if (schemes.empty()) bad_config("at least one scheme is required");
  if (attr_counts.empty()) bad_config("at least one attribute count is required");
  for (auto c : attr_counts) {
    if (c < 1 || c > scheme::kMaxAttributes) bad_config("attribute counts must lie in 1..10");
  }
  if (memory_sample_interval < std::chrono::milliseconds(1)) bad_config("memory sample interval must be >= 1 ms");
}

json BenchConfig::to_json() const {
  json doc;
  doc["schemes"] = json::array();
  for (auto s : schemes) doc["schemes"].push_back(scheme::scheme_name(s));
  doc["attr_counts"] = attr_counts;
  doc["runs"] = runs;
  doc["mode"] = mode_name(mode);
  doc["memory_sample_interval_ms"] = memory_sample_interval.count();
  doc["output_path"] = output_path;
  if (seed) doc["seed"] = *seed;
  doc["issuer"] = issuer.to_string();
  doc["verifier"] = verifier.to_string();
  return doc;
}

BenchConfig BenchConfig::from_json(const json& doc) {
  if (!doc.is_object()) bad_config("bench config must be a JSON object");
  BenchConfig cfg;
  try {
    if (doc.contains("schemes")) {
      cfg.schemes.clear();
      for (const auto& s : doc["schemes"]) {
        auto id = scheme::parse_scheme(s.get<std::string>());
        if (!id) bad_config("unknown scheme '" + s.get<std::string>() + "'");
        cfg.schemes.push_back(*id);
      }
    }
    if (doc.contains("attr_counts")) cfg.attr_counts = doc["attr_counts"].get<std::vector<std::size_t>>();
    if (doc.contains("runs")) cfg.runs = doc["runs"].get<std::size_t>();
    if (doc.contains("mode")) {
      auto mode = parse_mode(doc["mode"].get<std::string>());
      if (!mode) bad_config("mode must be in-process or over-wire");
      cfg.mode = *mode;
    }
    if (doc.contains("memory_sample_interval_ms")) {
      cfg.memory_sample_interval = std::chrono::milliseconds(doc["memory_sample_interval_ms"].get<std::int64_t>());
    }
    if (doc.contains("output_path")) cfg.output_path = doc["output_path"].get<std::string>();
    if (doc.contains("seed") && !doc["seed"].is_null()) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("issuer")) cfg.issuer = net::parse_endpoint(doc["issuer"].get<std::string>());
    if (doc.contains("verifier")) cfg.verifier = net::parse_endpoint(doc["verifier"].get<std::string>());
  } catch (const json::exception& e) {
    bad_config(std::string("bench config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

double read_rss_mb() {
  std::ifstream statm("/proc/self/statm");
  long total_pages = 0;
  long resident_pages = 0;
  if (!(statm >> total_pages >> resident_pages)) {
    throw Error(ErrorCode::UnsupportedPlatform, "resident set size is not available on this platform");
  }
  const double bytes = static_cast<double>(resident_pages) * static_cast<double>(sysconf(_SC_PAGESIZE));
  return round2(bytes / (1024.0 * 1024.0));
}

MemorySampler::MemorySampler(std::chrono::milliseconds interval) : interval_(interval) {
  if (interval_ < std::chrono::milliseconds(1)) bad_config("memory sample interval must be >= 1 ms");
  read_rss_mb();  // fail fast on unsupported platforms
  worker_ = std::thread([this] { loop(); });
}

MemorySampler::~MemorySampler() { stop(); }

void MemorySampler::stop() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  if (worker_.joinable()) worker_.join();
}

void MemorySampler::loop() {
  std::unique_lock lock(mutex_);
  while (!stopping_) {
    lock.unlock();
    Sample s{Clock::now(), read_rss_mb()};
    lock.lock();
    log_.push_back(s);
    wake_.wait_for(lock, interval_, [this] { return stopping_; });
  }
}

std::vector<double> MemorySampler::samples_between(Clock::time_point from, Clock::time_point to) const {
  std::lock_guard lock(mutex_);
  std::vector<double> out;
  // log_ is append-only and time-ordered
  auto first = std::lower_bound(log_.begin(), log_.end(), from,
                                [](const Sample& s, Clock::time_point t) { return s.at < t; });
  for (auto it = first; it != log_.end() && it->at <= to; ++it) out.push_back(it->rss_mb);
  return out;
}

std::vector<MemorySampler::Sample> MemorySampler::samples() const {
  std::lock_guard lock(mutex_);
  return log_;
}

BenchResult run_benchmark(const BenchConfig& config, const Progress& progress) {
  config.validate();
  const std::uint64_t seed = config.seed ? *config.seed : SystemRng().next_u64();
  MemorySampler sampler(config.memory_sample_interval);
  GridRunner runner(config, sampler);
  for (auto id : config.schemes) {
    for (auto count : config.attr_counts) {
      Cell cell{id, count};
      if (progress) {
        progress(std::string(scheme::scheme_name(id)) + " x " + std::to_string(count) + " attributes, " +
                 std::to_string(config.runs) + " runs");
      }
      if (config.mode == Mode::InProcess) {
        runner.run_in_process(cell, seed);
      } else {
        runner.run_over_wire(cell);
      }
    }
  }
  sampler.stop();
  return std::move(runner.result);
}

std::vector<StatsSummary> summarize(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyCell, "no records to summarize");

  using Key = std::tuple<int, int, std::size_t>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> cells;
  std::vector<Key> order;
  for (const auto& r : records) {
    Key key{static_cast<int>(r.scheme), static_cast<int>(r.phase), r.attr_count};
    auto [it, inserted] = cells.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.first.push_back(r.elapsed_ms);
    if (!r.rss_mb_samples.empty()) {
      it->second.second.push_back(*std::max_element(r.rss_mb_samples.begin(), r.rss_mb_samples.end()));
    }
  }
  std::sort(order.begin(), order.end());

  auto stats = [](const Key& key, Metric metric, const std::vector<double>& values) {
    StatsSummary s;
    s.scheme = static_cast<SchemeId>(std::get<0>(key));
    s.phase = static_cast<Phase>(std::get<1>(key));
    s.attr_count = std::get<2>(key);
    s.metric = metric;
    s.runs = values.size();
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    double sum = 0.0;
    for (double v : values) sum += v;
    // rounding in sum/n can land just outside [min, max] for near-constant data
    s.mean = std::clamp(sum / static_cast<double>(values.size()), s.min, s.max);
    auto ge = std::count_if(values.begin(), values.end(), [&](double v) { return v >= s.mean; });
    s.pct_ge_mean = 100.0 * static_cast<double>(ge) / static_cast<double>(values.size());
    return s;
  };

  std::vector<StatsSummary> out;
  for (const auto& key : order) {
    const auto& [times, memory] = cells.at(key);
    out.push_back(stats(key, Metric::TimeMs, times));
    if (!memory.empty()) out.push_back(stats(key, Metric::RssMb, memory));
  }
  return out;
}

json records_to_json(const std::vector<BenchRecord>& records) {
  json out = json::array();
  for (const auto& r : records) {
    json rec = {{"scheme", scheme::scheme_name(r.scheme)},
                {"phase", phase_name(r.phase)},
                {"attr_count", r.attr_count},
                {"run_index", r.run_index},
                {"elapsed_ms", r.elapsed_ms},
                {"rss_mb_samples", r.rss_mb_samples},
                {"valid", r.valid}};
    if (!r.credential_digest.empty()) rec["credential_digest"] = r.credential_digest;
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<BenchRecord> records_from_json(const json& doc) {
  if (!doc.is_array()) throw Error(ErrorCode::MalformedJson, "records file must hold a JSON array");
  std::vector<BenchRecord> out;
  try {
    for (const auto& j : doc) {
      BenchRecord r;
      auto id = scheme::parse_scheme(j.at("scheme").get<std::string>());
      auto phase = parse_phase(j.at("phase").get<std::string>());
      if (!id || !phase) throw Error(ErrorCode::MalformedJson, "unknown scheme or phase in record");
      r.scheme = *id;
      r.phase = *phase;
      r.attr_count = j.at("attr_count").get<std::size_t>();
      r.run_index = j.at("run_index").get<std::size_t>();
      r.elapsed_ms = j.at("elapsed_ms").get<double>();
      r.rss_mb_samples = j.at("rss_mb_samples").get<std::vector<double>>();
      r.valid = j.value("valid", true);
      r.credential_digest = j.value("credential_digest", std::string());
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedJson, std::string("bad record: ") + e.what());
  }
  return out;
}

}  // namespace abc::bench
