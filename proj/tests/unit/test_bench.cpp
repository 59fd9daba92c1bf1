#include <gtest/gtest.h>

#include <thread>

#include "abc/bench.hpp"
#include "abc/error.hpp"

using namespace abc;
using namespace abc::bench;

namespace {

BenchRecord rec(SchemeId id, Phase phase, std::size_t n, double ms, std::vector<double> rss = {8.0}) {
  BenchRecord r;
  r.scheme = id;
  r.phase = phase;
  r.attr_count = n;
  r.elapsed_ms = ms;
  r.rss_mb_samples = std::move(rss);
  return r;
}

}  // namespace

TEST(Summarize, PercentAtOrAboveMean) {
  auto s = summarize({rec(SchemeId::Ecc160, Phase::Issue, 1, 1.0), rec(SchemeId::Ecc160, Phase::Issue, 1, 2.0),
                      rec(SchemeId::Ecc160, Phase::Issue, 1, 3.0)});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].metric, Metric::TimeMs);
  EXPECT_DOUBLE_EQ(s[0].mean, 2.0);
  EXPECT_NEAR(s[0].pct_ge_mean, 66.67, 0.01);
  EXPECT_DOUBLE_EQ(s[0].min, 1.0);
  EXPECT_DOUBLE_EQ(s[0].max, 3.0);

  auto flat = summarize({rec(SchemeId::Ecc160, Phase::Verify, 5, 5.0), rec(SchemeId::Ecc160, Phase::Verify, 5, 5.0)});
  EXPECT_DOUBLE_EQ(flat[0].pct_ge_mean, 100.0);
  EXPECT_DOUBLE_EQ(flat[1].pct_ge_mean, 100.0);

  // 0.1 repeated: the naive mean can exceed every sample
  std::vector<BenchRecord> tenths(7, rec(SchemeId::Ecc160, Phase::Issue, 1, 0.1));
  EXPECT_DOUBLE_EQ(summarize(tenths)[0].pct_ge_mean, 100.0);

  EXPECT_THROW(summarize({}), Error);
}

TEST(Summarize, MemoryUsesPerRunPeak) {
  auto s = summarize({rec(SchemeId::Modexp1024, Phase::Issue, 1, 1.0, {7.0, 9.0}),
                      rec(SchemeId::Modexp1024, Phase::Issue, 1, 1.0, {8.0})});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].metric, Metric::RssMb);
  EXPECT_DOUBLE_EQ(s[1].max, 9.0);
  EXPECT_DOUBLE_EQ(s[1].min, 8.0);
  EXPECT_DOUBLE_EQ(s[1].mean, 8.5);
}

TEST(Timing, SleepIsMeasured) {
  double ms = time_phase([] { std::this_thread::sleep_for(std::chrono::milliseconds(50)); });
  EXPECT_GE(ms, 45.0);
  EXPECT_LE(ms, 200.0);
  EXPECT_THROW(time_phase([] { throw std::runtime_error("x"); }), std::runtime_error);
}

TEST(Memory, RssAndSampler) {
  double rss = read_rss_mb();
  EXPECT_GT(rss, 0.0);
  MemorySampler sampler(std::chrono::milliseconds(5));
  auto from = MemorySampler::Clock::now();
  std::this_thread::sleep_for(std::chrono::milliseconds(60));
  auto to = MemorySampler::Clock::now();
  sampler.stop();
  EXPECT_GE(sampler.samples_between(from, to).size(), 3u);
}

TEST(Config, ValidationAndJson) {
  BenchConfig cfg;
  cfg.validate();
  auto back = BenchConfig::from_json(cfg.to_json());
  EXPECT_EQ(back.runs, cfg.runs);
  EXPECT_EQ(back.attr_counts, cfg.attr_counts);
  cfg.runs = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.runs = 1;
  cfg.attr_counts = {11};
  EXPECT_THROW(cfg.validate(), Error);
  cfg.attr_counts = {};
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Grid, SmallRunCardinalityAndReports) {
  BenchConfig cfg;
  cfg.runs = 2;
  cfg.attr_counts = {1, 10};
  cfg.seed = 9;
  auto result = run_benchmark(cfg);
  EXPECT_TRUE(result.failed_cells.empty());
  ASSERT_EQ(result.records.size(), 2u * 2u * 2u * 2u);
  for (const auto& r : result.records) {
    EXPECT_TRUE(r.valid);
    EXPECT_FALSE(r.rss_mb_samples.empty());
    EXPECT_GT(r.elapsed_ms, 0.0);
  }
  auto back = records_from_json(json::parse(records_to_json(result.records).dump()));
  EXPECT_EQ(back, result.records);

  auto summaries = summarize(result.records);
  EXPECT_EQ(summaries.size(), 16u);
  auto parsed = parse_report_json(json::parse(render_report(summaries, ReportFormat::Json)));
  EXPECT_EQ(parsed.size(), summaries.size());

  auto csv = render_report(summaries, ReportFormat::Csv);
  EXPECT_EQ(csv.rfind("scheme,phase,attr_count,metric,min,max,mean,pct_ge_mean\n", 0), 0u);
  EXPECT_NE(csv.find("modexp1024/ecc160,issue,10,time_ms_ratio"), std::string::npos);
  auto md = render_report(summaries, ReportFormat::Markdown);
  EXPECT_NE(md.find("RSS"), std::string::npos);
  EXPECT_EQ(compute_ratios(summaries).size(), 4u);
}

TEST(Grid, SeededRunsIssueIdenticalCredentials) {
  BenchConfig cfg;
  cfg.runs = 1;
  cfg.attr_counts = {3};
  cfg.schemes = {SchemeId::Ecc160};
  cfg.seed = 17;
  auto a = run_benchmark(cfg);
  auto b = run_benchmark(cfg);
  EXPECT_EQ(a.records[0].credential_digest, b.records[0].credential_digest);
  EXPECT_FALSE(a.records[0].credential_digest.empty());
}

TEST(Names, ParseRoundTrip) {
  EXPECT_EQ(parse_mode(mode_name(Mode::OverWire)), Mode::OverWire);
  EXPECT_EQ(parse_phase(phase_name(Phase::Verify)), Phase::Verify);
  EXPECT_EQ(parse_metric(metric_name(Metric::RssMb)), Metric::RssMb);
  EXPECT_FALSE(parse_mode("sideways"));
  EXPECT_EQ(parse_report_format("md"), ReportFormat::Markdown);
}
