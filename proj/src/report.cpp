#include <cstdio>
#include <fstream>
#include <sstream>

#include "abc/bench.hpp"
#include "abc/error.hpp"

namespace abc::bench {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

int decimals_for(Metric metric) { return metric == Metric::RssMb ? 2 : 4; }

const StatsSummary* find(const std::vector<StatsSummary>& all, SchemeId id, Phase phase, std::size_t count,
                         Metric metric) {
  for (const auto& s : all) {
    if (s.scheme == id && s.phase == phase && s.attr_count == count && s.metric == metric) return &s;
  }
  return nullptr;
}

json summary_to_json(const StatsSummary& s) {
  return {{"scheme", scheme::scheme_name(s.scheme)},
          {"phase", phase_name(s.phase)},
          {"attr_count", s.attr_count},
          {"metric", metric_name(s.metric)},
          {"min", s.min},
          {"max", s.max},
          {"mean", s.mean},
          {"pct_ge_mean", s.pct_ge_mean},
          {"runs", s.runs}};
}

std::string render_csv(const std::vector<StatsSummary>& summaries) {
  std::ostringstream out;
  out << "scheme,phase,attr_count,metric,min,max,mean,pct_ge_mean\n";
  for (const auto& s : summaries) {
    int dp = decimals_for(s.metric);
    out << scheme::scheme_name(s.scheme) << ',' << phase_name(s.phase) << ',' << s.attr_count << ','
        << metric_name(s.metric) << ',' << fixed(s.min, dp) << ',' << fixed(s.max, dp) << ','
        << fixed(s.mean, dp) << ',' << fixed(s.pct_ge_mean, 2) << '\n';
  }
  for (const auto& r : compute_ratios(summaries)) {
    out << "modexp1024/ecc160," << phase_name(r.phase) << ',' << r.attr_count << ',' << metric_name(r.metric)
        << "_ratio,,," << fixed(r.ratio, 2) << ",\n";
  }
  return out.str();
}

std::string render_markdown(const std::vector<StatsSummary>& summaries) {
  std::ostringstream out;
  out << "# Credential benchmark\n\n"
      << "Time is wall-clock milliseconds on a monotonic clock. Memory is the resident set size (RSS) of "
         "the measuring process in MB, sampled during each phase; per-run value is the largest sample.\n";
  for (auto metric : {Metric::TimeMs, Metric::RssMb}) {
    for (auto phase : {Phase::Issue, Phase::Verify}) {
      bool any = false;
      for (const auto& s : summaries) any = any || (s.metric == metric && s.phase == phase);
      if (!any) continue;
      out << "\n## " << phase_name(phase) << " - " << (metric == Metric::TimeMs ? "time (ms)" : "memory, RSS (MB)")
          << "\n\n| scheme | attributes | runs | min | max | mean | % runs >= mean |\n"
          << "|---|---:|---:|---:|---:|---:|---:|\n";
      for (const auto& s : summaries) {
        if (s.metric != metric || s.phase != phase) continue;
        int dp = decimals_for(metric);
        out << "| " << scheme::scheme_name(s.scheme) << " | " << s.attr_count << " | " << s.runs << " | "
            << fixed(s.min, dp) << " | " << fixed(s.max, dp) << " | " << fixed(s.mean, dp) << " | "
            << fixed(s.pct_ge_mean, 2) << " |\n";
      }
    }
  }
  auto ratios = compute_ratios(summaries);
  if (!ratios.empty()) {
    out << "\n## modexp1024 / ecc160 mean time ratio\n\n"
        << "| phase | attributes | ecc160 mean (ms) | modexp1024 mean (ms) | ratio |\n"
        << "|---|---:|---:|---:|---:|\n";
    for (const auto& r : ratios) {
      out << "| " << phase_name(r.phase) << " | " << r.attr_count << " | " << fixed(r.ecc_mean, 4) << " | "
          << fixed(r.modexp_mean, 4) << " | " << fixed(r.ratio, 2) << " |\n";
    }
  }
  return out.str();
}

std::string render_json(const std::vector<StatsSummary>& summaries) {
  json doc;
  doc["summaries"] = json::array();
  for (const auto& s : summaries) doc["summaries"].push_back(summary_to_json(s));
  doc["ratios"] = json::array();
  for (const auto& r : compute_ratios(summaries)) {
    doc["ratios"].push_back({{"phase", phase_name(r.phase)},
                             {"attr_count", r.attr_count},
                             {"metric", metric_name(r.metric)},
                             {"ecc160_mean", r.ecc_mean},
                             {"modexp1024_mean", r.modexp_mean},
                             {"ratio", r.ratio}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace

std::vector<RatioRow> compute_ratios(const std::vector<StatsSummary>& summaries) {
  std::vector<RatioRow> out;
  for (auto phase : {Phase::Issue, Phase::Verify}) {
    for (const auto& s : summaries) {
      if (s.scheme != SchemeId::Ecc160 || s.phase != phase || s.metric != Metric::TimeMs) continue;
      const auto* other = find(summaries, SchemeId::Modexp1024, phase, s.attr_count, Metric::TimeMs);
      if (other == nullptr) continue;
      RatioRow row;
      row.phase = phase;
      row.attr_count = s.attr_count;
      row.metric = Metric::TimeMs;
      row.ecc_mean = s.mean;
      row.modexp_mean = other->mean;
      row.ratio = s.mean > 0.0 ? other->mean / s.mean : 0.0;
      out.push_back(row);
    }
  }
  return out;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  if (name == "json") return ReportFormat::Json;
  return std::nullopt;
}

std::string render_report(const std::vector<StatsSummary>& summaries, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv:
      return render_csv(summaries);
    case ReportFormat::Markdown:
      return render_markdown(summaries);
    case ReportFormat::Json:
      return render_json(summaries);
  }
  return {};
}

void emit_report(const std::vector<StatsSummary>& summaries, ReportFormat format, const std::string& path) {
  if (summaries.empty()) throw Error(ErrorCode::EmptyCell, "no summaries to report");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  out << render_report(summaries, format);
  if (!out.flush()) throw Error(ErrorCode::IoFailure, "failed writing '" + path + "'");
}

std::vector<StatsSummary> parse_report_json(const json& doc) {
  std::vector<StatsSummary> out;
  try {
    for (const auto& j : doc.at("summaries")) {
      StatsSummary s;
      auto id = scheme::parse_scheme(j.at("scheme").get<std::string>());
      auto phase = parse_phase(j.at("phase").get<std::string>());
      auto metric = parse_metric(j.at("metric").get<std::string>());
      if (!id || !phase || !metric) throw Error(ErrorCode::MalformedJson, "unknown tag in summary");
      s.scheme = *id;
      s.phase = *phase;
      s.metric = *metric;
      s.attr_count = j.at("attr_count").get<std::size_t>();
      s.min = j.at("min").get<double>();
      s.max = j.at("max").get<double>();
      s.mean = j.at("mean").get<double>();
      s.pct_ge_mean = j.at("pct_ge_mean").get<double>();
      s.runs = j.value("runs", std::size_t{0});
      out.push_back(s);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedJson, std::string("bad report: ") + e.what());
  }
  return out;
}

}  // namespace abc::bench
