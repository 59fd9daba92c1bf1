#include "abc/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "abc/bench.hpp"
#include "abc/error.hpp"
#include "abc/net.hpp"
#include "abc/rng.hpp"
#include "abc/scheme.hpp"
#include "abc/services.hpp"
#include "abc/wire.hpp"

namespace abc::cli {

namespace {

using wire::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Verification ran and said no.
struct Rejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedJson, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw Error(ErrorCode::IoFailure, "cannot write '" + path + "'");
}

std::unique_ptr<Rng> make_rng(const std::optional<std::uint64_t>& seed) {
  if (seed) return std::make_unique<SeededRng>(*seed);
  return std::make_unique<SystemRng>();
}

scheme::SchemeId require_scheme(const std::string& name) {
  auto id = scheme::parse_scheme(name);
  if (!id) throw UsageError("unknown scheme '" + name + "' (expected ecc160 or modexp1024)");
  return *id;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

scheme::AttributeSet attributes_from_flags(const std::string& attrs, std::size_t count) {
  if (attrs.empty()) return scheme::fixture_attributes(count);
  return scheme::AttributeSet::from_decimals(split_csv(attrs));
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::IoFailure:
    case ErrorCode::ConnectionFailed:
    case ErrorCode::UnexpectedEof:
    case ErrorCode::ProtocolError:
    case ErrorCode::MalformedJson:
    case ErrorCode::FrameTooLarge:
    case ErrorCode::UnsupportedPlatform:
      return kExitIo;
    case ErrorCode::MalformedPoint:
      return kExitInvalid;
    default:
      return kExitUsage;
  }
}

struct KeygenOptions {
  std::string key_out;
  std::string pub_out;
  std::string scheme = "all";
  std::optional<std::uint64_t> seed;
};

struct IssueOptions {
  std::string scheme;
  std::string attrs;
  std::size_t count = 10;
  std::string key;
  std::optional<std::string> remote;
  std::string out;
  std::optional<std::uint64_t> seed;
};

struct VerifyOptions {
  std::string cred;
  std::string pub;
  std::optional<std::string> remote;
};

struct ServeOptions {
  std::string key;
  std::optional<std::string> listen;
};

struct BenchOptions {
  std::string config;
  std::string schemes;
  std::string attr_counts;
  std::optional<std::size_t> runs;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::string out = "bench-out";
  std::optional<int> interval_ms;
  std::optional<std::string> issuer;
  std::optional<std::string> verifier;
};

struct ReportOptions {
  std::string records;
  std::string format = "markdown";
  std::string out;
};

int run_keygen(const KeygenOptions& o, std::ostream& out) {
  if (o.scheme != "all" && !scheme::parse_scheme(o.scheme)) {
    throw UsageError("--scheme must be ecc160, modexp1024 or all");
  }
  auto rng = make_rng(o.seed);
  wire::IssuerKeys keys;
  if (o.scheme == "all" || o.scheme == "ecc160") keys.ecc = scheme::ecc_keygen(*rng);
  if (o.scheme == "all" || o.scheme == "modexp1024") keys.modexp = scheme::rsa_keygen(*rng);
  write_text_file(o.key_out, wire::encode_issuer_keys(keys).dump(2) + "\n");
  write_text_file(o.pub_out, wire::encode_public_keys(wire::public_keys(keys)).dump(2) + "\n");
  out << "wrote " << o.key_out << " and " << o.pub_out << '\n';
  return kExitOk;
}

int run_issue(const IssueOptions& o, std::ostream& out) {
  const auto id = require_scheme(o.scheme);
  const auto attrs = attributes_from_flags(o.attrs, o.count);
  if (!o.remote && o.key.empty()) throw UsageError("issue needs --key for local issuance or --remote");

  json credential;
  if (o.remote) {
    auto endpoint = net::resolve_endpoint(o.remote, net::kIssuerEnv, "127.0.0.1", net::kDefaultIssuerPort);
    auto result = services::client_issue(endpoint, id, attrs);
    credential = std::move(result.credential);
    std::cerr << "issued remotely in " << result.round_trip_ms << " ms round trip (issuer " << result.issue_ms
              << " ms)\n";
  } else {
    auto keys = wire::decode_issuer_keys(read_json_file(o.key));
    auto rng = make_rng(o.seed);
    if (id == scheme::SchemeId::Ecc160) {
      if (!keys.ecc) throw UsageError("key file has no ecc160 key");
      credential = wire::encode_credential(scheme::ecc_issue(*keys.ecc, attrs, *rng));
    } else {
      if (!keys.modexp) throw UsageError("key file has no modexp1024 key");
      credential = wire::encode_credential(scheme::rsa_issue(*keys.modexp, attrs));
    }
  }
  if (o.out.empty()) {
    out << credential.dump(2) << '\n';
  } else {
    write_text_file(o.out, credential.dump(2) + "\n");
  }
  return kExitOk;
}

int run_verify(const VerifyOptions& o, std::ostream& out) {
  if (!o.remote && o.pub.empty()) throw UsageError("verify needs --pub for local verification or --remote");
  json credential = read_json_file(o.cred);
  const auto id = require_scheme(wire::credential_scheme(credential));

  bool valid = false;
  if (o.remote) {
    auto endpoint = net::resolve_endpoint(o.remote, net::kVerifierEnv, "127.0.0.1", net::kDefaultVerifierPort);
    valid = services::client_verify(endpoint, credential).valid;
  } else {
    auto keys = wire::decode_public_keys(read_json_file(o.pub));
    try {
      if (id == scheme::SchemeId::Ecc160) {
        if (!keys.ecc) throw UsageError("public key file has no ecc160 key");
        valid = scheme::ecc_verify(*keys.ecc, wire::decode_ecc_credential(credential));
      } else {
        if (!keys.modexp) throw UsageError("public key file has no modexp1024 key");
        valid = scheme::rsa_verify(*keys.modexp, wire::decode_modexp_credential(credential));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MalformedPoint) throw;
      valid = false;
    }
  }
  if (!valid) throw Rejected("invalid");
  out << "valid\n";
  return kExitOk;
}

int run_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  bench::BenchConfig cfg;
  if (!o.config.empty()) cfg = bench::BenchConfig::from_json(read_json_file(o.config));
  if (!o.schemes.empty()) {
    cfg.schemes.clear();
    for (const auto& s : split_csv(o.schemes)) cfg.schemes.push_back(require_scheme(s));
  }
  if (!o.attr_counts.empty()) {
    cfg.attr_counts.clear();
    for (const auto& c : split_csv(o.attr_counts)) {
      try {
        cfg.attr_counts.push_back(static_cast<std::size_t>(std::stoul(c)));
      } catch (const std::exception&) {
        throw UsageError("--attr-counts must be comma-separated integers");
      }
    }
  }
  if (o.runs) cfg.runs = *o.runs;
  if (!o.mode.empty()) {
    auto mode = bench::parse_mode(o.mode);
    if (!mode) throw UsageError("--mode must be in-process or over-wire");
    cfg.mode = *mode;
  }
  if (o.seed) cfg.seed = o.seed;
  if (o.interval_ms) cfg.memory_sample_interval = std::chrono::milliseconds(*o.interval_ms);
  cfg.issuer = net::resolve_endpoint(o.issuer, net::kIssuerEnv, cfg.issuer.host, cfg.issuer.port);
  cfg.verifier = net::resolve_endpoint(o.verifier, net::kVerifierEnv, cfg.verifier.host, cfg.verifier.port);
  if (!o.out.empty()) cfg.output_path = o.out;
  if (cfg.output_path.empty()) cfg.output_path = "bench-out";
  cfg.validate();

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_path, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create '" + cfg.output_path + "': " + ec.message());

  auto result = bench::run_benchmark(cfg, [&](const std::string& msg) { err << "bench: " << msg << '\n'; });
  const std::filesystem::path dir(cfg.output_path);
  write_text_file((dir / "records.json").string(), bench::records_to_json(result.records).dump() + "\n");
  if (result.records.empty()) {
    err << "bench: no records collected\n";
    return kExitIo;
  }
  auto summaries = bench::summarize(result.records);
  bench::emit_report(summaries, bench::ReportFormat::Csv, (dir / "summary.csv").string());
  bench::emit_report(summaries, bench::ReportFormat::Markdown, (dir / "summary.md").string());
  bench::emit_report(summaries, bench::ReportFormat::Json, (dir / "summary.json").string());

  out << bench::render_report(summaries, bench::ReportFormat::Markdown);
  out << "\nrecords: " << result.records.size() << ", reports in " << cfg.output_path << '\n';
  for (const auto& cell : result.failed_cells) err << "bench: cell " << cell << " aborted (partial results)\n";
  return result.failed_cells.empty() ? kExitOk : kExitIo;
}

int run_report(const ReportOptions& o, std::ostream& out) {
  auto format = bench::parse_report_format(o.format);
  if (!format) throw UsageError("--format must be csv, markdown or json");
  auto records = bench::records_from_json(read_json_file(o.records));
  auto summaries = bench::summarize(records);
  if (o.out.empty()) {
    out << bench::render_report(summaries, *format);
  } else {
    bench::emit_report(summaries, *format, o.out);
  }
  return kExitOk;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attribute-based credential performance lab", "abc"};
  app.require_subcommand(1);

  KeygenOptions keygen;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate issuer keys (secret and public JSON files)");
  keygen_cmd->add_option("--out", keygen.key_out, "Issuer key file to write")->required();
  keygen_cmd->add_option("--pub", keygen.pub_out, "Public key file to write")->required();
  keygen_cmd->add_option("--scheme", keygen.scheme, "ecc160, modexp1024 or all");
  keygen_cmd->add_option("--seed", keygen.seed, "Deterministic RNG seed");

  IssueOptions issue;
  auto* issue_cmd = app.add_subcommand("issue", "Issue a credential locally or through an issuer service");
  issue_cmd->add_option("--scheme", issue.scheme, "ecc160 or modexp1024")->required();
  issue_cmd->add_option("--attrs", issue.attrs, "Comma-separated decimal attributes");
  issue_cmd->add_option("--count", issue.count, "Number of fixture attributes when --attrs is omitted")
      ->check(CLI::Range(1, 10));
  issue_cmd->add_option("--key", issue.key, "Issuer key file (local issuance)");
  issue_cmd->add_option("--remote", issue.remote, "Issuer endpoint host:port (default $ABC_ISSUER_ADDR)")
      ->expected(0, 1);
  issue_cmd->add_option("--out", issue.out, "Credential file to write (default stdout)");
  issue_cmd->add_option("--seed", issue.seed, "Deterministic RNG seed");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a credential file");
  verify_cmd->add_option("--cred", verify.cred, "Credential file")->required();
  verify_cmd->add_option("--pub", verify.pub, "Public key file (local verification)");
  verify_cmd->add_option("--remote", verify.remote, "Verifier endpoint host:port (default $ABC_VERIFIER_ADDR)")
      ->expected(0, 1);

  ServeOptions serve_issuer;
  auto* serve_issuer_cmd = app.add_subcommand("serve-issuer", "Run the issuer service");
  serve_issuer_cmd->add_option("--key", serve_issuer.key, "Issuer key file")->required();
  serve_issuer_cmd->add_option("--listen", serve_issuer.listen, "host:port (default $ABC_ISSUER_ADDR or :7001)");

  ServeOptions serve_verifier;
  auto* serve_verifier_cmd = app.add_subcommand("serve-verifier", "Run the verifier service");
  serve_verifier_cmd->add_option("--pub", serve_verifier.key, "Public key file")->required();
  serve_verifier_cmd->add_option("--listen", serve_verifier.listen,
                                 "host:port (default $ABC_VERIFIER_ADDR or :7002)");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Run the issuance/verification benchmark grid");
  bench_cmd->add_option("--config", bench_opts.config, "Bench config JSON file");
  bench_cmd->add_option("--schemes", bench_opts.schemes, "Comma-separated schemes");
  bench_cmd->add_option("--attr-counts", bench_opts.attr_counts, "Comma-separated attribute counts");
  bench_cmd->add_option("--runs", bench_opts.runs, "Runs per cell");
  bench_cmd->add_option("--mode", bench_opts.mode, "in-process or over-wire");
  bench_cmd->add_option("--seed", bench_opts.seed, "Deterministic RNG seed");
  bench_cmd->add_option("--out", bench_opts.out, "Output directory");
  bench_cmd->add_option("--interval-ms", bench_opts.interval_ms, "Memory sampling interval");
  bench_cmd->add_option("--issuer", bench_opts.issuer, "Issuer endpoint (over-wire mode)");
  bench_cmd->add_option("--verifier", bench_opts.verifier, "Verifier endpoint (over-wire mode)");

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Summarize a records.json file");
  report_cmd->add_option("--records", report.records, "records.json from a bench run")->required();
  report_cmd->add_option("--format", report.format, "csv, markdown or json");
  report_cmd->add_option("--out", report.out, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*keygen_cmd) return run_keygen(keygen, out);
    if (*issue_cmd) return run_issue(issue, out);
    if (*verify_cmd) return run_verify(verify, out);
    if (*serve_issuer_cmd) {
      auto keys = wire::decode_issuer_keys(read_json_file(serve_issuer.key));
      services::issuer_serve(
          net::resolve_endpoint(serve_issuer.listen, net::kIssuerEnv, "0.0.0.0", net::kDefaultIssuerPort),
          std::move(keys));
    }
    if (*serve_verifier_cmd) {
      auto keys = wire::decode_public_keys(read_json_file(serve_verifier.key));
      services::verifier_serve(
          net::resolve_endpoint(serve_verifier.listen, net::kVerifierEnv, "0.0.0.0", net::kDefaultVerifierPort),
          std::move(keys));
    }
    if (*bench_cmd) return run_bench(bench_opts, out, err);
    if (*report_cmd) return run_report(report, out);
  } catch (const Rejected& e) {
    out << e.what() << '\n';
    return kExitInvalid;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace abc::cli
