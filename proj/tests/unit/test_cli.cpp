#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "abc/cli.hpp"

namespace fs = std::filesystem;
using abc::cli::parse_and_dispatch;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("abc-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"issue", "--bogus"}).code, 1);
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("serve-verifier"), std::string::npos);
  EXPECT_EQ(run({"issue", "--scheme", "dsa", "--key", path("k.json")}).code, 1);
  EXPECT_EQ(run({"report", "--records", path("r.json"), "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"bench", "--runs", "0", "--out", path("b")}).code, 1);
  EXPECT_FALSE(fs::exists(path("b")));
}

TEST_F(CliTest, KeygenIssueVerify) {
  ASSERT_EQ(run({"keygen", "--out", path("k.json"), "--pub", path("p.json"), "--seed", "3"}).code, 0);
  EXPECT_FALSE(json::parse(std::ifstream(path("p.json"))).at("ecc160").contains("secret"));

  for (std::string scheme : {"ecc160", "modexp1024"}) {
    std::string cred = path(scheme + ".json");
    ASSERT_EQ(run({"issue", "--scheme", scheme, "--key", path("k.json"), "--out", cred, "--count", "5"}).code, 0);
    auto ok = run({"verify", "--cred", cred, "--pub", path("p.json")});
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "valid\n");

    auto doc = json::parse(std::ifstream(cred));
    EXPECT_EQ(doc["attributes"].size(), 5u);
    doc["attributes"][1] = "42";
    std::ofstream(path("bad.json")) << doc.dump();
    auto bad = run({"verify", "--cred", path("bad.json"), "--pub", path("p.json")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(bad.out, "invalid\n");
  }
  auto explicit_attrs = run({"issue", "--scheme", "ecc160", "--key", path("k.json"), "--attrs", "7,8,9"});
  EXPECT_EQ(explicit_attrs.code, 0);
  EXPECT_EQ(json::parse(explicit_attrs.out)["attributes"], json({"7", "8", "9"}));
  EXPECT_EQ(run({"issue", "--scheme", "ecc160", "--key", path("k.json"), "--attrs", "1,2,3,4,5,6,7,8,9,10,11"}).code,
            1);
}

TEST_F(CliTest, IoFailures) {
  EXPECT_EQ(run({"verify", "--cred", path("missing.json"), "--pub", path("p.json")}).code, 3);
  EXPECT_EQ(run({"issue", "--scheme", "ecc160", "--remote", "127.0.0.1:1"}).code, 3);
}

TEST_F(CliTest, BenchThenReport) {
  auto bench = run({"bench", "--runs", "2", "--attr-counts", "1,5", "--seed", "5", "--out", path("out")});
  ASSERT_EQ(bench.code, 0) << bench.err;
  for (const char* f : {"records.json", "summary.csv", "summary.md", "summary.json"}) {
    EXPECT_TRUE(fs::exists(path("out") + "/" + f)) << f;
  }
  EXPECT_NE(bench.out.find("mean time ratio"), std::string::npos);
  auto csv = run({"report", "--records", path("out") + "/records.json", "--format", "csv"});
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("scheme,phase,attr_count,metric", 0), 0u);
  auto js = run({"report", "--records", path("out") + "/records.json", "--format", "json", "--out", path("s.json")});
  EXPECT_EQ(js.code, 0);
  EXPECT_EQ(json::parse(std::ifstream(path("s.json")))["summaries"].size(), 16u);
}
