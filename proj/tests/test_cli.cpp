#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "padic/cli.hpp"
#include "padic/report.hpp"

using namespace padic;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "padic");
  std::ostringstream out, err;
  const int code = cli::main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::string strip_config(const std::string& csv) { return csv.substr(csv.find('\n') + 1); }

}  // namespace

TEST(Cli, TrailingZeros) {
  const Outcome o = invoke({"zeros", "--n", "100"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(strip_config(o.out), "zeros\n24\n");
  EXPECT_EQ(o.out.rfind("# config: ", 0), 0u);
}

TEST(Cli, ValuationOfLargeN) {
  const Outcome o = invoke({"valuation", "--n", "1000000000000000000000000", "--p", "2", "--format", "json"});
  ASSERT_EQ(o.code, 0);
  const Json j = Json::parse(o.out);
  // 10^24 = 2^24 * 5^24, so e_2 = 10^24 - s_2(10^24)
  EXPECT_EQ(j["config"]["n"], "1000000000000000000000000");
  EXPECT_FALSE(j["result"]["valuation"].get<std::string>().empty());
}

TEST(Cli, PowerCensusCsv) {
  const Outcome o = invoke({"count-powers", "--p", "5", "--h", "2", "--m", "2", "--x", "10"});
  ASSERT_EQ(o.code, 0);
  const std::string body = strip_config(o.out);
  EXPECT_NE(body.find("\n0,7,"), std::string::npos) << body;
  EXPECT_NE(body.find("\n1,3,"), std::string::npos) << body;
}

TEST(Cli, TjDecompositionSumsToDirectCount) {
  const Outcome o = invoke({"count-tj", "--p", "5", "--m", "2", "--x", "1000", "--r", "1", "--format", "json"});
  ASSERT_EQ(o.code, 0);
  const Json j = Json::parse(o.out);
  EXPECT_EQ(j["result"]["sum"], j["result"]["direct_count"]);
  EXPECT_EQ(j["result"]["T"].size(), 8u);
}

TEST(Cli, CoverJsonListsEveryResidue) {
  const Outcome o = invoke({"cover", "--p", "2", "--h", "2", "--m", "2", "--format", "json"});
  ASSERT_EQ(o.code, 0);
  const Json j = Json::parse(o.out);
  std::set<std::uint64_t> seen;
  for (const auto& c : j["result"]["certificates"]) seen.insert(c["residue"].get<std::uint64_t>());
  EXPECT_EQ(seen, (std::set<std::uint64_t>{0, 1}));
}

TEST(Cli, WitnessCsvOmitsNUnlessAsked) {
  const Outcome plain = invoke({"witness", "--p", "2", "--h", "2", "--m", "2", "--format", "json"});
  const Outcome full = invoke({"witness", "--p", "2", "--h", "2", "--m", "2", "--format", "json", "--with-N"});
  ASSERT_EQ(plain.code, 0);
  ASSERT_EQ(full.code, 0);
  EXPECT_FALSE(Json::parse(plain.out)["result"].contains("N"));
  EXPECT_TRUE(Json::parse(full.out)["result"].contains("N"));
}

TEST(Cli, SmallRangeAndCBound) {
  const Outcome sr = invoke({"small-range", "--p", "5", "--h", "2", "--m", "3"});
  ASSERT_EQ(sr.code, 0);
  EXPECT_EQ(strip_config(sr.out), "r\n0\n1\n");
  const Outcome cb = invoke({"c-bound", "--p", "2", "--h", "2", "--m", "2"});
  ASSERT_EQ(cb.code, 0);
  EXPECT_EQ(strip_config(cb.out).rfind("c_bound\n", 0), 0u);
}

TEST(Cli, DecayReportsSummary) {
  const Outcome o = invoke({"decay", "--kind", "squares", "--b", "2", "--alpha", "1/2", "--xmin", "1024", "--xmax",
                            "65536"});
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("# summary: "), std::string::npos);
  EXPECT_NE(o.out.find("sigma_hat"), std::string::npos);
}

TEST(Cli, ExitCodeInvalidParameters) {
  EXPECT_EQ(invoke({"count-powers", "--p", "4", "--m", "2", "--x", "10"}).code, cli::kInvalidParameters);
  EXPECT_EQ(invoke({"count-powers", "--p", "2", "--m", "2", "--d", "3", "--a", "3", "--x", "10"}).code,
            cli::kInvalidParameters);
  EXPECT_EQ(invoke({"count-powers", "--p", "2", "--x", "10"}).code, cli::kInvalidParameters);
  EXPECT_EQ(invoke({"zeros", "--n", "12x"}).code, cli::kInvalidParameters);
  EXPECT_EQ(invoke({}).code, cli::kInvalidParameters);
  const Outcome o = invoke({"witness", "--p", "2", "--m", "2", "--j", "2"});
  EXPECT_EQ(o.code, cli::kInvalidParameters);
  EXPECT_EQ(o.err.rfind("error: ", 0), 0u);
}

TEST(Cli, ExitCodeDegeneratePhase) {
  const Outcome o = invoke({"decay", "--kind", "primes", "--b", "3", "--alpha", "1/2", "--xmin", "1024", "--xmax",
                            "4194304"});
  EXPECT_EQ(o.code, cli::kDegeneratePhase);
  EXPECT_NE(o.err.find("(b-1)*alpha"), std::string::npos);
}

TEST(Cli, ExitCodeResourceCap) {
  ::setenv("PADIC_MAX_X", "1000", 1);
  const Outcome o = invoke({"count-powers", "--p", "2", "--m", "2", "--x", "100000"});
  ::unsetenv("PADIC_MAX_X");
  EXPECT_EQ(o.code, cli::kResourceCap);
  EXPECT_EQ(invoke({"small-range", "--p", "2", "--m", "2", "--bound", "1000000000000"}).code, cli::kResourceCap);
}

TEST(Cli, OutputIdenticalAcrossThreadCounts) {
  const std::vector<std::vector<std::string>> commands{
      {"count-powers", "--p", "5", "--h", "2", "--m", "2", "--d", "3", "--a", "1", "--x", "200000"},
      {"count-primes", "--p", "3", "--m", "2", "--d", "4", "--a", "1", "--x", "200000"},
      {"cover", "--p", "3", "--h", "3", "--m", "3", "--d", "2", "--a", "1"},
  };
  for (const auto& cmd : commands) {
    std::string first;
    for (const char* t : {"1", "4", "8"}) {
      auto args = cmd;
      args.insert(args.end(), {"--threads", t});
      const Outcome o = invoke(args);
      ASSERT_EQ(o.code, 0) << o.err;
      if (first.empty()) first = o.out;
      EXPECT_EQ(o.out, first) << cmd.front() << " threads=" << t;
    }
  }
}

TEST(Cli, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "padic_cli_output.csv";
  std::filesystem::remove(path);
  const Outcome o = invoke({"zeros", "--n", "25", "--output", path.string()});
  ASSERT_EQ(o.code, 0);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(strip_config(ss.str()), "zeros\n6\n");
  std::filesystem::remove(path);
}

TEST(Cli, ConfigEchoRoundTrips) {
  const Outcome o = invoke({"count-primes", "--p", "3", "--m", "2", "--d", "4", "--a", "1", "--x", "1000"});
  ASSERT_EQ(o.code, 0);
  const std::string line = o.out.substr(0, o.out.find('\n'));
  const Json cfg = Json::parse(line.substr(std::string("# config: ").size()));
  EXPECT_EQ(cfg["subcommand"], "count-primes");
  EXPECT_EQ(cfg["params"]["d"], 4);
  EXPECT_EQ(cfg["x"], 1000);
}
