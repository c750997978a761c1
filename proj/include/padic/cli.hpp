#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace padic::cli {

enum class Format { csv, json };

enum ExitCode : int {
  kOk = 0,
  kInvalidParameters = 2,
  kDegeneratePhase = 3,
  kResourceCap = 4,
  kInternalError = 5,
};

/// Fully parsed command line. Fields irrelevant to the subcommand are ignored.
struct RunConfig {
  std::string subcommand;
  std::uint64_t p = 2;
  unsigned h = 2;
  std::uint64_t m = 2;
  std::uint64_t d = 1;
  std::uint64_t a = 0;
  std::uint64_t r = 0;
  std::uint64_t j = 0;
  std::uint64_t x = 0;
  std::string n = "0";        // valuation / zeros argument, decimal
  std::string x_big = "0";    // density bound, decimal
  std::optional<std::string> bound;
  std::optional<unsigned> u;
  std::uint64_t max_candidates = 1'000'000;
  std::string kind = "squares";
  std::uint64_t base = 2;
  std::string alpha = "0";
  std::string beta = "0";
  std::string gamma = "0";
  std::uint64_t xmin = 1024;
  std::uint64_t xmax = 1u << 20;
  bool with_N = false;
  Format format = Format::csv;
  unsigned threads = 1;
  std::string output;  // empty: standard output
};

/// Executes one subcommand and writes its report. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and runs it.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padic::cli
