#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "markov_cycles/analysis.hpp"

namespace markov_cycles::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kDepthCap = 12;

struct RunConfig {
  int nodes = 64;
  int digits = 30;
  double q_tolerance = kDefaultQTolerance;
  std::string format = "json";
  std::string out;
  int depth_cap = kDepthCap;

  IntegrationOptions integration() const;
  /// Throws std::invalid_argument on out-of-range settings.
  void validate() const;
};

/// Rounds to 15 significant digits so output is stable across platforms.
double round15(double x);

/// Parses either "(p+q*sqrt(D))/r" or a continued fraction string.
QuadSurd parse_quadratic(const std::string& text);

Json cmd_tree(int depth, const RunConfig& config);
Json cmd_value(const std::string& input, const std::string& function, const RunConfig& config);
Json cmd_cycle(const std::string& input, const RunConfig& config);
BranchScan run_scan(const std::string& branch, const std::string& function, int depth, const RunConfig& config);
Json scan_json(const BranchScan& scan, const RunConfig& config);
std::string scan_csv(const BranchScan& scan);

struct VerifyResult {
  Json report;
  bool pass = false;
};

VerifyResult cmd_verify(const std::string& branch, const std::string& function, int depth, int N,
                        const RunConfig& config);
std::string plot_svg(const BranchScan& scan);

/// Full command line entry point. Exit codes: 0 success, 1 failed check or
/// runtime error, 2 usage error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace markov_cycles::cli
