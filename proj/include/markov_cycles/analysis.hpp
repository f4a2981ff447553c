#pragma once

#include <optional>
#include <string>
#include <vector>

#include "markov_cycles/cycleint.hpp"
#include "markov_cycles/markov.hpp"

namespace markov_cycles {

/// (2 / (1 + sqrt 5))^2 = (3 - sqrt 5) / 2.
double bound_lambda();
/// (80 pi / 3) (2 + r (N + 1)) lambda^(r N - 1).
double delta1(int r, int N);
/// (80 pi / 3) (n + 2) r lambda^(r n - 1).
double delta2(int n, int r);

struct BranchRecord {
  int n = 0;
  Integer markov_number;
  PeriodicCF cf;
  long cycle_length = 0;
  double log_epsilon = 0.0;
  /// 2 log epsilon.
  double length = 0.0;
  Complex value;
  Complex normalized;
  double error_estimate = 0.0;
  /// |f^nor(w_n) - f^nor(w_0)|.
  double distance_to_w0 = 0.0;
};

struct BranchScan {
  Branch branch;
  std::string function;
  std::vector<BranchRecord> records;
};

/// Number of worker threads: MARKOV_CYCLES_THREADS if set, else hardware.
unsigned worker_threads();

/// Values along B for n = 0..n_max. Independent n run in parallel; the
/// result does not depend on the thread count.
BranchScan branch_scan(const ModularFunction& f, const Branch& B, int n_max, const IntegrationOptions& opts = {});

struct ConvergenceReport {
  bool trivial = false;
  bool pass = false;
  /// Least n0 with d strictly decreasing on n0..n_max.
  int n0 = 0;
  int max_n0 = 3;
  double doubling_threshold = 1 / 1.6;
  /// (n, d_2n / d_n) for n >= 3 with 2n <= n_max.
  std::vector<std::pair<int, double>> doubling_ratios;
  std::vector<double> distances;
};

ConvergenceReport check_convergence(const BranchScan& scan, int max_n0 = 3, double doubling_threshold = 1 / 1.6);

struct BoundRow {
  int n = 0;
  double lhs = 0.0;
  double bound = 0.0;
  bool holds = false;
};

struct BoundReport {
  bool applicable = false;
  std::string reason;
  bool pass = false;
  /// Every bound used is below 1 (times max|f|).
  bool informative = false;
  int r = 0;
  int N = 0;
  double max_f = 0.0;
  std::vector<BoundRow> rows;
  /// Logarithm-of-unit version from the f = 1 scan.
  std::vector<BoundRow> unit_rows;
};

/// |f(w_n) - n f(w_0) - K^| <= 2 delta1(r, N) max|f| for N < n <= n_max with
/// K^ = f(w_N) - N f(w_0); and the same for log epsilon with bound 2 delta1.
BoundReport check_delta1_bound(const BranchScan& scan, double max_f, int N);
/// |f(w_{n+1}) - f(w_n) - f(w_0)| <= delta2(n, r) max|f| for 1 <= n < n_max;
/// and |log e_{n+1} - log e_n - log e_0| <= delta2(n, r).
BoundReport check_delta2_bound(const BranchScan& scan, double max_f);

enum class Verdict { Between, Tie, Outside };

struct InterlacingRow {
  int n = 0;
  Verdict re = Verdict::Outside;
  Verdict im = Verdict::Outside;
};

struct InterlacingReport {
  bool trivial = false;
  bool pass = false;
  /// Least N with both parts strictly between for N <= n < n_max.
  std::optional<int> start;
  int max_start = 4;
  double margin = 0.0;
  /// Side of f^nor(w_0) on which f^nor(w_n) lies from `start` on: +1 above,
  /// -1 below, 0 mixed.
  int re_side = 0;
  int im_side = 0;
  std::vector<InterlacingRow> rows;
};

/// Re and Im of f^nor(w_{n+1}) strictly between those of f^nor(w_0) and
/// f^nor(w_n), with margin 10x the quadrature error estimate.
InterlacingReport check_interlacing(const BranchScan& scan, int max_start = 4, double margin_factor = 10.0);

struct OrientationRow {
  TreeAddress address;
  double im = 0.0;
  bool positive = false;
};

/// Sign of Im j^nor at every node up to depth.
std::vector<OrientationRow> check_orientation(int depth, const IntegrationOptions& opts = {});

const char* verdict_name(Verdict v);

}  // namespace markov_cycles
