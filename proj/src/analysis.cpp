#include "markov_cycles/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace markov_cycles {

double bound_lambda() { return (3.0 - std::sqrt(5.0)) / 2.0; }

double delta1(int r, int N) {
  return 80.0 * std::numbers::pi / 3.0 * (2.0 + r * (N + 1.0)) * std::pow(bound_lambda(), r * N - 1);
}

double delta2(int n, int r) {
  return 80.0 * std::numbers::pi / 3.0 * (n + 2.0) * r * std::pow(bound_lambda(), r * n - 1);
}

unsigned worker_threads() {
  if (const char* env = std::getenv("MARKOV_CYCLES_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

template <class Job>
void parallel_for(int count, Job job) {
  const unsigned threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(std::max(count, 1)));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

BranchScan branch_scan(const ModularFunction& f, const Branch& B, int n_max, const IntegrationOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("branch_scan needs n_max >= 1");
  BranchScan scan;
  scan.branch = B;
  scan.function = f.name;
  scan.records.resize(n_max + 1);
  parallel_for(n_max + 1, [&](int n) {
    BranchRecord& rec = scan.records[n];
    rec.n = n;
    rec.markov_number = branch_markov_number(B, n);
    rec.cf = branch_quadratic(B, n);
    const CycleData cycle = cycle_of(value_of(rec.cf));
    const CycleValue v = arc_integral(f, cycle, opts);
    rec.cycle_length = static_cast<long>(cycle.size());
    rec.log_epsilon = cycle.log_epsilon;
    rec.length = cycle.length;
    rec.value = v.raw;
    rec.normalized = v.normalized;
    rec.error_estimate = v.error_estimate;
  });
  for (BranchRecord& rec : scan.records) {
    rec.distance_to_w0 = std::abs(rec.normalized - scan.records[0].normalized);
  }
  return scan;
}

ConvergenceReport check_convergence(const BranchScan& scan, int max_n0, double doubling_threshold) {
  ConvergenceReport report;
  report.max_n0 = max_n0;
  report.doubling_threshold = doubling_threshold;
  const int n_max = static_cast<int>(scan.records.size()) - 1;
  if (n_max < 4) throw std::invalid_argument("convergence check needs a scan to depth >= 4");
  double scale = 0;
  for (const BranchRecord& rec : scan.records) {
    report.distances.push_back(rec.distance_to_w0);
    scale = std::max(scale, std::abs(rec.normalized));
  }
  const double noise = 1e-12 * std::max(1.0, scale);
  if (std::all_of(report.distances.begin(), report.distances.end(), [&](double d) { return d <= noise; })) {
    report.trivial = true;
    report.pass = true;
    return report;
  }
  int n0 = n_max;
  while (n0 > 1 && report.distances[n0 - 1] > report.distances[n0]) --n0;
  report.n0 = n0;
  bool doublings_ok = true;
  for (int n = 3; 2 * n <= n_max; ++n) {
    const double ratio = report.distances[2 * n] / report.distances[n];
    report.doubling_ratios.emplace_back(n, ratio);
    doublings_ok = doublings_ok && ratio < doubling_threshold;
  }
  report.pass = n0 <= max_n0 && doublings_ok;
  return report;
}

namespace {

BoundReport bound_preamble(const BranchScan& scan, double max_f) {
  BoundReport report;
  report.r = scan.branch.r();
  report.max_f = max_f;
  if (scan.branch.kind != BranchKind::Left) {
    report.reason = "explicit constants are stated for left branches other than the leftmost one";
    return report;
  }
  report.applicable = true;
  return report;
}

void finish(BoundReport& report) {
  report.pass = true;
  report.informative = !report.rows.empty();
  for (const auto* rows : {&report.rows, &report.unit_rows}) {
    for (const BoundRow& row : *rows) {
      report.pass = report.pass && row.holds;
    }
  }
  for (const BoundRow& row : report.rows) {
    report.informative = report.informative && row.bound < std::max(1.0, report.max_f);
  }
}

}  // namespace

BoundReport check_delta1_bound(const BranchScan& scan, double max_f, int N) {
  BoundReport report = bound_preamble(scan, max_f);
  report.N = N;
  const int n_max = static_cast<int>(scan.records.size()) - 1;
  if (!report.applicable) return report;
  if (N < 1 || N >= n_max) throw std::invalid_argument("delta1 check needs 1 <= N < n_max");
  const auto& rec = scan.records;
  const double d1 = delta1(report.r, N);
  const Complex K = rec[N].value - static_cast<double>(N) * rec[0].value;
  const double K1 = rec[N].log_epsilon - N * rec[0].log_epsilon;
  for (int n = N + 1; n <= n_max; ++n) {
    BoundRow row{n, std::abs(rec[n].value - static_cast<double>(n) * rec[0].value - K), 2 * d1 * max_f, false};
    row.holds = row.lhs <= row.bound;
    report.rows.push_back(row);
    BoundRow cor{n, std::abs(rec[n].log_epsilon - n * rec[0].log_epsilon - K1), 2 * d1, false};
    cor.holds = cor.lhs <= cor.bound;
    report.unit_rows.push_back(cor);
  }
  finish(report);
  return report;
}

BoundReport check_delta2_bound(const BranchScan& scan, double max_f) {
  BoundReport report = bound_preamble(scan, max_f);
  const int n_max = static_cast<int>(scan.records.size()) - 1;
  if (!report.applicable) return report;
  const auto& rec = scan.records;
  for (int n = 1; n < n_max; ++n) {
    const double d2 = delta2(n, report.r);
    BoundRow row{n, std::abs(rec[n + 1].value - rec[n].value - rec[0].value), d2 * max_f, false};
    row.holds = row.lhs <= row.bound;
    report.rows.push_back(row);
    BoundRow cor{n, std::abs(rec[n + 1].log_epsilon - rec[n].log_epsilon - rec[0].log_epsilon), d2, false};
    cor.holds = cor.lhs <= cor.bound;
    report.unit_rows.push_back(cor);
  }
  finish(report);
  return report;
}

namespace {

Verdict between(double x0, double xn, double x_next, double margin) {
  const double lo = std::min(x0, xn);
  const double hi = std::max(x0, xn);
  if (x_next > lo + margin && x_next < hi - margin) return Verdict::Between;
  if (std::abs(x_next - lo) <= margin || std::abs(x_next - hi) <= margin) return Verdict::Tie;
  return Verdict::Outside;
}

int side_from(const BranchScan& scan, int start, bool real_part) {
  const Complex w0 = scan.records[0].normalized;
  int side = 0;
  for (std::size_t n = static_cast<std::size_t>(start); n < scan.records.size(); ++n) {
    const Complex z = scan.records[n].normalized;
    const double diff = real_part ? z.real() - w0.real() : z.imag() - w0.imag();
    const int s = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
    if (n == static_cast<std::size_t>(start)) {
      side = s;
    } else if (s != side) {
      return 0;
    }
  }
  return side;
}

}  // namespace

InterlacingReport check_interlacing(const BranchScan& scan, int max_start, double margin_factor) {
  InterlacingReport report;
  report.max_start = max_start;
  const int n_max = static_cast<int>(scan.records.size()) - 1;
  if (n_max < 3) throw std::invalid_argument("interlacing check needs a scan to depth >= 3");
  const auto& rec = scan.records;
  double err = 0;
  double spread = 0;
  for (const BranchRecord& r : rec) {
    err = std::max(err, r.error_estimate / r.length);
    spread = std::max(spread, r.distance_to_w0);
  }
  report.margin = margin_factor * err;
  if (spread <= 1e-12 * std::max(1.0, std::abs(rec[0].normalized))) {
    report.trivial = true;
    report.pass = true;
    return report;
  }
  for (int n = 1; n < n_max; ++n) {
    InterlacingRow row;
    row.n = n;
    row.re = between(rec[0].normalized.real(), rec[n].normalized.real(), rec[n + 1].normalized.real(), report.margin);
    row.im = between(rec[0].normalized.imag(), rec[n].normalized.imag(), rec[n + 1].normalized.imag(), report.margin);
    report.rows.push_back(row);
  }
  int start = n_max;
  while (start > 1) {
    const InterlacingRow& row = report.rows[start - 2];
    if (row.re != Verdict::Between || row.im != Verdict::Between) break;
    --start;
  }
  if (start < n_max) {
    report.start = start;
    report.re_side = side_from(scan, start, true);
    report.im_side = side_from(scan, start, false);
  }
  report.pass = report.start.has_value() && *report.start <= max_start;
  return report;
}

std::vector<OrientationRow> check_orientation(int depth, const IntegrationOptions& opts) {
  const std::vector<TreeNode> nodes = enumerate_tree(depth);
  std::vector<OrientationRow> rows(nodes.size());
  const ModularFunction j = j_function();
  parallel_for(static_cast<int>(nodes.size()), [&](int i) {
    const CycleValue v = normalized_value(j, theta_from_triple(nodes[i].triple), opts);
    rows[i] = {nodes[i].address, v.normalized.imag(), v.normalized.imag() > 0};
  });
  return rows;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Between: return "between";
    case Verdict::Tie: return "tie";
    case Verdict::Outside: return "outside";
  }
  return "";
}

}  // namespace markov_cycles
