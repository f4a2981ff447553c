#pragma once

#include <vector>

#include "markov_cycles/contfrac.hpp"
#include "markov_cycles/geodesic.hpp"
#include "markov_cycles/modfun.hpp"

namespace markov_cycles {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

QuadratureRule gauss_legendre(int n);

struct CycleValue {
  Complex raw;
  double length = 0.0;
  Complex normalized;
  int nodes = 0;
  /// |value(n) - value(ceil(1.5 n))| on the raw value.
  double error_estimate = 0.0;
};

struct IntegrationOptions {
  int nodes = 64;
  /// Relative tolerance on the error estimate; exceeded -> std::runtime_error.
  double tolerance = 1e-8;
  /// Significant digits used when converting surds to doubles.
  int digits = 30;
};

/// f(w) = int_C f(z) sum_i (w_i - w~_i) / ((z - w_i)(z - w~_i)) dz along the
/// unit circle from rho to rho^2.
CycleValue arc_integral(const ModularFunction& f, const CycleData& c, const IntegrationOptions& opts = {});
/// Same value from sqrt(D) sum_i int_rho^rho^2 f(u) / Q_i(u, 1) du with
/// Q_i the minimal form pulled back along the first i letters.
CycleValue segment_integral(const ModularFunction& f, const CycleData& c, const IntegrationOptions& opts = {});

/// Single rule evaluations without refinement.
Complex arc_integral_raw(const ModularFunction& f, const CycleData& c, const QuadratureRule& rule, int digits = 30);
Complex segment_integral_raw(const ModularFunction& f, const CycleData& c, const QuadratureRule& rule);

CycleValue normalized_value(const ModularFunction& f, const QuadSurd& w, const IntegrationOptions& opts = {});
CycleValue normalized_value(const ModularFunction& f, const PeriodicCF& cf, const IntegrationOptions& opts = {});

/// Compensated complex summation.
class KahanSum {
 public:
  void add(Complex x);
  Complex value() const { return sum_; }

 private:
  Complex sum_ = 0;
  Complex carry_ = 0;
};

}  // namespace markov_cycles
