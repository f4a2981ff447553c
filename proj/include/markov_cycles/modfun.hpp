#pragma once

#include <complex>
#include <functional>
#include <string>

namespace markov_cycles {

using Complex = std::complex<double>;

inline constexpr double kDefaultQTolerance = 1e-18;
inline constexpr int kQSeriesTermCap = 200;

/// A function on the upper half plane invariant under PSL(2, Z).
struct ModularFunction {
  std::string name;
  std::function<Complex(Complex)> evaluate;
  /// Upper estimate of max |f| on the arc, or 0 if unknown.
  double arc_maximum = 0.0;

  Complex operator()(Complex z) const { return evaluate(z); }
};

struct EisensteinValues {
  Complex E4;
  Complex E6;
};

/// E4 and E6 by their q-expansions, truncated once the next term of each
/// falls below tolerance. Throws std::domain_error for Im z <= 0 and when the
/// cap of 200 terms is reached first.
EisensteinValues eisenstein(Complex z, double tolerance = kDefaultQTolerance);
Complex eval_E4(Complex z, double tolerance = kDefaultQTolerance);
Complex eval_E6(Complex z, double tolerance = kDefaultQTolerance);
/// (E4^3 - E6^2) / 1728.
Complex eval_Delta(Complex z, double tolerance = kDefaultQTolerance);
/// 1728 E4^3 / (E4^3 - E6^2).
Complex eval_j(Complex z, double tolerance = kDefaultQTolerance);
Complex eval_const_one(Complex z);

ModularFunction j_function(double tolerance = kDefaultQTolerance);
ModularFunction one_function();
/// "j" or "one".
ModularFunction function_by_name(const std::string& name, double tolerance = kDefaultQTolerance);

/// Point e^{i theta} of the arc from rho (theta = pi/3) to rho^2.
Complex arc_point(double theta);

/// max |f| over Chebyshev-Lobatto samples of theta in [pi/3, 2pi/3], refined
/// around the best sample, times 1.01.
double max_on_arc(const ModularFunction& f, int samples = 64);

}  // namespace markov_cycles
