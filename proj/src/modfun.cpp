#include "markov_cycles/modfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace markov_cycles {

namespace {

struct DivisorSums {
  std::array<double, kQSeriesTermCap + 1> sigma3{};
  std::array<double, kQSeriesTermCap + 1> sigma5{};

  DivisorSums() {
    for (int d = 1; d <= kQSeriesTermCap; ++d) {
      const double d3 = std::pow(d, 3);
      const double d5 = std::pow(d, 5);
      for (int n = d; n <= kQSeriesTermCap; n += d) {
        sigma3[n] += d3;
        sigma5[n] += d5;
      }
    }
  }
};

const DivisorSums& divisor_sums() {
  static const DivisorSums sums;
  return sums;
}

}  // namespace

EisensteinValues eisenstein(Complex z, double tolerance) {
  if (!(z.imag() > 0)) throw std::domain_error("modular function evaluated off the upper half plane");
  const DivisorSums& s = divisor_sums();
  const Complex q = std::exp(Complex(0, 2 * std::numbers::pi) * z);
  const double abs_q = std::abs(q);
  Complex e4 = 0, e6 = 0;
  Complex qn = 1;
  double abs_qn = 1;
  for (int n = 1; n <= kQSeriesTermCap; ++n) {
    qn *= q;
    abs_qn *= abs_q;
    e4 += s.sigma3[n] * qn;
    e6 += s.sigma5[n] * qn;
    if (n == kQSeriesTermCap) break;
    const double next4 = 240 * s.sigma3[n + 1] * abs_qn * abs_q;
    const double next6 = 504 * s.sigma5[n + 1] * abs_qn * abs_q;
    if (next4 < tolerance && next6 < tolerance) {
      return {1.0 + 240.0 * e4, 1.0 - 504.0 * e6};
    }
  }
  throw std::domain_error("q-series tolerance not reached within 200 terms; Im z too small");
}

Complex eval_E4(Complex z, double tolerance) { return eisenstein(z, tolerance).E4; }

Complex eval_E6(Complex z, double tolerance) { return eisenstein(z, tolerance).E6; }

Complex eval_Delta(Complex z, double tolerance) {
  const EisensteinValues e = eisenstein(z, tolerance);
  return (e.E4 * e.E4 * e.E4 - e.E6 * e.E6) / 1728.0;
}

Complex eval_j(Complex z, double tolerance) {
  const EisensteinValues e = eisenstein(z, tolerance);
  const Complex cube = e.E4 * e.E4 * e.E4;
  return 1728.0 * cube / (cube - e.E6 * e.E6);
}

Complex eval_const_one(Complex) { return 1.0; }

ModularFunction j_function(double tolerance) {
  return {"j", [tolerance](Complex z) { return eval_j(z, tolerance); }, 0.0};
}

ModularFunction one_function() { return {"one", eval_const_one, 1.0}; }

ModularFunction function_by_name(const std::string& name, double tolerance) {
  if (name == "j") return j_function(tolerance);
  if (name == "one" || name == "1") return one_function();
  throw std::invalid_argument("unknown function '" + name + "' (expected j or one)");
}

Complex arc_point(double theta) { return {std::cos(theta), std::sin(theta)}; }

double max_on_arc(const ModularFunction& f, int samples) {
  if (samples < 16) throw std::invalid_argument("max_on_arc needs at least 16 samples");
  const double mid = std::numbers::pi / 2;
  const double half = std::numbers::pi / 6;
  auto value = [&](double theta) { return std::abs(f(arc_point(theta))); };

  std::vector<double> thetas(samples);
  for (int k = 0; k < samples; ++k) thetas[k] = mid + half * std::cos(std::numbers::pi * k / (samples - 1));
  std::sort(thetas.begin(), thetas.end());
  std::size_t best = 0;
  double best_value = -1;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const double v = value(thetas[k]);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  // Golden section search on the bracket around the best sample.
  double lo = thetas[best == 0 ? 0 : best - 1];
  double hi = thetas[std::min(best + 1, thetas.size() - 1)];
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = value(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = value(x2);
    }
  }
  best_value = std::max({best_value, f1, f2});
  return 1.01 * best_value;
}

}  // namespace markov_cycles
