#include "markov_cycles/cycleint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace markov_cycles {

namespace {

double kahan_step(double& sum, double& carry, double x) {
  const double y = x - carry;
  const double t = sum + y;
  carry = (t - sum) - y;
  sum = t;
  return sum;
}

QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double pp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p1 = 1, p2 = 0;
      for (int j = 0; j < n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1);
      const long double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-19L) break;
    }
    const long double w = 2 / ((1 - z * z) * pp * pp);
    rule.nodes[i] = static_cast<double>(-z);
    rule.nodes[n - 1 - i] = static_cast<double>(z);
    rule.weights[i] = rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  return rule;
}

struct Poles {
  std::vector<double> w, w_conj, delta;
};

Poles poles_of(const CycleData& c, int digits) {
  Poles p;
  p.w.reserve(c.size());
  p.w_conj.reserve(c.size());
  p.delta.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    p.w.push_back(to_double(c.elements[i], digits));
    p.w_conj.push_back(to_double(c.conjugates[i], digits));
    p.delta.push_back(to_double(c.elements[i] - c.conjugates[i], digits));
  }
  return p;
}

CycleValue refine(const CycleData& c, const IntegrationOptions& opts,
                  const std::function<Complex(const QuadratureRule&)>& integrate) {
  if (opts.nodes < 16) throw std::invalid_argument("quadrature needs at least 16 nodes");
  CycleValue v;
  v.nodes = opts.nodes;
  v.raw = integrate(gauss_legendre(opts.nodes));
  const Complex finer = integrate(gauss_legendre((3 * opts.nodes + 1) / 2));
  v.error_estimate = std::abs(v.raw - finer);
  if (v.error_estimate > opts.tolerance * std::max(1.0, std::abs(v.raw))) {
    throw std::runtime_error("quadrature error estimate " + std::to_string(v.error_estimate) +
                             " above tolerance");
  }
  v.length = c.length;
  v.normalized = v.raw / v.length;
  return v;
}

}  // namespace

void KahanSum::add(Complex x) {
  double re = sum_.real(), im = sum_.imag();
  double cre = carry_.real(), cim = carry_.imag();
  kahan_step(re, cre, x.real());
  kahan_step(im, cim, x.imag());
  sum_ = {re, im};
  carry_ = {cre, cim};
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

Complex arc_integral_raw(const ModularFunction& f, const CycleData& c, const QuadratureRule& rule, int digits) {
  const Poles p = poles_of(c, digits);
  const double mid = std::numbers::pi / 2;
  const double half = std::numbers::pi / 6;
  KahanSum total;
  for (int k = 0; k < rule.size(); ++k) {
    const double theta = mid + half * rule.nodes[k];
    const Complex z = arc_point(theta);
    KahanSum cycle_sum;
    for (std::size_t i = 0; i < p.w.size(); ++i) {
      cycle_sum.add(p.delta[i] / ((z - p.w[i]) * (z - p.w_conj[i])));
    }
    // dz = i z d(theta), d(theta) = half * dt
    total.add(rule.weights[k] * half * f(z) * cycle_sum.value() * Complex(0, 1) * z);
  }
  return total.value();
}

Complex segment_integral_raw(const ModularFunction& f, const CycleData& c, const QuadratureRule& rule) {
  // Pulled-back forms Q_i = Q | (L_1 ... L_i).
  std::vector<std::array<long double, 3>> forms;
  forms.reserve(c.size());
  QuadraticForm Q = c.form;
  for (std::size_t i = 0; i < c.size(); ++i) {
    forms.push_back({static_cast<long double>(Q.a.get_d()), static_cast<long double>(Q.b.get_d()),
                     static_cast<long double>(Q.c.get_d())});
    Q = transform(Q, c.word[i] == Letter::T ? UnimodularMap::T() : UnimodularMap::V());
  }
  if (!(Q == c.form)) throw std::logic_error("pulled-back form does not close up");
  const double sqrt_d = std::sqrt(c.form.discriminant().get_d());
  const double height = std::sqrt(3.0) / 2;
  KahanSum total;
  for (int k = 0; k < rule.size(); ++k) {
    // u runs along Im u = sqrt(3)/2 from rho to rho^2; du = -dt/2.
    const std::complex<long double> u(-0.5L * rule.nodes[k], height);
    KahanSum cycle_sum;
    for (const auto& q : forms) {
      const std::complex<long double> value = (q[0] * u + q[1]) * u + q[2];
      cycle_sum.add(Complex(1.0L / value));
    }
    const Complex ud(static_cast<double>(u.real()), static_cast<double>(u.imag()));
    total.add(rule.weights[k] * -0.5 * f(ud) * cycle_sum.value());
  }
  return sqrt_d * total.value();
}

CycleValue arc_integral(const ModularFunction& f, const CycleData& c, const IntegrationOptions& opts) {
  return refine(c, opts, [&](const QuadratureRule& rule) { return arc_integral_raw(f, c, rule, opts.digits); });
}

CycleValue segment_integral(const ModularFunction& f, const CycleData& c, const IntegrationOptions& opts) {
  return refine(c, opts, [&](const QuadratureRule& rule) { return segment_integral_raw(f, c, rule); });
}

CycleValue normalized_value(const ModularFunction& f, const QuadSurd& w, const IntegrationOptions& opts) {
  return arc_integral(f, cycle_of(w), opts);
}

CycleValue normalized_value(const ModularFunction& f, const PeriodicCF& cf, const IntegrationOptions& opts) {
  return normalized_value(f, value_of(cf), opts);
}

}  // namespace markov_cycles
