#include "markov_cycles/geodesic.hpp"

#include <stdexcept>
#include <unordered_map>

#include "markov_cycles/contfrac.hpp"

namespace markov_cycles {

namespace {

const UnimodularMap& t_inverse() {
  static const UnimodularMap m = UnimodularMap::T().inverse();
  return m;
}

const UnimodularMap& v_inverse() {
  static const UnimodularMap m = UnimodularMap::V().inverse();
  return m;
}

Letter next_letter(const QuadSurd& w) { return w.floor() >= 1 ? Letter::T : Letter::V; }

QuadSurd apply_letter(Letter l, const QuadSurd& w) {
  return moebius_apply(l == Letter::T ? t_inverse() : v_inverse(), w);
}

}  // namespace

std::string CycleData::word_string() const {
  std::string out;
  for (Letter l : word) out += l == Letter::T ? 'T' : 'V';
  return out;
}

CycleData tv_cycle(const QuadSurd& w, std::size_t max_steps) {
  if (w.is_rational()) throw std::domain_error("tv_cycle of a rational number");
  CycleData c;
  c.base = w;
  std::unordered_map<QuadSurd, std::size_t, QuadSurdHash> seen;
  QuadSurd state = w;
  for (std::size_t i = 0;; ++i) {
    if (i == max_steps) throw std::runtime_error("T/V iteration did not close within the step cap");
    if (!seen.emplace(state, i).second) {
      throw std::runtime_error("T/V iteration from " + w.to_string() + " entered a cycle not containing it");
    }
    c.elements.push_back(state);
    const Letter l = next_letter(state);
    c.word.push_back(l);
    c.automorph = c.automorph * (l == Letter::T ? UnimodularMap::T() : UnimodularMap::V());
    state = apply_letter(l, state);
    if (state == w) break;
  }
  c.conjugates.reserve(c.elements.size());
  for (const QuadSurd& x : c.elements) c.conjugates.push_back(x.conjugate());
  c.trace = c.automorph.trace();
  c.epsilon = QuadSurd(c.trace, 1, 2, c.trace * c.trace - 4);
  c.log_epsilon = log_of(c.epsilon);
  c.length = 2.0 * c.log_epsilon;
  c.form = minimal_form(w);
  return c;
}

CycleData cycle_of(const QuadSurd& w, std::size_t max_steps) {
  if (w.is_rational()) throw std::domain_error("cycle_of a rational number");
  // The iteration keeps positive values positive; negative ones are moved
  // into [0, 1) first.
  QuadSurd state = w.sign() > 0 ? w : w - QuadSurd::rational(w.floor());
  std::unordered_map<QuadSurd, std::size_t, QuadSurdHash> seen;
  for (std::size_t i = 0; i < max_steps; ++i) {
    if (!seen.emplace(state, i).second) return tv_cycle(state, max_steps);
    state = apply_letter(next_letter(state), state);
  }
  throw std::runtime_error("T/V iteration did not close within the step cap");
}

long minus_period_length(const std::vector<Integer>& period) {
  long total = 0;
  for (const Integer& b : period) total += Integer(b - 1).get_si();
  return total;
}

long cycle_length_closed_form(const Branch& B, int n) {
  if (n < 0) throw std::invalid_argument("branch index must be >= 0");
  if (n == 0) {
    // w_0 = (b0; period); the word length is the period sum.
    return minus_period_length(B.w0.period);
  }
  const long l0 = minus_period_length(B.b);
  const long a = minus_period_length(B.a);
  switch (B.kind) {
    case BranchKind::Leftmost:
    case BranchKind::Left:
      return n * l0 + a;
    case BranchKind::Rightmost:
    case BranchKind::Right:
      return (n - 1) * l0 + a;
  }
  return 0;
}

long cycle_length_bound(const Branch& B, int n) { return 3L * B.r() * (n + 1); }

std::pair<Integer, Integer> pell_fundamental(const Integer& D) {
  if (D <= 0 || is_perfect_square(D)) throw std::domain_error("Pell equation needs a positive non-square D");
  // Units of the order of discriminant Delta are read off the '+' expansion of
  // omega = (sigma + sqrt(Delta)) / 2.
  const Integer residue = D % 4;
  const bool doubled = residue == 2 || residue == 3;
  const Integer Delta = doubled ? Integer(4 * D) : D;
  const Integer sigma = Delta % 4;
  const QuadSurd omega(sigma, 1, 2, Delta);

  const PeriodicCF cf = plus_expand(omega);
  QuadSurd x = omega;
  for (const Integer& a : cf.preperiod) x = (x - QuadSurd::rational(a)).reciprocal();
  // x is purely periodic; its period matrix M has eigenvalue c x + d.
  UnimodularMap M;
  for (const Integer& a : cf.period) M = M * digit_map(Convention::Plus, a);
  QuadSurd eta = QuadSurd::rational(M.c()) * x + QuadSurd::rational(M.d());
  if (M.determinant() < 0) eta = eta * eta;
  if (eta.D() != Delta && !eta.is_rational()) throw std::logic_error("unit left the quadratic field");

  // eta = (t + u sqrt(D)) / 2.
  const Integer t_num = 2 * eta.p();
  Integer u_num = 2 * eta.q();
  if (doubled) u_num *= 2;
  if (t_num % eta.r() != 0 || u_num % eta.r() != 0) throw std::logic_error("non-integral Pell solution");
  Integer t = t_num / eta.r();
  Integer u = u_num / eta.r();
  if (u < 0) u = -u;
  if (t < 0) t = -t;
  if (t * t - D * u * u != 4) throw std::logic_error("Pell solution check failed for D = " + D.get_str());
  return {t, u};
}

int orientation_sign(const QuadraticForm& form) { return sgn(form.a); }

int orientation_sign(const QuadSurd& w) { return orientation_sign(minimal_form(w)); }

QuadraticForm transform(const QuadraticForm& Q, const UnimodularMap& M) {
  const Integer &a = M.a(), &b = M.b(), &c = M.c(), &d = M.d();
  return {Q.a * a * a + Q.b * a * c + Q.c * c * c,
          2 * Q.a * a * b + Q.b * (a * d + b * c) + 2 * Q.c * c * d,
          Q.a * b * b + Q.b * b * d + Q.c * d * d};
}

}  // namespace markov_cycles
