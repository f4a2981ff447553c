#include "markov_cycles/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <stdexcept>
#include <unordered_map>

namespace markov_cycles {

namespace {

std::vector<Integer> to_integers(const std::vector<long>& xs) {
  return {xs.begin(), xs.end()};
}

std::string join(const std::vector<Integer>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i].get_str();
  }
  return out;
}

std::vector<Integer> split_integers(const std::string& text) {
  std::vector<Integer> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw std::invalid_argument("empty partial quotient in \"" + text + "\"");
    out.emplace_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<Integer> primitive(const std::vector<Integer>& period) {
  const std::size_t n = period.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i) repeats = period[i] == period[i - d];
    if (repeats) return {period.begin(), period.begin() + static_cast<long>(d)};
  }
  return period;
}

template <class Step>
PeriodicCF expand(const QuadSurd& w, Convention convention, std::size_t max_steps, Step step) {
  if (w.is_rational()) throw std::domain_error("continued fraction of a rational number requested");
  std::unordered_map<QuadSurd, std::size_t, QuadSurdHash> seen;
  std::vector<Integer> digits;
  QuadSurd state = w;
  for (std::size_t i = 0; i < max_steps; ++i) {
    auto [it, fresh] = seen.emplace(state, i);
    if (!fresh) {
      PeriodicCF cf;
      cf.convention = convention;
      cf.preperiod.assign(digits.begin(), digits.begin() + static_cast<long>(it->second));
      cf.period.assign(digits.begin() + static_cast<long>(it->second), digits.end());
      return cf;
    }
    Integer digit;
    state = step(state, digit);
    digits.push_back(digit);
  }
  throw std::runtime_error("continued fraction expansion did not close within the step cap");
}

}  // namespace

std::vector<Integer> PeriodicCF::least_rotation() const {
  std::vector<Integer> best = period;
  std::vector<Integer> rotated = period;
  for (std::size_t k = 1; k < period.size(); ++k) {
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    if (rotated < best) best = rotated;
  }
  return best;
}

std::string PeriodicCF::to_string() const {
  std::string body = join(preperiod);
  if (!preperiod.empty()) body += ";";
  body += "(" + join(period) + ")";
  return convention == Convention::Plus ? "[" + body + "]" : body;
}

PeriodicCF PeriodicCF::parse(std::string_view text) {
  static const std::regex pattern(R"(\s*(\[)?\s*([-+0-9,\s]*?)\s*(;\s*)?\(([-+0-9,\s]+)\)\s*(\])?\s*)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern) || m[1].matched != m[5].matched) {
    throw std::invalid_argument("malformed continued fraction: " + std::string(text));
  }
  PeriodicCF cf;
  cf.convention = m[1].matched ? Convention::Plus : Convention::Minus;
  const std::string pre = m[2].str();
  if (!pre.empty() && !m[3].matched) {
    throw std::invalid_argument("missing ';' before the period in " + std::string(text));
  }
  cf.preperiod = split_integers(pre);
  cf.period = split_integers(m[4].str());
  if (cf.period.empty()) throw std::invalid_argument("empty period in " + std::string(text));
  return cf;
}

PeriodicCF make_minus(std::vector<long> preperiod, std::vector<long> period) {
  return {Convention::Minus, to_integers(preperiod), to_integers(period)};
}

PeriodicCF make_plus(std::vector<long> preperiod, std::vector<long> period) {
  return {Convention::Plus, to_integers(preperiod), to_integers(period)};
}

bool same_period_up_to_rotation(const std::vector<Integer>& x, const std::vector<Integer>& y) {
  if (x.size() != y.size()) return false;
  std::vector<Integer> rotated = y;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (rotated == x) return true;
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
  }
  return false;
}

PeriodicCF canonical(PeriodicCF cf) {
  cf.period = primitive(cf.period);
  // Absorb trailing preperiod entries into the period.
  while (!cf.preperiod.empty() && cf.preperiod.back() == cf.period.back()) {
    cf.preperiod.pop_back();
    std::rotate(cf.period.rbegin(), cf.period.rbegin() + 1, cf.period.rend());
  }
  return cf;
}

PeriodicCF minus_expand(const QuadSurd& w, std::size_t max_steps) {
  return expand(w, Convention::Minus, max_steps, [](const QuadSurd& x, Integer& b) {
    b = x.ceil();
    return (QuadSurd::rational(b) - x).reciprocal();
  });
}

PeriodicCF plus_expand(const QuadSurd& w, std::size_t max_steps) {
  return expand(w, Convention::Plus, max_steps, [](const QuadSurd& x, Integer& a) {
    a = x.floor();
    return (x - QuadSurd::rational(a)).reciprocal();
  });
}

PeriodicCF plus_to_minus(const PeriodicCF& cf) {
  if (cf.convention != Convention::Plus) throw std::invalid_argument("plus_to_minus expects a '+' expansion");
  // Work on the sequence a0,a1,... as preperiod + period; the even/odd parity
  // of a position decides its rule, so the period must have even length and
  // the preperiod even length too (a0 is pulled in separately).
  std::vector<Integer> head = cf.preperiod;
  std::vector<Integer> period = cf.period;
  if (period.size() % 2) {
    const std::vector<Integer> once = period;
    period.insert(period.end(), once.begin(), once.end());
  }
  if (head.empty()) {
    head.push_back(period.front());
    std::rotate(period.begin(), period.begin() + 1, period.end());
  }
  // head = a0..a_{h-1}; make h odd so the period starts at an odd position.
  if (head.size() % 2 == 0) {
    head.push_back(period.front());
    std::rotate(period.begin(), period.begin() + 1, period.end());
  }

  PeriodicCF out;
  out.convention = Convention::Minus;
  out.preperiod.push_back(head[0] + 1);
  // Entry at odd index i contributes (a_i - 1) twos; at even index i > 0 it
  // contributes a_i + 2.
  auto emit = [](std::vector<Integer>& target, std::size_t index, const Integer& a) {
    if (index % 2) {
      for (Integer k = 0; k < a - 1; ++k) target.emplace_back(2);
    } else {
      target.push_back(a + 2);
    }
  };
  for (std::size_t i = 1; i < head.size(); ++i) emit(out.preperiod, i, head[i]);
  for (std::size_t i = 0; i < period.size(); ++i) emit(out.period, head.size() + i, period[i]);
  if (out.period.empty()) throw std::invalid_argument("'+' period of all ones has no '-' image");
  return canonical(out);
}

UnimodularMap digit_map(Convention convention, const Integer& digit) {
  // x -> b - 1/x = (b x - 1)/x ; x -> a + 1/x = (a x + 1)/x
  if (convention == Convention::Minus) return {digit, -1, 1, 0};
  return {digit, 1, 1, 0};
}

QuadSurd value_of(const PeriodicCF& cf) {
  if (cf.period.empty()) throw std::invalid_argument("continued fraction with empty period");
  UnimodularMap m;
  for (const Integer& d : cf.period) m = m * digit_map(cf.convention, d);
  // Fixed points of m: c x^2 + (d - a) x - b = 0.
  const Integer A = m.c();
  const Integer B = m.d() - m.a();
  const Integer C = -m.b();
  const Integer disc = B * B - 4 * A * C;
  if (A == 0 || disc <= 0 || is_perfect_square(disc)) {
    throw std::invalid_argument("degenerate continued fraction period " + cf.to_string());
  }
  // The tail value is the attracting fixed point, which is > 1 for both
  // conventions; pick the root exceeding 1.
  QuadSurd x(-B, 1, 2 * A, disc);
  if (compare(x, Integer(1)) <= 0) x = x.conjugate();
  if (compare(x, Integer(1)) <= 0) throw std::invalid_argument("no fixed point above 1 for " + cf.to_string());
  for (auto it = cf.preperiod.rbegin(); it != cf.preperiod.rend(); ++it) {
    x = moebius_apply(digit_map(cf.convention, *it), x);
  }
  return x;
}

PeriodicCF conjugate_cf(const PeriodicCF& cf) {
  if (cf.convention != Convention::Minus || cf.preperiod.size() != 1) {
    throw std::invalid_argument("conjugate_cf expects a '-' expansion (d0;d1,...,dm)");
  }
  const Integer& d0 = cf.preperiod.front();
  PeriodicCF out;
  out.convention = Convention::Minus;
  out.preperiod.push_back(cf.period.back() - d0);
  for (std::size_t i = cf.period.size() - 1; i-- > 0;) out.period.push_back(cf.period[i]);
  out.period.push_back(cf.period.back());
  return canonical(out);
}

PeriodicCF rotate_period(const PeriodicCF& cf, long k) {
  PeriodicCF out = cf;
  const long n = static_cast<long>(cf.period.size());
  if (n == 0) return out;
  const long shift = ((k % n) + n) % n;
  std::rotate(out.period.begin(), out.period.begin() + shift, out.period.end());
  return out;
}

double coincide_distance_bound(int r) {
  if (r < 0) throw std::invalid_argument("coincide_distance_bound needs r >= 0");
  const double lambda = (3.0 - std::sqrt(5.0)) / 2.0;
  return 10.0 * std::pow(lambda, r);
}

QuadSurd coincide_distance_bound_exact(int r) {
  if (r < 0) throw std::invalid_argument("coincide_distance_bound needs r >= 0");
  return QuadSurd::rational(10) * pow(QuadSurd(3, -1, 2, 5), static_cast<unsigned>(r));
}

}  // namespace markov_cycles
