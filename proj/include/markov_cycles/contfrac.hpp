#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "markov_cycles/exact.hpp"

namespace markov_cycles {

enum class Convention { Plus, Minus };

/// Eventually periodic continued fraction. MINUS: b0 - 1/(b1 - 1/(...)),
/// PLUS: a0 + 1/(a1 + 1/(...)).
struct PeriodicCF {
  Convention convention = Convention::Minus;
  std::vector<Integer> preperiod;
  std::vector<Integer> period;

  /// Rotation-insensitive comparison key: shortest preperiod is assumed;
  /// the period is replaced by its lexicographically least rotation.
  std::vector<Integer> least_rotation() const;

  /// "3;(2,3,4)" or "[2;(2,1,1,2)]"; a pure period prints as "(3)" / "[(1,1)]".
  std::string to_string() const;
  /// Inverse of to_string. Accepts both conventions.
  static PeriodicCF parse(std::string_view text);

  friend bool operator==(const PeriodicCF&, const PeriodicCF&) = default;
};

PeriodicCF make_minus(std::vector<long> preperiod, std::vector<long> period);
PeriodicCF make_plus(std::vector<long> preperiod, std::vector<long> period);

/// Same period up to cyclic rotation (and same convention).
bool same_period_up_to_rotation(const std::vector<Integer>& x, const std::vector<Integer>& y);

/// Shortest preperiod and primitive period. Value preserving.
PeriodicCF canonical(PeriodicCF cf);

PeriodicCF minus_expand(const QuadSurd& w, std::size_t max_steps = 1000000);
PeriodicCF plus_expand(const QuadSurd& w, std::size_t max_steps = 1000000);

/// [a0;a1,a2,...] -> (a0+1, 2 x (a1-1), a2+2, 2 x (a3-1), ...), where
/// "2 x k" means k copies of 2. The '+' period is unrolled to even length.
PeriodicCF plus_to_minus(const PeriodicCF& cf);

/// Moebius map of one partial quotient: x -> b - 1/x or x -> a + 1/x.
UnimodularMap digit_map(Convention convention, const Integer& digit);

QuadSurd value_of(const PeriodicCF& cf);

/// Expansion of -conj(w) for w = (d0; period d1..dm).
PeriodicCF conjugate_cf(const PeriodicCF& cf);

PeriodicCF rotate_period(const PeriodicCF& cf, long k);

/// 10 * lambda^r with lambda = ((3 - sqrt 5)/2).
double coincide_distance_bound(int r);
/// The same bound as an exact surd.
QuadSurd coincide_distance_bound_exact(int r);

}  // namespace markov_cycles
