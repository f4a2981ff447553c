#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "markov_cycles/exact.hpp"
#include "markov_cycles/markov.hpp"

namespace markov_cycles {

/// Letter of the reduction word. T means the step applied T^-1, V means V^-1.
enum class Letter { T, V };

struct CycleData {
  QuadSurd base;
  std::vector<Letter> word;
  /// elements[0] = base; elements[i+1] = letter_i^-1 (elements[i]).
  std::vector<QuadSurd> elements;
  std::vector<QuadSurd> conjugates;
  /// Product of the letters; fixes base.
  UnimodularMap automorph;
  Integer trace;
  /// Larger eigenvalue of the automorph, (t + sqrt(t^2 - 4)) / 2.
  QuadSurd epsilon;
  double log_epsilon = 0.0;
  /// 2 log epsilon.
  double length = 0.0;
  QuadraticForm form;

  std::size_t size() const { return word.size(); }
  std::string word_string() const;
};

/// Runs the T/V reduction from w until w recurs. Throws std::runtime_error if
/// another state repeats first or the step cap is hit.
CycleData tv_cycle(const QuadSurd& w, std::size_t max_steps = 1000000);

/// Runs the T/V iteration from w (translated into [0,1) if negative) until a
/// state repeats and returns the cycle through that state. For w on its
/// cycle this equals tv_cycle(w).
CycleData cycle_of(const QuadSurd& w, std::size_t max_steps = 1000000);

/// Sum of (b - 1) over a '-' period, i.e. the T/V word length of (3; period).
long minus_period_length(const std::vector<Integer>& period);
/// n * l0 + sum(a_i - 1) on left branches, (n - 1) * l0 + sum(a_i - 1) on
/// right branches, with l0 = sum(b_i - 1).
long cycle_length_closed_form(const Branch& B, int n);
/// 3 r (n + 1).
long cycle_length_bound(const Branch& B, int n);

/// Least positive (t, u) with t^2 - D u^2 = 4.
std::pair<Integer, Integer> pell_fundamental(const Integer& D);

/// Sign of the leading coefficient of the minimal form.
int orientation_sign(const QuadSurd& w);
int orientation_sign(const QuadraticForm& form);

/// Q|M : (x, y) -> Q(a x + b y, c x + d y).
QuadraticForm transform(const QuadraticForm& Q, const UnimodularMap& M);

}  // namespace markov_cycles
