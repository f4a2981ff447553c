#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace markov_cycles {

using Integer = mpz_class;

/// Floor of the square root of a non-negative integer.
Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);
/// Floor of a / b for b > 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer ipow(const Integer& base, unsigned long exponent);

/// Decimal approximation mantissa * 10^exponent with a fixed number of
/// significant digits. The mantissa carries the sign.
struct Decimal {
  Integer mantissa;
  long exponent = 0;
  int digits = 0;

  /// Positional notation, e.g. "1.61803398874989".
  std::string to_string() const;
  /// Scientific notation, e.g. "1.61803398874989e0".
  std::string to_scientific() const;
  /// Correctly rounded conversion of the decimal string.
  double to_double() const;
};

/// Exact real quadratic number (p + q*sqrt(D)) / r.
///
/// Kept in lowest terms with r > 0. D is stored as supplied; equality is
/// semantic, so (4 + sqrt(32))/4 == 1 + sqrt(2) even though the stored
/// radicands differ. Values derived from one another by Moebius maps or
/// same-field arithmetic share D, and for those equality is a field-wise
/// comparison.
class QuadSurd {
 public:
  QuadSurd();
  QuadSurd(Integer p, Integer q, Integer r, Integer D);

  static QuadSurd rational(Integer numerator, Integer denominator = 1);
  /// Parses "(p+q*sqrt(D))/r"; the "/r" suffix is optional.
  static QuadSurd parse(std::string_view text);

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  const Integer& r() const { return r_; }
  const Integer& D() const { return D_; }

  bool is_rational() const { return q_ == 0; }
  int sign() const;
  Integer floor() const;
  Integer ceil() const;

  QuadSurd conjugate() const;
  QuadSurd reciprocal() const;
  QuadSurd operator-() const;

  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const QuadSurd& a, const QuadSurd& b);

  // Arithmetic inside one quadratic field. Mixing two irrational values with
  // different stored radicands throws std::domain_error.
  friend QuadSurd operator+(const QuadSurd& a, const QuadSurd& b);
  friend QuadSurd operator-(const QuadSurd& a, const QuadSurd& b);
  friend QuadSurd operator*(const QuadSurd& a, const QuadSurd& b);
  friend QuadSurd operator/(const QuadSurd& a, const QuadSurd& b);

 private:
  void canonicalize();

  Integer p_;
  Integer q_;
  Integer r_;
  Integer D_;
};

struct QuadSurdHash {
  std::size_t operator()(const QuadSurd& w) const { return w.hash(); }
};

QuadSurd pow(const QuadSurd& base, unsigned exponent);

/// Sign of a - b for two values in the same quadratic field.
int compare(const QuadSurd& a, const QuadSurd& b);
int compare(const QuadSurd& a, const Integer& k);

Integer floor_exact(const QuadSurd& w);
QuadSurd conjugate(const QuadSurd& w);

/// Rounds w to `digits` significant decimal digits using integer arithmetic
/// only. digits must be at least 15.
Decimal to_float(const QuadSurd& w, int digits);
/// to_float at `digits` followed by correctly rounded conversion.
double to_double(const QuadSurd& w, int digits = 30);
/// Natural logarithm of a positive value, accurate for arbitrarily large w.
double log_of(const QuadSurd& w, int digits = 30);

/// 2x2 integer matrix of determinant +1 or -1 acting by Moebius maps.
class UnimodularMap {
 public:
  UnimodularMap();
  UnimodularMap(Integer a, Integer b, Integer c, Integer d);

  static UnimodularMap identity() { return {}; }
  static UnimodularMap T();
  static UnimodularMap V();
  static UnimodularMap S();
  static UnimodularMap translation(const Integer& k);

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  const Integer& d() const { return d_; }

  Integer determinant() const { return a_ * d_ - b_ * c_; }
  Integer trace() const { return a_ + d_; }
  UnimodularMap inverse() const;
  std::string to_string() const;

  friend UnimodularMap operator*(const UnimodularMap& x, const UnimodularMap& y);
  friend bool operator==(const UnimodularMap& x, const UnimodularMap& y) = default;

 private:
  Integer a_, b_, c_, d_;
};

/// (a*w + b) / (c*w + d), exact. Throws std::domain_error when the
/// denominator vanishes (rational input only).
QuadSurd moebius_apply(const UnimodularMap& m, const QuadSurd& w);

/// Integral binary quadratic form a*x^2 + b*x*y + c*y^2.
struct QuadraticForm {
  Integer a;
  Integer b;
  Integer c;

  Integer discriminant() const { return b * b - 4 * a * c; }
  std::string to_string() const;
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

/// Primitive form with w = (-b + sqrt(b^2-4ac)) / (2a). Rejects rationals.
QuadraticForm minimal_form(const QuadSurd& w);

}  // namespace markov_cycles
