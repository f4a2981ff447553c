#include "markov_cycles/exact.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <regex>
#include <stdexcept>
#include <utility>

namespace markov_cycles {

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative integer");
  Integer root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root;
}

bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer quotient;
  mpz_fdiv_q(quotient.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return quotient;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

namespace {

int sgn(const Integer& x) { return mpz_sgn(x.get_mpz_t()); }

// sign of p + q*sqrt(D), D > 0 not a perfect square unless q == 0.
int sign_of(const Integer& p, const Integer& q, const Integer& D) {
  const int sp = sgn(p);
  const int sq = sgn(q);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  const Integer p2 = p * p;
  const Integer q2d = q * q * D;
  if (p2 > q2d) return sp;
  if (p2 < q2d) return sq;
  return 0;
}

// floor((p + q*sqrt(D)) / r) for r > 0.
Integer floor_of(const Integer& p, const Integer& q, const Integer& r, const Integer& D) {
  Integer radical;  // floor(q * sqrt(D))
  if (q >= 0) {
    radical = isqrt(q * q * D);
  } else {
    const Integer square = q * q * D;
    const Integer root = isqrt(square);
    radical = -root - (root * root == square ? 0 : 1);
  }
  return floor_div(p + radical, r);
}

std::size_t hash_integer(const Integer& x) {
  const mpz_srcptr z = x.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_size(z)) * 0x9e3779b97f4a7c15ULL;
  if (mpz_size(z) > 0) h ^= static_cast<std::size_t>(mpz_getlimbn(z, 0));
  if (mpz_size(z) > 1) h ^= static_cast<std::size_t>(mpz_getlimbn(z, 1)) << 1;
  return h ^ static_cast<std::size_t>(mpz_sgn(z) + 1);
}

const Integer& common_radicand(const QuadSurd& a, const QuadSurd& b) {
  if (a.is_rational()) return b.D();
  if (b.is_rational() || a.D() == b.D()) return a.D();
  throw std::domain_error("arithmetic on surds with different radicands " +
                          a.D().get_str() + " and " + b.D().get_str());
}

}  // namespace

QuadSurd::QuadSurd() : p_(0), q_(0), r_(1), D_(1) {}

QuadSurd::QuadSurd(Integer p, Integer q, Integer r, Integer D)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), D_(std::move(D)) {
  canonicalize();
}

QuadSurd QuadSurd::rational(Integer numerator, Integer denominator) {
  return QuadSurd(std::move(numerator), 0, std::move(denominator), 1);
}

void QuadSurd::canonicalize() {
  if (r_ == 0) throw std::domain_error("surd with zero denominator");
  if (q_ != 0 && D_ <= 0) throw std::domain_error("surd radicand must be positive");
  if (q_ != 0 && is_perfect_square(D_)) {
    p_ += q_ * isqrt(D_);
    q_ = 0;
  }
  if (q_ == 0) D_ = 1;
  if (r_ < 0) {
    p_ = -p_;
    q_ = -q_;
    r_ = -r_;
  }
  Integer g = gcd(gcd(p_, q_), r_);
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
}

QuadSurd QuadSurd::parse(std::string_view text) {
  static const std::regex pattern(
      R"(\s*\(\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*(?:/\s*(\d+))?\s*)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern)) {
    throw std::invalid_argument("malformed surd literal: " + std::string(text));
  }
  Integer p(m[1].str());
  Integer q(m[3].str());
  if (m[2].str() == "-") q = -q;
  Integer D(m[4].str());
  Integer r = m[5].matched ? Integer(m[5].str()) : Integer(1);
  if (r == 0) throw std::invalid_argument("surd literal with zero denominator");
  if (D == 0) throw std::invalid_argument("surd literal with zero radicand");
  return QuadSurd(p, q, r, D);
}

int QuadSurd::sign() const { return sign_of(p_, q_, D_); }

Integer QuadSurd::floor() const { return floor_of(p_, q_, r_, D_); }

Integer QuadSurd::ceil() const { return -floor_of(-p_, -q_, r_, D_); }

QuadSurd QuadSurd::conjugate() const { return QuadSurd(p_, -q_, r_, D_); }

QuadSurd QuadSurd::reciprocal() const {
  const Integer norm = p_ * p_ - q_ * q_ * D_;
  if (norm == 0) throw std::domain_error("reciprocal of zero");
  return QuadSurd(r_ * p_, -r_ * q_, norm, D_);
}

QuadSurd QuadSurd::operator-() const { return QuadSurd(-p_, -q_, r_, D_); }

std::string QuadSurd::to_string() const {
  std::string out = "(" + p_.get_str();
  out += q_ < 0 ? "-" : "+";
  out += Integer(abs(q_)).get_str() + "*sqrt(" + D_.get_str() + "))/" + r_.get_str();
  return out;
}

std::size_t QuadSurd::hash() const {
  std::size_t h = hash_integer(p_);
  h = h * 31 + hash_integer(q_);
  h = h * 31 + hash_integer(r_);
  return h * 31 + hash_integer(D_);
}

bool operator==(const QuadSurd& a, const QuadSurd& b) {
  if (a.D_ == b.D_ || a.is_rational() || b.is_rational()) {
    if (a.is_rational() != b.is_rational()) return false;
    return a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_;
  }
  if (sgn(a.q_) != sgn(b.q_)) return false;
  return a.p_ * b.r_ == b.p_ * a.r_ &&
         a.q_ * a.q_ * a.D_ * b.r_ * b.r_ == b.q_ * b.q_ * b.D_ * a.r_ * a.r_;
}

QuadSurd operator+(const QuadSurd& a, const QuadSurd& b) {
  const Integer& D = common_radicand(a, b);
  return QuadSurd(a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_, a.r_ * b.r_, D);
}

QuadSurd operator-(const QuadSurd& a, const QuadSurd& b) { return a + (-b); }

QuadSurd operator*(const QuadSurd& a, const QuadSurd& b) {
  const Integer& D = common_radicand(a, b);
  return QuadSurd(a.p_ * b.p_ + a.q_ * b.q_ * D, a.p_ * b.q_ + a.q_ * b.p_, a.r_ * b.r_, D);
}

QuadSurd operator/(const QuadSurd& a, const QuadSurd& b) { return a * b.reciprocal(); }

QuadSurd pow(const QuadSurd& base, unsigned exponent) {
  QuadSurd result = QuadSurd::rational(1);
  QuadSurd square = base;
  while (exponent > 0) {
    if (exponent & 1U) result = result * square;
    exponent >>= 1U;
    if (exponent > 0) square = square * square;
  }
  return result;
}

int compare(const QuadSurd& a, const QuadSurd& b) { return (a - b).sign(); }

int compare(const QuadSurd& a, const Integer& k) {
  return (a - QuadSurd::rational(k)).sign();
}

Integer floor_exact(const QuadSurd& w) { return w.floor(); }

QuadSurd conjugate(const QuadSurd& w) { return w.conjugate(); }

std::string Decimal::to_string() const {
  std::string digits_str = Integer(abs(mantissa)).get_str();
  const bool negative = mantissa < 0;
  const long n = static_cast<long>(digits_str.size());
  const long point = n + exponent;  // digits before the decimal point
  std::string out;
  if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + digits_str;
  } else if (point >= n) {
    out = digits_str + std::string(static_cast<std::size_t>(point - n), '0');
  } else {
    out = digits_str.substr(0, static_cast<std::size_t>(point)) + "." +
          digits_str.substr(static_cast<std::size_t>(point));
  }
  return negative ? "-" + out : out;
}

std::string Decimal::to_scientific() const {
  std::string digits_str = Integer(abs(mantissa)).get_str();
  const long n = static_cast<long>(digits_str.size());
  std::string out = mantissa < 0 ? "-" : "";
  out += digits_str.substr(0, 1);
  if (n > 1) out += "." + digits_str.substr(1);
  out += "e" + std::to_string(exponent + n - 1);
  return out;
}

double Decimal::to_double() const {
  const std::string text = to_scientific();
  return std::strtod(text.c_str(), nullptr);
}

Decimal to_float(const QuadSurd& w, int digits) {
  if (digits < 15) throw std::invalid_argument("to_float needs at least 15 digits");
  Decimal out;
  out.digits = digits;
  const int s = w.sign();
  if (s == 0) {
    out.mantissa = 0;
    return out;
  }
  const Integer p = s < 0 ? Integer(-w.p()) : w.p();
  const Integer q = s < 0 ? Integer(-w.q()) : w.q();
  const Integer& r = w.r();
  const Integer& D = w.D();

  // floor(|w| * 10^k) for any integer k.
  auto scaled_floor = [&](long k, long factor) {
    if (k >= 0) {
      const Integer ten = ipow(10, static_cast<unsigned long>(k)) * factor;
      return floor_of(p * ten, q * ten, r, D);
    }
    const Integer ten = ipow(10, static_cast<unsigned long>(-k));
    return floor_of(p * factor, q * factor, r * ten, D);
  };

  const Integer lower = ipow(10, static_cast<unsigned long>(digits - 1));
  const Integer upper = lower * 10;

  long k = digits;
  const Integer whole = floor_of(p, q, r, D);
  if (whole > 0) {
    k = digits - static_cast<long>(whole.get_str().size());
  } else {
    while (scaled_floor(k, 1) == 0) k *= 2;
  }
  Integer m = scaled_floor(k, 1);
  while (m >= upper) m = scaled_floor(--k, 1);
  while (m < lower) m = scaled_floor(++k, 1);

  // Round half up: the fractional part is >= 1/2 exactly when floor(2x) is odd.
  const Integer twice = scaled_floor(k, 2);
  if (mpz_odd_p(twice.get_mpz_t()) != 0) {
    m += 1;
    if (m == upper) {
      m = lower;
      --k;
    }
  }
  out.mantissa = s < 0 ? Integer(-m) : m;
  out.exponent = -k;
  return out;
}

double to_double(const QuadSurd& w, int digits) { return to_float(w, digits).to_double(); }

double log_of(const QuadSurd& w, int digits) {
  if (w.sign() <= 0) throw std::domain_error("log of a non-positive surd");
  const Decimal d = to_float(w, digits);
  return std::log(d.mantissa.get_d()) + static_cast<double>(d.exponent) * std::numbers::ln10;
}

UnimodularMap::UnimodularMap() : a_(1), b_(0), c_(0), d_(1) {}

UnimodularMap::UnimodularMap(Integer a, Integer b, Integer c, Integer d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const Integer det = determinant();
  if (det != 1 && det != -1) {
    throw std::invalid_argument("matrix determinant must be +1 or -1, got " + det.get_str());
  }
}

UnimodularMap UnimodularMap::T() { return {1, 1, 0, 1}; }
UnimodularMap UnimodularMap::V() { return {1, 0, 1, 1}; }
UnimodularMap UnimodularMap::S() { return {0, -1, 1, 0}; }
UnimodularMap UnimodularMap::translation(const Integer& k) { return {1, k, 0, 1}; }

UnimodularMap UnimodularMap::inverse() const {
  const Integer det = determinant();
  return {det * d_, -det * b_, -det * c_, det * a_};
}

std::string UnimodularMap::to_string() const {
  return "[[" + a_.get_str() + "," + b_.get_str() + "],[" + c_.get_str() + "," +
         d_.get_str() + "]]";
}

UnimodularMap operator*(const UnimodularMap& x, const UnimodularMap& y) {
  return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
          x.c_ * y.b_ + x.d_ * y.d_};
}

QuadSurd moebius_apply(const UnimodularMap& m, const QuadSurd& w) {
  // numerator and denominator as (P + Q sqrt(D)) / r; the r cancels.
  const Integer num_p = m.a() * w.p() + m.b() * w.r();
  const Integer num_q = m.a() * w.q();
  const Integer den_p = m.c() * w.p() + m.d() * w.r();
  const Integer den_q = m.c() * w.q();
  const Integer norm = den_p * den_p - den_q * den_q * w.D();
  if (norm == 0) throw std::domain_error("Moebius map sends " + w.to_string() + " to infinity");
  return QuadSurd(num_p * den_p - num_q * den_q * w.D(), num_q * den_p - num_p * den_q, norm,
                  w.D());
}

std::string QuadraticForm::to_string() const {
  return "[" + a.get_str() + "," + b.get_str() + "," + c.get_str() + "]";
}

QuadraticForm minimal_form(const QuadSurd& w) {
  if (w.is_rational()) throw std::domain_error("minimal_form of a rational number");
  // (r x - p)^2 = q^2 D
  QuadraticForm form{w.r() * w.r(), -2 * w.p() * w.r(), w.p() * w.p() - w.q() * w.q() * w.D()};
  const Integer g = gcd(gcd(form.a, form.b), form.c);
  form.a /= g;
  form.b /= g;
  form.c /= g;
  // w is the larger root iff q > 0, and (-b + sqrt(D)) / (2a) is the larger
  // root iff a > 0.
  if (w.q() < 0) {
    form.a = -form.a;
    form.b = -form.b;
    form.c = -form.c;
  }
  return form;
}

}  // namespace markov_cycles
