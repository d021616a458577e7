#pragma once

// Certified real arithmetic on top of MPFR.
//
// `Real` is a plain round-to-nearest multiprecision float used for
// approximations (root polishing, model fitting).  `Interval` is a closed
// interval [lower, upper] whose endpoints are always rounded outward, so
// every operation returns an enclosure of the exact result.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace lsp {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr int kDefaultPrecision = 64;

class Real {
 public:
  explicit Real(int prec = kDefaultPrecision);
  Real(double v, int prec);
  Real(const Rational& q, int prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;

  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

 private:
  mpfr_t v_;
};

class Interval {
 public:
  explicit Interval(int prec = kDefaultPrecision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_rational(const Rational& q, int prec);
  static Interval from_integer(long v, int prec);
  static Interval from_double(double v, int prec);
  // Decimal string such as "-1.25e-3"; encloses the exact decimal value.
  static Interval from_decimal(std::string_view text, int prec);
  // [lo, hi] from two doubles (lo <= hi required).
  static Interval from_bounds(double lo, double hi, int prec);
  static Interval from_real(const Real& r, int prec);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval pi(int prec);

  int precision() const { return static_cast<int>(mpfr_get_prec(lo_)); }

  // Outward-rounded double endpoints.
  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid() const;
  double width() const;
  Real mid_real() const;

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  bool contains(double v) const;
  bool contains(const Rational& q) const;
  bool contains_zero() const;
  bool subset_of(const Interval& other) const;
  bool disjoint(const Interval& other) const;
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  // Certainly a < b (entire interval below).
  bool certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }
  bool certainly_less(const Rational& q) const;
  bool certainly_greater(const Rational& q) const;
  bool identical(const Interval& other) const;
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  friend Interval abs(const Interval& a);
  friend Interval square(const Interval& a);
  friend Interval sqrt(const Interval& a);
  friend Interval log(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval acosh(const Interval& a);
  friend Interval sinh(const Interval& a);
  friend Interval pow(const Interval& a, unsigned long e);
  // a^e for a > 0 and real exponent interval e, via exp(e log a).
  friend Interval pow(const Interval& a, const Interval& e);
  friend Interval min(const Interval& a, const Interval& b);
  friend Interval max(const Interval& a, const Interval& b);
  friend Interval intersect(const Interval& a, const Interval& b);

  std::string to_string(int digits = 20) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

// Rectangular complex enclosure.
struct ComplexInterval {
  Interval re;
  Interval im;

  explicit ComplexInterval(int prec = kDefaultPrecision) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  int precision() const { return re.precision(); }
  bool is_real() const { return im.is_point() && im.contains(0.0); }

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator*(const ComplexInterval& a, const Interval& b);
};

// Enclosure of |z|.
Interval modulus(const ComplexInterval& z);
// Enclosure of |z|^2.
Interval norm_squared(const ComplexInterval& z);

// Shortest round-trip decimal rendering of a double.
std::string shortest_decimal(double v);

}  // namespace lsp
