#pragma once

// Dense univariate polynomials over Q, coefficients stored constant term first.

#include <complex>
#include <string>
#include <vector>

#include "lsp/rational.hpp"
#include "lsp/rigorous.hpp"

namespace lsp {

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly constant(const Rational& c);
  static QPoly x();
  static QPoly from_integers(const std::vector<long>& coeffs);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& coeff(int i) const;
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool is_integral() const;

  QPoly monic() const;
  // Primitive integer multiple with positive leading coefficient.
  QPoly primitive() const;
  QPoly derivative() const;
  // p(x) -> p(s * x + t)
  QPoly compose_linear(const Rational& s, const Rational& t) const;

  Rational eval(const Rational& x) const;
  Interval eval(const Interval& x) const;
  ComplexInterval eval(const ComplexInterval& z) const;
  long double eval(long double x) const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rational& s, const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  // Euclidean division; divisor must be nonzero.
  static void divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem);
  friend QPoly operator%(const QPoly& a, const QPoly& b);
  friend QPoly operator/(const QPoly& a, const QPoly& b);

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Monic gcd (zero if both inputs are zero).
QPoly gcd(const QPoly& a, const QPoly& b);
// Extended Euclid: returns g = gcd(a, b) and s, t with s*a + t*b = g.
QPoly extended_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);
QPoly squarefree_part(const QPoly& p);

// Sylvester resultant of two nonzero polynomials.
Rational resultant(const QPoly& p, const QPoly& q);

// Monic polynomial whose roots are all rho + tau (or rho - tau when
// `difference` is set) for roots rho of p and tau of q, computed as
// Res_y(p(y), q(x - y)) (resp. Res_y(p(y), q(y - x))).
QPoly sum_resultant(const QPoly& p, const QPoly& q, bool difference);

// Determinant of a square rational matrix (row-major), by exact elimination.
Rational determinant(std::vector<std::vector<Rational>> m);

// Approximate complex roots of a squarefree polynomial (Aberth iteration).
std::vector<std::complex<long double>> approximate_roots(const QPoly& p);

// Certified root enclosures: each entry encloses exactly one root, real roots
// are returned with a zero-width imaginary part, real roots first in
// increasing order.  Requires a squarefree polynomial.
std::vector<ComplexInterval> certified_roots(const QPoly& p, int prec);

// Real roots of p inside [lo, hi] in increasing order (double accuracy).
std::vector<long double> real_roots_in(const QPoly& p, long double lo, long double hi);

// Monic irreducible factors over Z of a monic integer polynomial.
std::vector<QPoly> factor_monic_integer(const QPoly& p);
bool is_irreducible(const QPoly& p);

}  // namespace lsp
