#pragma once

// Sparse multivariate polynomials over Q, sup-norm lower bounds on boxes,
// sublevel-set measures and word-trace polynomials.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lsp/qpoly.hpp"
#include "lsp/rational.hpp"
#include "lsp/words.hpp"

namespace lsp {

using Exponents = std::vector<int>;

class MultiPoly {
 public:
  explicit MultiPoly(int nvars = 0) : n_(nvars) {}
  static MultiPoly constant(int nvars, const Rational& c);
  static MultiPoly variable(int nvars, int i);
  static MultiPoly from_qpoly(const QPoly& p);

  int nvars() const { return n_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Total degree; -1 for zero.
  int degree() const;
  int degree_in(int var) const;
  bool is_integral() const;
  // Least common denominator of the coefficients.
  Integer denominator() const;
  // Univariate coefficients in variable 0 when nvars() == 1.
  QPoly to_qpoly() const;

  void add_term(const Exponents& e, const Rational& c);

  Rational eval(const std::vector<Rational>& x) const;
  double eval(const std::vector<double>& x) const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Rational& s, const MultiPoly& a);
  MultiPoly operator-() const;
  MultiPoly pow(int k) const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  // Sparse term list "e1 e2 ... : coeff" one per line, terms in exponent order.
  std::string serialize() const;
  static MultiPoly parse(const std::string& text);
  // Human form with variable names (x1.. by default).
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int n_;
  std::map<Exponents, Rational> terms_;
};

// Monic Chebyshev polynomial 2^{1-D} T_D (the constant 1 for D = 0).
QPoly monic_chebyshev(int D);

struct SupReport {
  Rational bound;       // guaranteed lower bound of sup over [-1, 1]^n
  Rational empirical;   // |P(x*)| at the best point found, exact
  std::vector<Rational> argmax;
  bool consistent = false;  // empirical >= bound
};

// Univariate: |a_D| / 2^{D-1}.  Otherwise 2^{1-D} / N where N P is
// integral.  The empirical value is a lower estimate of the true sup from a
// grid plus golden-section refinement, evaluated exactly at the final point.
SupReport chebyshev_sup_bound(const MultiPoly& P);

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
  double volume() const;
  static Box cube(int n, double half_side = 1.0);
};

struct MeasureEstimate {
  double epsilon = 0;
  double estimated_measure = 0;
  std::uint64_t samples = 0;  // 0 for the exact univariate computation
  double confidence_width = 0;
};

struct RemezReport {
  double C_B = 0;
  double sup_estimate = 0;
  double bound = 0;
  MeasureEstimate estimate;
  bool saturated = false;  // epsilon >= sup: the sublevel set may be all of B
  bool consistent = false;  // estimate - width <= bound
};

// (4 n vol(B))^D, the one-dimensional Remez constant applied per direction.
double default_remez_constant(const Box& B, int D);

// Bound (C_B eps / sup_B |P|)^{1/D} against the sublevel measure, exact for
// one variable, Monte Carlo (seeded) otherwise.  C_B <= 0 selects the default.
RemezReport remez_measure_bound(const MultiPoly& P, double epsilon, const Box& B, double C_B = 0,
                                std::uint64_t samples = 200000, std::uint64_t seed = 1);

// Measure of {x in [lo, hi] : |p(x)| <= eps}.
double sublevel_measure_exact(const QPoly& p, const Rational& eps, double lo, double hi);

// Least-squares slope of log(measure) against log(eps) for eps log-spaced
// in [eps_lo, eps_hi] (univariate, exact measures).
double remez_slope(const QPoly& p, double eps_lo, double eps_hi, int points = 13);

// Trace of w as a polynomial in the 4m entries a_j, b_j, c_j, d_j
// (variable 4j + {0,1,2,3}); inverse letters use the adjugate.
MultiPoly trace_polynomial(const Word& w, int m);

struct EliminatedTrace {
  MultiPoly numerator;              // free of every d_j
  std::vector<int> a_powers;        // trace = numerator / prod a_j^{a_powers[j]}
};

// Substitutes d_j = (1 + b_j c_j) / a_j and clears denominators.
EliminatedTrace eliminate_d(const MultiPoly& trace, int m);

std::vector<std::string> entry_names(int m);

}  // namespace lsp
