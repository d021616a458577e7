#pragma once

// Pairs of closed geodesics with arbitrarily small length gaps, produced by
// shearing the third generator until two traces coincide exactly.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lsp/moebius.hpp"
#include "lsp/words.hpp"

namespace lsp {

template <class T>
Matrix2<T> matrix_power(const Matrix2<T>& x, int n) {
  if (n < 0) return matrix_power(x.inverse(), -n);
  Matrix2<T> r = Matrix2<T>::identity_like(x.a);
  Matrix2<T> b = x;
  while (n > 0) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

// log of the leading eigenvalue, log((|t| + sqrt(t^2 - 4)) / 2).
Interval leading_log_eigenvalue(const IntervalMatrix& x);
Interval leading_log_eigenvalue(const RationalMatrix& x, int prec = 128);

// l(A1^k A2^m) ~ kappa + 2k lambda1 + 2m lambda2.
struct AsymptoteModel {
  Interval lambda1;
  Interval lambda2;
  double kappa = 0;
  double residual_bound = 0;
  // Entry s: max |residual| over the grid cells with min(k, m) = s (index 0 unused).
  std::vector<double> residual_by_min;
  int k_max = 0;
  int m_max = 0;

  double predict(int k, int m) const;
};

// Residuals are taken over min(k, m) >= 2.
AsymptoteModel fit_asymptote(const RationalMatrix& A1, const RationalMatrix& A2, int k_max, int m_max, int prec = 128);

struct TargetHit {
  int k = 0;
  int m = 0;
  Word word;  // a1^k a2^m
  Rational trace;
  Interval length;
  Interval miss;  // |length - target|
};

// Candidates A1^k A2^m, 1 <= k <= k_cap, 1 <= m <= m_cap, whose certified
// length lies within delta of target, closest first.
std::vector<TargetHit> target_candidates(const AsymptoteModel& model, const RationalMatrix& A1, const RationalMatrix& A2,
                                         const Interval& target, double delta, int k_cap, int m_cap);
// Closest candidate; CapsExhausted (with the nearest miss) if none.
TargetHit dense_target_search(const AsymptoteModel& model, const RationalMatrix& A1, const RationalMatrix& A2,
                              const Interval& target, double delta, int k_cap, int m_cap);

// eta with tr((1 eta; 0 1) A3 A1^n) = target_trace.
template <class T>
T eta_solve(const Matrix2<T>& A3, const Matrix2<T>& A1, int n, const T& target_trace) {
  Matrix2<T> x = A3 * matrix_power(A1, n);
  if (x.c == zero_like(x.c)) throw Error(ErrorCode::DegenerateTrace, "lower-left entry of A3 A1^n vanishes");
  return (target_trace - x.trace()) / x.c;
}

// Left shear (1 eta; 0 1) x.
RationalMatrix shear(const RationalMatrix& x, const Rational& eta);

struct EqualizeOptions {
  double delta = 3.0;
  int k_cap = 60;
  int m_cap = 60;
  int fit_k = 12;
  int fit_m = 12;
  int precision = 128;
  int max_retries = 8;
  std::uint64_t seed = 1;
};

struct PerturbationResult {
  Rational eta;
  int n = 0;
  int k = 0;
  int m = 0;
  Word target_word;   // a3 a1^n
  Word matched_word;  // a1^k a2^m
  Rational target_trace_before;
  Rational target_trace;  // after the shear
  Rational matched_trace;
  Interval target_length;
  Interval matched_length;
  Interval achieved_gap;
  bool exact_equal = false;
  bool unperturbed_identical = false;
  bool non_conjugate = false;
  bool schottky_after = false;  // free mode only
  bool repaired = false;        // genus mode only
  int degeneracy_retries = 0;
  GeneratorTuple<Rational> tuple;  // the perturbed (and repaired) tuple
};

// Free tuples need at least three generators and a verified Schottky
// structure; genus tuples need g >= 3 so the repaired generator is not A3.
PerturbationResult equalize_lengths(const GeneratorTuple<Rational>& t, int n, const EqualizeOptions& opts = {});

// Monotone decreasing target: "exp" or "exp:ALPHA" for e^{-alpha t},
// "gauss" for e^{-t^2}, "table:t1=v1,t2=v2,..." for a step function.
struct GapFunction {
  enum class Kind { Exp, Gauss, Table };
  Kind kind = Kind::Exp;
  Rational alpha = 1;
  std::vector<std::pair<Rational, Rational>> table;

  std::string tag() const;
  // Lower bound of F on the interval t (F decreasing, so F at t's upper end).
  Interval lower_bound(const Interval& t) const;
};

GapFunction parse_gap_function(const std::string& text);

struct SchedulePair {
  PerturbationResult result;
  Interval max_length;
  Interval threshold;
  bool pass = false;
};

struct GapSchedule {
  GapFunction F;
  std::vector<SchedulePair> produced_pairs;
  Rational eta_abs_sum;
  Rational drift;  // max entry of A3_final A3_initial^-1 - I
  bool drift_bounded = false;
  GeneratorTuple<Rational> final_tuple;
};

struct ScheduleOptions {
  int n0 = 8;
  int n_step = 2;
  EqualizeOptions equalize;
};

// Each pair is certified on the tuple of its own stage; later stages shear
// the current tuple again.
GapSchedule run_schedule(const GeneratorTuple<Rational>& t, const GapFunction& F, int count, const ScheduleOptions& opts = {});

std::string schedule_csv(const GapSchedule& s);

}  // namespace lsp
