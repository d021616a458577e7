#include "lsp/rigorous.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "lsp/error.hpp"

namespace lsp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DegreeZero: return "degree-zero";
    case ErrorCode::ZeroElement: return "zero-element";
    case ErrorCode::NotMember: return "not-member";
    case ErrorCode::MismatchedDenominator: return "mismatched-denominator";
    case ErrorCode::Reducible: return "reducible";
    case ErrorCode::EmbeddingFailure: return "embedding-failure";
    case ErrorCode::ScalarKindMismatch: return "scalar-kind-mismatch";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::NotHyperbolic: return "not-hyperbolic";
    case ErrorCode::Undecided: return "undecided";
    case ErrorCode::RepairNoSolution: return "repair-no-solution";
    case ErrorCode::RepairDegenerate: return "repair-degenerate";
    case ErrorCode::RepairNoRealSolution: return "repair-no-real-solution";
    case ErrorCode::RepairNoRationalScaling: return "repair-no-rational-scaling";
    case ErrorCode::GenusOne: return "genus-one";
    case ErrorCode::SamplingFailed: return "sampling-failed";
    case ErrorCode::EmptyWord: return "empty-word";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::NonAlgebraic: return "non-algebraic";
    case ErrorCode::Commuting: return "commuting";
    case ErrorCode::CapsExhausted: return "caps-exhausted";
    case ErrorCode::DegenerateTrace: return "degenerate-trace";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::TailModelMissing: return "tail-model-missing";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::PrecisionExhausted: return "precision-exhausted";
    case ErrorCode::VerificationFailed: return "verification-failed";
  }
  return "unknown";
}

namespace {

mpfr_prec_t clamp_prec(int prec) {
  return std::max<mpfr_prec_t>(MPFR_PREC_MIN, static_cast<mpfr_prec_t>(prec));
}

int joint_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

// ---------------------------------------------------------------- Real

Real::Real(int prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, int prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Rational& q, int prec) {
  mpfr_init2(v_, clamp_prec(prec));
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real operator+(const Real& a, const Real& b) {
  Real r(std::max(a.precision(), b.precision()));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(std::max(a.precision(), b.precision()));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(std::max(a.precision(), b.precision()));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(std::max(a.precision(), b.precision()));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real abs(const Real& a) {
  Real r(a.precision());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real sqrt(const Real& a) {
  Real r(a.precision());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------- Interval

Interval::Interval(int prec) {
  mpfr_init2(lo_, clamp_prec(prec));
  mpfr_init2(hi_, clamp_prec(prec));
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
    mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_rational(const Rational& q, int prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_integer(long v, int prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_double(double v, int prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_decimal(std::string_view text, int prec) {
  std::string s(text);
  Interval r(prec);
  if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU) != 0) {
    throw Error(ErrorCode::InvalidArgument, "not a decimal number: '" + s + "'");
  }
  return r;
}

Interval Interval::from_bounds(double lo, double hi, int prec) {
  if (!(lo <= hi)) throw Error(ErrorCode::InvalidArgument, "interval bounds out of order");
  Interval r(prec);
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval Interval::from_real(const Real& v, int prec) {
  Interval r(prec);
  mpfr_set(r.lo_, v.get(), MPFR_RNDD);
  mpfr_set(r.hi_, v.get(), MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(joint_prec(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pi(int prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

double Interval::mid() const {
  Real m = mid_real();
  return m.to_double();
}

Real Interval::mid_real() const {
  Real m(precision() + 2);
  mpfr_add(m.get(), lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, mpfr_get_prec(lo_));
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double out = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return out;
}

bool Interval::contains(double v) const {
  return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::subset_of(const Interval& other) const {
  return mpfr_greaterequal_p(lo_, other.lo_) && mpfr_lessequal_p(hi_, other.hi_);
}

bool Interval::disjoint(const Interval& other) const {
  return mpfr_less_p(hi_, other.lo_) || mpfr_less_p(other.hi_, lo_);
}

bool Interval::certainly_less(const Rational& q) const {
  return mpfr_cmp_q(hi_, q.get_mpq_t()) < 0;
}

bool Interval::certainly_greater(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0;
}

bool Interval::identical(const Interval& other) const {
  return mpfr_equal_p(lo_, other.lo_) && mpfr_equal_p(hi_, other.hi_);
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(joint_prec(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(joint_prec(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const int prec = joint_prec(a, b);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, clamp_prec(prec));
  const std::array<std::pair<mpfr_srcptr, mpfr_srcptr>, 4> combos = {{
      {a.lo_, b.lo_}, {a.lo_, b.hi_}, {a.hi_, b.lo_}, {a.hi_, b.hi_}}};
  bool first = true;
  for (const auto& [x, y] : combos) {
    mpfr_mul(t, x, y, MPFR_RNDD);
    if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, x, y, MPFR_RNDU);
    if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
    first = false;
  }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw Error(ErrorCode::InvalidArgument, "interval division by an enclosure of zero");
  const int prec = joint_prec(a, b);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, clamp_prec(prec));
  const std::array<std::pair<mpfr_srcptr, mpfr_srcptr>, 4> combos = {{
      {a.lo_, b.lo_}, {a.lo_, b.hi_}, {a.hi_, b.lo_}, {a.hi_, b.hi_}}};
  bool first = true;
  for (const auto& [x, y] : combos) {
    mpfr_div(t, x, y, MPFR_RNDD);
    if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
    mpfr_div(t, x, y, MPFR_RNDU);
    if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
    first = false;
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  Interval r(a.precision());
  mpfr_set_zero(r.lo_, 1);
  mpfr_t na;
  mpfr_init2(na, mpfr_get_prec(a.lo_));
  mpfr_neg(na, a.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, na, a.hi_, MPFR_RNDU);
  mpfr_clear(na);
  return r;
}

Interval square(const Interval& a) {
  Interval b = abs(a);
  Interval r(a.precision());
  mpfr_sqr(r.lo_, b.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.lo_) < 0) throw Error(ErrorCode::InvalidArgument, "sqrt of an interval reaching below zero");
  Interval r(a.precision());
  mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo_) <= 0) throw Error(ErrorCode::InvalidArgument, "log of an interval reaching zero");
  Interval r(a.precision());
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.precision());
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval acosh(const Interval& a) {
  if (mpfr_cmp_ui(a.lo_, 1) < 0) throw Error(ErrorCode::InvalidArgument, "acosh of an interval reaching below one");
  Interval r(a.precision());
  mpfr_acosh(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_acosh(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval sinh(const Interval& a) {
  Interval r(a.precision());
  mpfr_sinh(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sinh(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& a, unsigned long e) {
  if (e == 0) return Interval::from_integer(1, a.precision());
  Interval base = (e % 2 == 0) ? abs(a) : a;
  Interval r(a.precision());
  mpfr_pow_ui(r.lo_, base.lo_, e, MPFR_RNDD);
  mpfr_pow_ui(r.hi_, base.hi_, e, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& a, const Interval& e) { return exp(e * log(a)); }

Interval min(const Interval& a, const Interval& b) {
  Interval r(joint_prec(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(joint_prec(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.disjoint(b)) throw Error(ErrorCode::InvalidArgument, "intersection of disjoint enclosures");
  Interval r(joint_prec(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

std::string Interval::to_string(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  std::string out = "[";
  mpfr_snprintf(buf.data(), buf.size(), "%.*RDe", digits, lo_);
  out += buf.data();
  out += ", ";
  mpfr_snprintf(buf.data(), buf.size(), "%.*RUe", digits, hi_);
  out += buf.data();
  out += "]";
  return out;
}

// ---------------------------------------------------------------- complex

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re - b.re, a.im - b.im};
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator*(const ComplexInterval& a, const Interval& b) {
  return {a.re * b, a.im * b};
}

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  Interval den = norm_squared(b);
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

Interval norm_squared(const ComplexInterval& z) { return square(z.re) + square(z.im); }

Interval modulus(const ComplexInterval& z) { return sqrt(norm_squared(z)); }

std::string shortest_decimal(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace lsp
