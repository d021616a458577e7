#include "lsp/algebraic_bounds.hpp"

#include "lsp/error.hpp"
#include "lsp/rational.hpp"

namespace lsp {

namespace {

// Point interval at the upper end of L, so every bound uses the worst case.
Interval upper_point(const Interval& L, int prec) {
  Real hi(std::max(prec, L.precision()));
  mpfr_set(hi.get(), L.hi(), MPFR_RNDU);
  return Interval::from_real(hi, std::max(prec, L.precision()));
}

Interval power_of(const Integer& N, unsigned long p, int prec) {
  Integer v;
  mpz_pow_ui(v.get_mpz_t(), N.get_mpz_t(), p);
  return Interval::from_rational(Rational(v), prec);
}

FieldElement scaled(const FieldElement& alpha, const Integer& N, unsigned long p) {
  Integer v;
  mpz_pow_ui(v.get_mpz_t(), N.get_mpz_t(), p);
  return alpha * FieldElement::from_rational(alpha.field(), Rational(v));
}

}  // namespace

AlgebraicClass AlgebraicClass::zero_class() {
  AlgebraicClass c;
  c.L = Interval::from_integer(1, kDefaultPrecision);
  c.zero = true;
  return c;
}

Rational smallest_root_bound(const QPoly& P) {
  if (P.degree() < 1) throw Error(ErrorCode::DegreeZero, "smallest_root_bound needs degree >= 1");
  QPoly m = P.monic();
  const int D = m.degree();
  Rational s = 1;
  for (int j = 0; j < D; ++j) s += abs(m.coeff(j));
  Rational den = 1;
  for (int j = 0; j < D - 1; ++j) den *= s;
  return abs(m.coeff(0)) / den;
}

bool is_member(const FieldElement& alpha, const DenominatorClass& cls) {
  FieldElement beta = scaled(alpha, cls.N, cls.p);
  if (!beta.characteristic_polynomial().is_integral()) return false;
  for (int prec = 128; prec <= 512; prec *= 2) {
    Interval h = embedding_height(beta, prec);
    if (mpfr_lessequal_p(h.hi(), cls.L.lo())) return true;
    if (mpfr_greater_p(h.lo(), cls.L.hi())) return false;
  }
  // Height and L agree to 512 bits; treat as equal.
  return true;
}

Interval field_lower_bound(const FieldElement& alpha, const DenominatorClass& cls, int prec) {
  if (alpha.is_zero()) throw Error(ErrorCode::ZeroElement, "field_lower_bound of zero");
  if (!is_member(alpha, cls)) throw Error(ErrorCode::NotMember, "element " + alpha.to_string() + " is not in the class");
  const int d = alpha.field()->degree();
  Interval L = upper_point(cls.L, prec);
  Interval den = pow(L, static_cast<unsigned long>(d - 1)) * power_of(cls.N, cls.p, prec);
  return Interval::from_integer(1, prec) / den;
}

Interval algebraic_lower_bound(const AlgebraicClass& cls, int d, int prec) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "field degree must be positive");
  if (cls.D < 1) throw Error(ErrorCode::InvalidArgument, "degree cap must be positive");
  Interval L = upper_point(cls.L, prec);
  Interval one = Interval::from_integer(1, prec);
  Interval DL1 = Interval::from_integer(static_cast<long>(cls.D), prec) * L + one;
  Interval den = pow(L, static_cast<unsigned long>(d - 1)) * power_of(cls.N, cls.p, prec) * pow(DL1, cls.D - 1);
  return one / den;
}

AlgebraicClass combine_classes(const AlgebraicClass& c1, const AlgebraicClass& c2, int prec) {
  if (c1.zero) return c2;
  if (c2.zero) return c1;
  if (c1.N != c2.N) throw Error(ErrorCode::MismatchedDenominator, "classes have different denominators");
  Interval one = Interval::from_integer(1, prec);
  // Roots of P_i are bounded by max(1, sum |a_j|) <= 1 + D_i L_i / N^p_i in every embedding.
  auto root_radius = [&](const AlgebraicClass& c) {
    return one + Interval::from_integer(static_cast<long>(c.D), prec) * upper_point(c.L, prec) / power_of(c.N, c.p, prec);
  };
  Interval M = root_radius(c1) + root_radius(c2);
  AlgebraicClass out;
  out.N = c1.N;
  out.D = c1.D * c2.D;
  // Each Sylvester term has at most D2 coefficients of P1 and D1 of P2.
  out.p = c1.p * c2.D + c2.p * c1.D;
  out.L = power_of(out.N, out.p, prec) * pow(one + M, out.D);
  return out;
}

Interval difference_lower_bound(const AlgebraicClass& combined, int d, int prec) {
  return algebraic_lower_bound(combined, d, prec);
}

AlgebraicClass class_of_polynomial(const std::vector<FieldElement>& coeffs, const Integer& N, unsigned long p, int prec) {
  if (coeffs.empty()) throw Error(ErrorCode::DegreeZero, "class_of_polynomial needs degree >= 1");
  AlgebraicClass out;
  out.N = N;
  out.p = p;
  out.D = coeffs.size();
  out.L = power_of(N, p, prec);
  for (const auto& a : coeffs) {
    FieldElement beta = scaled(a, N, p);
    if (!beta.characteristic_polynomial().is_integral())
      throw Error(ErrorCode::NotMember, "coefficient " + a.to_string() + " is not integral at this denominator");
    out.L = max(out.L, embedding_height(beta, prec));
  }
  return out;
}

AlgebraicClass class_of_rational_polynomial(const QPoly& P, int prec) {
  if (P.degree() < 1) throw Error(ErrorCode::DegreeZero, "class_of_rational_polynomial needs degree >= 1");
  QPoly m = P.monic();
  Integer N = 1;
  for (const auto& c : m.coeffs()) N = lcm(N, c.get_den());
  AlgebraicClass out;
  out.N = N;
  out.p = 1;
  out.D = static_cast<unsigned long>(m.degree());
  Rational L = N;
  for (int j = 0; j < m.degree(); ++j) L = std::max(L, Rational(abs(m.coeff(j)) * N));
  out.L = Interval::from_rational(L, prec);
  return out;
}

}  // namespace lsp
