#pragma once

// Lower bounds for nonzero algebraic numbers with controlled heights and
// denominators.
//
// H(L, N, p): elements beta / N^p of a degree-d field K with beta an
// algebraic integer whose conjugates all have modulus <= L.
// I(L, N, p, D): roots of monic polynomials of degree <= D whose coefficients
// lie in H(L, N, p).

#include <vector>

#include "lsp/number_field.hpp"
#include "lsp/qpoly.hpp"
#include "lsp/rigorous.hpp"

namespace lsp {

struct DenominatorClass {
  Interval L;
  Integer N = 1;
  unsigned long p = 0;
};

struct AlgebraicClass {
  Interval L;
  Integer N = 1;
  unsigned long p = 0;
  unsigned long D = 1;
  // The class {0}; neutral for combine_classes.
  bool zero = false;

  static AlgebraicClass zero_class();
  DenominatorClass coefficients() const { return {L, N, p}; }
};

// |a0| / (1 + sum_{j<D} |a_j|)^(D-1) for a monic P; every root has at least
// this modulus.
Rational smallest_root_bound(const QPoly& P);

// alpha * N^p has an integral characteristic polynomial and all conjugates of
// modulus <= L.
bool is_member(const FieldElement& alpha, const DenominatorClass& cls);

// 1 / (L^(d-1) N^p), after verifying membership.
Interval field_lower_bound(const FieldElement& alpha, const DenominatorClass& cls, int prec = 128);

// 1 / (L^(d-1) N^p (D L + 1)^(D-1)) for any nonzero member of the class.
Interval algebraic_lower_bound(const AlgebraicClass& cls, int d, int prec = 128);

// Class containing all sums and differences of members of c1 and c2, from
// the resultant Res_y(P1(y), P2(x -+ y)).  The denominators must agree.
AlgebraicClass combine_classes(const AlgebraicClass& c1, const AlgebraicClass& c2, int prec = 128);

// Either alpha1 == alpha2 or |alpha1 - alpha2| >= the returned value, for
// alpha1, alpha2 in classes whose combination is `combined`.
Interval difference_lower_bound(const AlgebraicClass& combined, int d, int prec = 128);

// Smallest class (for the given N, p) containing the roots of the monic
// polynomial with field coefficients `coeffs` (constant term first, leading
// 1 omitted).  Throws NotMember if some coefficient times N^p is not integral.
AlgebraicClass class_of_polynomial(const std::vector<FieldElement>& coeffs, const Integer& N, unsigned long p,
                                   int prec = 128);

// Integer-valued heights of a rational monic polynomial: the class
// (max |N^p a_j|, N, p, deg) with N the common denominator and p = 1.
AlgebraicClass class_of_rational_polynomial(const QPoly& P, int prec = 128);

}  // namespace lsp
