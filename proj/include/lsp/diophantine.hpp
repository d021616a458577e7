#pragma once

// Summability of eps_N^{1/D_N} (times an optional multiplicity) for
// symbolically given sequences.

#include <memory>
#include <string>
#include <vector>

#include "lsp/qpoly.hpp"

namespace lsp {

// eps_N is base^{-e(N)} (Exponential) or N^{-e(N)} with e constant (Power).
// The degree is D_N = d(N) and each term is multiplied by base^{m(N)}.
struct SeriesSpec {
  enum class Kind { Exponential, Power, Table };
  Kind kind = Kind::Exponential;
  Rational base = 2;
  QPoly e;  // exponent polynomial in N
  QPoly d = QPoly::x();
  QPoly m;  // multiplicity exponent, zero by default
  int start = 1;
  // Table input: eps_N for N = start, start+1, ... followed by the tail model.
  std::vector<double> table;
  std::vector<double> table_degrees;
  std::shared_ptr<SeriesSpec> tail;

  std::string describe() const;
};

struct SummabilityVerdict {
  bool converges = false;
  std::vector<double> partial_sums;  // first terms, for display only
  std::string tail_bound_rationale;
};

SummabilityVerdict borel_cantelli_check(const SeriesSpec& s, int shown_terms = 20);

// eps_N = base^{-(a N^k)} with D_N = N.
SeriesSpec geometric_series(const Rational& base, int power_of_N, const Rational& coefficient = 1);
// Closing series for genus g: (4g-1)^{2k} pairs of words of length k, each
// with eps^{1/((4g-2)(g+2)k)} where eps = (4g-1)^{-[(2g+4)(4g-2)+eta] k^2}.
SeriesSpec closing_series(int g, const Rational& eta);
// Word-identity series over m generators: (2m-1)^D words of length D, each
// with eps^{1/(D(m+2))} where eps = (2m-1)^{-D^2 (m+2+eta)}.
SeriesSpec word_identity_series(int m, const Rational& eta);

// (2g+4)(4g-2) and 4g-1.
long quadexp_exponent_constant(int g);
long quadexp_base(int g);

// Parses "exp:BASE:E:D[:M]" with polynomials written as comma-separated
// coefficients (constant first), "power:A:D" and the named forms
// "closing:G:ETA" and "words:M:ETA".
SeriesSpec parse_series(const std::string& text);

}  // namespace lsp
