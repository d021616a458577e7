#pragma once

#include <vector>

#include "lsp/moebius.hpp"
#include "lsp/qpoly.hpp"
#include "lsp/words.hpp"

namespace gen {

inline lsp::Rational fraction(long n, long d) {
  lsp::Rational q(n, d);
  q.canonicalize();
  return q;
}

inline lsp::Rational rational(lsp::SeededRng& rng, long num_bound, long den_bound) {
  return fraction(rng.uniform(-num_bound, num_bound), rng.uniform(1, den_bound));
}

inline lsp::QPoly monic(lsp::SeededRng& rng, int max_deg, long bound, bool nonzero_constant = true) {
  int deg = static_cast<int>(rng.uniform(1, max_deg));
  std::vector<lsp::Rational> c(deg + 1);
  for (int i = 0; i < deg; ++i) c[i] = rng.uniform(-bound, bound);
  if (nonzero_constant && c[0] == 0) c[0] = rng.uniform(1, bound);
  c[deg] = 1;
  return lsp::QPoly(c);
}

// Determinant one with a != 0.
inline lsp::RationalMatrix sl2(lsp::SeededRng& rng, long bound, long den) {
  lsp::Rational a = fraction(rng.uniform(1, bound), rng.uniform(1, den));
  if (rng.uniform(0, 1)) a = -a;
  lsp::Rational b = rational(rng, bound, den), c = rational(rng, bound, den);
  return {a, b, c, lsp::Rational((1 + b * c) / a)};
}

inline lsp::Word reduced_word(lsp::SeededRng& rng, int m, int length) {
  lsp::Word w;
  while (static_cast<int>(w.size()) < length) {
    lsp::Letter l = static_cast<lsp::Letter>(rng.uniform(0, 2 * m - 1));
    if (!w.empty() && l == lsp::inverse_letter(w.back())) continue;
    w.push_back(l);
  }
  return w;
}

}  // namespace gen
