#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "lsp/moebius.hpp"
#include "lsp/words.hpp"

namespace oracle {

inline bool cyclically_reduced(const lsp::Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i + 1] == lsp::inverse_letter(w[i])) return false;
  return w.size() < 2 || w.back() != lsp::inverse_letter(w.front());
}

inline lsp::Word invert(const lsp::Word& w) {
  lsp::Word r(w.rbegin(), w.rend());
  for (auto& l : r) l = lsp::inverse_letter(l);
  return r;
}

inline lsp::Word rotate(const lsp::Word& w, size_t k) {
  lsp::Word r(w.begin() + static_cast<long>(k), w.end());
  r.insert(r.end(), w.begin(), w.begin() + static_cast<long>(k));
  return r;
}

inline bool proper_power(const lsp::Word& w) {
  size_t n = w.size();
  for (size_t p = 1; p < n; ++p)
    if (n % p == 0 && rotate(w, p) == w) return true;
  return false;
}

// Every word over 2m letters of length n, filtered by reducedness.
inline std::vector<lsp::Word> all_reduced(int m, int n) {
  std::vector<lsp::Word> out;
  lsp::Word w(static_cast<size_t>(n), 0);
  const int letters = 2 * m;
  for (;;) {
    bool ok = true;
    for (size_t i = 0; i + 1 < w.size() && ok; ++i) ok = w[i + 1] != lsp::inverse_letter(w[i]);
    if (ok) out.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<size_t>(i)] == letters - 1) w[static_cast<size_t>(i--)] = 0;
    if (i < 0) break;
    ++w[static_cast<size_t>(i)];
  }
  return out;
}

// Minimal representatives of the rotation (+ inversion) orbits of the
// cyclically reduced words of length n.
inline std::set<lsp::Word> orbit_classes(int m, int n, bool primitive_only, bool oriented) {
  std::set<lsp::Word> reps;
  for (const auto& w : all_reduced(m, n)) {
    if (!cyclically_reduced(w)) continue;
    if (primitive_only && proper_power(w)) continue;
    lsp::Word best = w;
    for (size_t k = 0; k < w.size(); ++k) {
      best = std::min(best, rotate(w, k));
      if (!oriented) best = std::min(best, rotate(invert(w), k));
    }
    reps.insert(best);
  }
  return reps;
}

inline long long reduced_count(int m, int n) {
  long long c = 2LL * m;
  for (int i = 1; i < n; ++i) c *= 2LL * m - 1;
  return c;
}

// Naive left-to-right product with explicit inverse matrices.
inline lsp::RationalMatrix product(const lsp::Word& w, const std::vector<lsp::RationalMatrix>& g) {
  lsp::RationalMatrix r{1, 0, 0, 1};
  for (lsp::Letter l : w) {
    const auto& x = g[static_cast<size_t>(l / 2)];
    lsp::RationalMatrix y = (l % 2) ? lsp::RationalMatrix{x.d, -x.b, -x.c, x.a} : x;
    r = {r.a * y.a + r.b * y.c, r.a * y.b + r.b * y.d, r.c * y.a + r.d * y.c, r.c * y.b + r.d * y.d};
  }
  return r;
}

}  // namespace oracle
