#pragma once

// Empirical probes of the almost-sure gap and word-identity lower bounds on
// seeded random tuples.

#include <cstdint>
#include <string>
#include <vector>

#include "lsp/spectrum.hpp"

namespace lsp {

struct LevelMinimum {
  int max_word_length = 0;
  double log10_ratio = 0;  // min over pairs at this level of log10(gap / bound)
  std::string first;
  std::string second;
};

struct QuadExpTupleReport {
  std::uint64_t seed = 0;
  size_t records = 0;
  size_t pairs_checked = 0;  // certified-distinct pairs considered
  size_t equal_pairs = 0;
  double log10_K = 0;        // fitted K(A) = min ratio with K = 1
  bool K_positive = false;
  std::vector<LevelMinimum> levels;
  std::vector<LevelMinimum> violation_candidates;
  bool gaps_match_scan = false;
};

struct QuadExpReport {
  int genus = 0;
  Rational eta;
  long exponent_constant = 0;  // (2g+4)(4g-2)
  long base = 0;               // 4g-1
  int cutoff = 0;
  std::vector<QuadExpTupleReport> tuples;
  size_t violations = 0;
};

// Pairs are all pairs of primitive classes to the cutoff, organised by the
// longer word: for each level L the nearest neighbours (in length order
// among classes of length <= L) of the classes of length exactly L.
QuadExpTupleReport quadexp_check_tuple(const Group& group, int genus, const Rational& eta, int cutoff);

// Throws BudgetExceeded when the class count estimate exceeds max_classes.
QuadExpReport quadexp_check(int genus, const Rational& eta, int cutoff, int tuple_count, std::uint64_t seed,
                            size_t max_classes = 400000);

struct WordIdentityTupleReport {
  std::uint64_t seed = 0;
  size_t words_checked = 0;
  std::vector<std::string> violations;
  double min_log10_margin = 0;
  double median_log10_margin = 0;
  double max_log10_margin = 0;
};

struct WordIdentityReport {
  int m = 0;
  Rational eta;
  int cutoff = 0;
  std::vector<WordIdentityTupleReport> tuples;
  size_t violations = 0;
};

// Every nonempty reduced word to the cutoff against
// ||W - I||_max > (2m-1)^{-|W|^2 (m+2+eta)}.
WordIdentityTupleReport word_identity_check_tuple(const GeneratorTuple<Rational>& t, const Rational& eta, int cutoff);
WordIdentityReport word_identity_bound_check(int m, const Rational& eta, int cutoff, int tuple_count, std::uint64_t seed,
                                             size_t max_words = 2000000);

}  // namespace lsp
