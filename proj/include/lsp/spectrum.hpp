#pragma once

// Length spectra of generator tuples: one record per primitive hyperbolic
// conjugacy class up to a word-length cutoff, with gap analysis.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lsp/algebraic_bounds.hpp"
#include "lsp/moebius.hpp"
#include "lsp/words.hpp"

namespace lsp {

using ExactTrace = std::variant<std::monostate, Rational, FieldElement>;

std::string exact_trace_string(const ExactTrace& t);

// 2 arccosh(|t| / 2); throws NotHyperbolic unless |t| > 2 is certified.
Interval length_from_trace(const Interval& trace);
Interval length_of(const IntervalMatrix& x);
Interval length_of(const RationalMatrix& x, int prec = kDefaultPrecision);

struct GeodesicRecord {
  Word word;
  int word_length = 0;
  ExactTrace trace;
  Interval trace_enclosure;
  Interval length;
};

struct ExcludedClass {
  Word word;
  Classification reason = Classification::Undecided;
  ExactTrace trace;
};

struct LengthSpectrum {
  Group group;
  int cutoff = 0;
  int precision = kDefaultPrecision;
  bool oriented = false;
  std::vector<GeodesicRecord> records;
  std::vector<ExcludedClass> excluded;

  int max_word_length() const;
};

// Records for every primitive class of word length <= cutoff whose matrix
// is hyperbolic, sorted by |trace| (exact rational), else by length midpoint.
LengthSpectrum build_spectrum(const Group& group, int cutoff, int prec = kDefaultPrecision, bool oriented = false);

// Trace and length enclosures of a record recomputed at another precision.
std::pair<Interval, Interval> record_at(const LengthSpectrum& s, const GeodesicRecord& r, int prec);

enum class GapStatus { Distinct, Equal, Undecided };
const char* to_string(GapStatus s);

struct GapPair {
  size_t first = 0;   // record indices
  size_t second = 0;
  Interval gap;       // enclosure of |l_second - l_first|
  GapStatus status = GapStatus::Undecided;
  int precision = kDefaultPrecision;
};

struct GapReport {
  std::vector<GapPair> pairs;
  std::optional<Interval> min_certified_gap;
  size_t distinct = 0;
  size_t equal = 0;
  size_t undecided = 0;
};

// Exact equality when both traces are exact; otherwise the enclosures are
// separated by raising precision up to `max_prec`.
GapPair pair_gap(const LengthSpectrum& s, size_t i, size_t j, int max_prec = 512);
GapReport gap_scan(const LengthSpectrum& s, int max_prec = 512);

struct MultiplicityGroup {
  std::string trace;
  Interval length;
  std::vector<std::string> classes;
};

struct MultiplicityReport {
  std::vector<MultiplicityGroup> groups;
  // Set when the scalars are not exact and no equality can be proved.
  std::string notice;
};

MultiplicityReport multiplicity_report(const LengthSpectrum& s);

struct SeparationFit {
  double C = 0;
  double beta = 0;
  std::vector<double> residuals;        // log-gap residuals on the envelope
  std::vector<std::pair<double, double>> envelope;  // (max length, log gap)
  size_t pairs_used = 0;
};

// Least squares of log(gap) against -max(l1, l2) over per-bin minimum gaps.
// Needs at least 10 points.
SeparationFit fit_separation_points(const std::vector<std::pair<double, double>>& max_length_and_gap,
                                    double bin_width = 1.0);
SeparationFit fit_separation(const LengthSpectrum& s, const GapReport& r, double bin_width = 1.0);

// (max m/l, max l/m) over the records.
std::pair<double, double> milnor_constants(const LengthSpectrum& s);

struct GapBoundReport {
  int field_degree = 1;
  Integer N = 1;
  Interval entry_height;     // L with all entries in H(L, N, 1)
  int max_word_length = 0;
  AlgebraicClass trace_class;
  AlgebraicClass combined;
  Interval exp_bound;        // |e^{r1} - e^{r2}| lower bound
  Interval length_bound;     // |l1 - l2| lower bound
  double log10_length_bound = 0;
  size_t pairs_checked = 0;
  bool respected = false;
};

// Explicit separation certificate for exact (rational or number-field)
// tuples, checked against every certified-distinct pair of the report.
GapBoundReport certified_gap_bound(const LengthSpectrum& s, const GapReport& r, int prec = 256);

std::string spectrum_csv(const LengthSpectrum& s);
std::string gaps_csv(const LengthSpectrum& s, const GapReport& r);

}  // namespace lsp
