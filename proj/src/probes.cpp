#include "lsp/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "lsp/diophantine.hpp"
#include "lsp/rational.hpp"

namespace lsp {

namespace {

double log10_lower(const Interval& x) {
  Real r(x.precision());
  mpfr_log10(r.get(), x.lo(), MPFR_RNDD);
  return r.to_double();
}

bool same_bits(const Interval& a, const Interval& b) {
  return a.precision() == b.precision() && mpfr_equal_p(a.lo(), b.lo()) && mpfr_equal_p(a.hi(), b.hi());
}

double class_estimate(int m, int cutoff) {
  double total = 0;
  for (int n = 1; n <= cutoff; ++n) total += 2.0 * m * std::pow(2.0 * m - 1, n - 1) / n;
  return total;
}

}  // namespace

QuadExpTupleReport quadexp_check_tuple(const Group& group, int genus, const Rational& eta, int cutoff) {
  QuadExpTupleReport rep;
  LengthSpectrum s = build_spectrum(group, cutoff);
  GapReport scan = gap_scan(s);
  rep.records = s.records.size();
  const double C = static_cast<double>(quadexp_exponent_constant(genus)) + eta.get_d();
  const double lb = std::log10(static_cast<double>(quadexp_base(genus)));

  std::map<std::pair<size_t, size_t>, GapPair> cache;
  auto gap_of = [&](size_t i, size_t j) -> const GapPair& {
    auto key = std::minmax(i, j);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, pair_gap(s, key.first, key.second)).first;
    return it->second;
  };

  rep.gaps_match_scan = scan.pairs.size() + 1 == std::max<size_t>(s.records.size(), 1);
  for (size_t i = 0; i < scan.pairs.size(); ++i) {
    const GapPair& g = gap_of(i, i + 1);
    const GapPair& h = scan.pairs[i];
    if (g.status != h.status || !same_bits(g.gap, h.gap) || g.precision != h.precision) rep.gaps_match_scan = false;
  }

  std::set<std::pair<size_t, size_t>> distinct, equal;
  rep.log10_K = std::numeric_limits<double>::infinity();
  rep.K_positive = true;
  for (int L = 1; L <= cutoff; ++L) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < s.records.size(); ++i)
      if (s.records[i].word_length <= L) idx.push_back(i);
    LevelMinimum lm;
    lm.max_word_length = L;
    lm.log10_ratio = std::numeric_limits<double>::infinity();
    const double level_factor = C * L * L * lb;
    for (size_t pos = 0; pos < idx.size(); ++pos) {
      if (s.records[idx[pos]].word_length != L) continue;
      for (int dir : {-1, 1}) {
        for (long q = static_cast<long>(pos) + dir; q >= 0 && q < static_cast<long>(idx.size()); q += dir) {
          const size_t a = idx[pos], b = idx[static_cast<size_t>(q)];
          const GapPair& g = gap_of(a, b);
          if (g.status == GapStatus::Equal) {
            equal.insert(std::minmax(a, b));
            continue;
          }
          if (g.status == GapStatus::Distinct) {
            distinct.insert(std::minmax(a, b));
            if (!g.gap.certainly_positive()) rep.K_positive = false;
            const double r = log10_lower(g.gap) + level_factor;
            if (r < lm.log10_ratio) {
              lm.log10_ratio = r;
              lm.first = word_to_string(s.records[std::min(a, b)].word);
              lm.second = word_to_string(s.records[std::max(a, b)].word);
            }
          }
          break;
        }
      }
    }
    if (std::isfinite(lm.log10_ratio)) {
      rep.log10_K = std::min(rep.log10_K, lm.log10_ratio);
      rep.levels.push_back(lm);
    }
  }
  for (size_t i = 2; i < rep.levels.size(); ++i)
    if (rep.levels[i].log10_ratio < rep.levels[i - 1].log10_ratio &&
        rep.levels[i - 1].log10_ratio < rep.levels[i - 2].log10_ratio)
      rep.violation_candidates.push_back(rep.levels[i]);
  rep.pairs_checked = distinct.size();
  rep.equal_pairs = equal.size();
  if (distinct.empty()) rep.K_positive = false;
  return rep;
}

QuadExpReport quadexp_check(int genus, const Rational& eta, int cutoff, int tuple_count, std::uint64_t seed,
                            size_t max_classes) {
  if (genus < 2) throw Error(ErrorCode::InvalidArgument, "genus must be at least 2");
  if (cutoff < 1 || tuple_count < 1) throw Error(ErrorCode::InvalidArgument, "cutoff and tuple count must be positive");
  if (class_estimate(2 * genus, cutoff) > static_cast<double>(max_classes))
    throw Error(ErrorCode::BudgetExceeded, "cutoff " + std::to_string(cutoff) + " is too large for exhaustive pairing");
  QuadExpReport rep;
  rep.genus = genus;
  rep.eta = eta;
  rep.exponent_constant = quadexp_exponent_constant(genus);
  rep.base = quadexp_base(genus);
  rep.cutoff = cutoff;
  for (int i = 0; i < tuple_count; ++i) {
    const std::uint64_t sd = seed + static_cast<std::uint64_t>(i);
    Group g{sample_tuple(2 * genus, true, sd), "genus" + std::to_string(genus) + "-seed" + std::to_string(sd)};
    QuadExpTupleReport t = quadexp_check_tuple(g, genus, eta, cutoff);
    t.seed = sd;
    rep.violations += t.violation_candidates.size();
    rep.tuples.push_back(std::move(t));
  }
  return rep;
}

namespace {

struct IdentityWalk {
  const GeneratorTuple<Rational>& t;
  std::vector<RationalMatrix> letters;
  int cutoff;
  double rate;  // (m+2+eta) log10(2m-1)
  Word word;
  std::vector<double> margins;
  WordIdentityTupleReport* rep;

  void visit(const RationalMatrix& p) {
    for (Letter l = 0; l < static_cast<Letter>(letters.size()); ++l) {
      if (!word.empty() && l == inverse_letter(word.back())) continue;
      RationalMatrix x = p * letters[static_cast<size_t>(l)];
      word.push_back(l);
      Rational n = std::max(std::max(abs(Rational(x.a - 1)), abs(x.b)), std::max(abs(x.c), abs(Rational(x.d - 1))));
      const double len = static_cast<double>(word.size());
      ++rep->words_checked;
      if (n == 0) {
        rep->violations.push_back(word_to_string(word));
        margins.push_back(-std::numeric_limits<double>::infinity());
      } else {
        const double margin = log10_abs(n) + len * len * rate;
        margins.push_back(margin);
        if (margin <= 0) rep->violations.push_back(word_to_string(word));
      }
      if (static_cast<int>(word.size()) < cutoff) visit(x);
      word.pop_back();
    }
  }
};

}  // namespace

WordIdentityTupleReport word_identity_check_tuple(const GeneratorTuple<Rational>& t, const Rational& eta, int cutoff) {
  const int m = static_cast<int>(t.generators.size());
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "need at least two generators");
  WordIdentityTupleReport rep;
  IdentityWalk walk{t, {}, cutoff, (m + 2 + eta.get_d()) * std::log10(2.0 * m - 1), {}, {}, &rep};
  for (const auto& g : t.generators) {
    walk.letters.push_back(g);
    walk.letters.push_back(g.inverse());
  }
  if (cutoff >= 1) walk.visit(RationalMatrix::identity_like(Rational(0)));
  if (!walk.margins.empty()) {
    auto& v = walk.margins;
    rep.min_log10_margin = *std::min_element(v.begin(), v.end());
    rep.max_log10_margin = *std::max_element(v.begin(), v.end());
    std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
    rep.median_log10_margin = v[v.size() / 2];
  }
  return rep;
}

WordIdentityReport word_identity_bound_check(int m, const Rational& eta, int cutoff, int tuple_count, std::uint64_t seed,
                                             size_t max_words) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "need at least two generators");
  if (cutoff < 1 || tuple_count < 1) throw Error(ErrorCode::InvalidArgument, "cutoff and tuple count must be positive");
  double words = 0;
  for (int n = 1; n <= cutoff; ++n) words += 2.0 * m * std::pow(2.0 * m - 1, n - 1);
  if (words > static_cast<double>(max_words))
    throw Error(ErrorCode::BudgetExceeded, "cutoff " + std::to_string(cutoff) + " enumerates too many words");
  WordIdentityReport rep;
  rep.m = m;
  rep.eta = eta;
  rep.cutoff = cutoff;
  for (int i = 0; i < tuple_count; ++i) {
    const std::uint64_t sd = seed + static_cast<std::uint64_t>(i);
    WordIdentityTupleReport t = word_identity_check_tuple(sample_tuple(m, false, sd), eta, cutoff);
    t.seed = sd;
    rep.violations += t.violations.size();
    rep.tuples.push_back(std::move(t));
  }
  return rep;
}

}  // namespace lsp
