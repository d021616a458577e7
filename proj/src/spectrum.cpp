#include "lsp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace lsp {

std::string exact_trace_string(const ExactTrace& t) {
  if (const auto* q = std::get_if<Rational>(&t)) return q->get_str();
  if (const auto* f = std::get_if<FieldElement>(&t)) return f->to_string();
  return "";
}

Interval length_from_trace(const Interval& trace) {
  Interval a = abs(trace);
  if (!a.certainly_greater(Rational(2))) throw Error(ErrorCode::NotHyperbolic, "|trace| > 2 is not certified");
  Interval two = Interval::from_integer(2, trace.precision());
  return two * acosh(a / two);
}

Interval length_of(const IntervalMatrix& x) { return length_from_trace(x.trace()); }

Interval length_of(const RationalMatrix& x, int prec) {
  return length_from_trace(Interval::from_rational(x.trace(), prec));
}

int LengthSpectrum::max_word_length() const {
  int m = 0;
  for (const auto& r : records) m = std::max(m, r.word_length);
  return m;
}

namespace {

void add_record(LengthSpectrum& s, const Word& w, ExactTrace trace, Interval enc) {
  GeodesicRecord r;
  r.word = w;
  r.word_length = static_cast<int>(w.size());
  r.trace = std::move(trace);
  r.length = length_from_trace(enc);
  r.trace_enclosure = std::move(enc);
  s.records.push_back(std::move(r));
}

// Sort key helpers.
std::string abs_trace_key(const GeodesicRecord& r) {
  if (const auto* f = std::get_if<FieldElement>(&r.trace)) {
    return r.trace_enclosure.certainly_negative() ? (-*f).to_string() : f->to_string();
  }
  return "";
}

bool same_abs_trace(const ExactTrace& x, const ExactTrace& y) {
  if (const auto* a = std::get_if<Rational>(&x))
    if (const auto* b = std::get_if<Rational>(&y)) return abs(*a) == abs(*b);
  if (const auto* a = std::get_if<FieldElement>(&x))
    if (const auto* b = std::get_if<FieldElement>(&y)) return *a == *b || *a == -*b;
  return false;
}

bool is_exact(const ExactTrace& t) { return !std::holds_alternative<std::monostate>(t); }

}  // namespace

LengthSpectrum build_spectrum(const Group& group, int cutoff, int prec, bool oriented) {
  LengthSpectrum s;
  s.group = group;
  s.cutoff = cutoff;
  s.precision = prec;
  s.oriented = oriented;
  if (cutoff <= 0) return s;
  const int m = static_cast<int>(group.size());

  if (const auto* t = std::get_if<GeneratorTuple<Rational>>(&group.tuple)) {
    for_each_class(m, cutoff, true, oriented, [&](const Word& w) {
      RationalMatrix x = evaluate(w, *t);
      Classification c = classify(x);
      Rational tr = x.trace();
      if (c != Classification::Hyperbolic) {
        s.excluded.push_back({w, c, tr});
        return;
      }
      add_record(s, w, tr, Interval::from_rational(tr, prec));
    });
    std::stable_sort(s.records.begin(), s.records.end(), [](const GeodesicRecord& a, const GeodesicRecord& b) {
      Rational ta = abs(std::get<Rational>(a.trace)), tb = abs(std::get<Rational>(b.trace));
      if (ta != tb) return ta < tb;
      return word_to_string(a.word) < word_to_string(b.word);
    });
    return s;
  }

  if (const auto* t = std::get_if<GeneratorTuple<FieldElement>>(&group.tuple)) {
    for_each_class(m, cutoff, true, oriented, [&](const Word& w) {
      FieldMatrix x = evaluate(w, *t);
      Classification c = classify(x);
      FieldElement tr = x.trace();
      if (c != Classification::Hyperbolic) {
        s.excluded.push_back({w, c, tr});
        return;
      }
      add_record(s, w, tr, tr.real_value(prec));
    });
  } else {
    std::map<int, GeneratorTuple<Interval>> tuples;
    auto tuple_at = [&](int p) -> const GeneratorTuple<Interval>& {
      auto it = tuples.find(p);
      if (it == tuples.end()) it = tuples.emplace(p, group.enclose(p)).first;
      return it->second;
    };
    for_each_class(m, cutoff, true, oriented, [&](const Word& w) {
      Classification c = Classification::Undecided;
      Interval tr(prec);
      for (int p = prec; p <= std::max(prec, 512); p *= 2) {
        IntervalMatrix x = evaluate(w, tuple_at(p));
        c = classify(x);
        tr = x.trace();
        if (c != Classification::Undecided) break;
      }
      if (c != Classification::Hyperbolic) {
        s.excluded.push_back({w, c, std::monostate{}});
        return;
      }
      if (tr.precision() != prec) tr = evaluate(w, tuple_at(prec)).trace();
      if (!abs(tr).certainly_greater(Rational(2))) {
        // Hyperbolic only at a higher precision; keep the sharper enclosure.
        for (int p = prec * 2; p <= 512; p *= 2) {
          tr = evaluate(w, tuple_at(p)).trace();
          if (abs(tr).certainly_greater(Rational(2))) break;
        }
      }
      add_record(s, w, std::monostate{}, tr);
    });
  }
  std::vector<std::pair<std::tuple<double, std::string, std::string>, size_t>> keys;
  for (size_t i = 0; i < s.records.size(); ++i)
    keys.push_back({{s.records[i].length.mid(), abs_trace_key(s.records[i]), word_to_string(s.records[i].word)}, i});
  std::sort(keys.begin(), keys.end());
  std::vector<GeodesicRecord> sorted;
  sorted.reserve(keys.size());
  for (const auto& k : keys) sorted.push_back(std::move(s.records[k.second]));
  s.records = std::move(sorted);
  return s;
}

std::pair<Interval, Interval> record_at(const LengthSpectrum& s, const GeodesicRecord& r, int prec) {
  Interval tr(prec);
  if (const auto* q = std::get_if<Rational>(&r.trace))
    tr = Interval::from_rational(*q, prec);
  else if (const auto* f = std::get_if<FieldElement>(&r.trace))
    tr = f->real_value(prec);
  else
    tr = evaluate(r.word, s.group.enclose(prec)).trace();
  Interval len = length_from_trace(tr);
  return {tr, len};
}

const char* to_string(GapStatus s) {
  switch (s) {
    case GapStatus::Distinct: return "distinct";
    case GapStatus::Equal: return "equal";
    case GapStatus::Undecided: return "undecided";
  }
  return "unknown";
}

GapPair pair_gap(const LengthSpectrum& s, size_t i, size_t j, int max_prec) {
  const GeodesicRecord& a = s.records.at(i);
  const GeodesicRecord& b = s.records.at(j);
  GapPair out;
  out.first = i;
  out.second = j;
  out.precision = s.precision;
  if (is_exact(a.trace) && is_exact(b.trace) && same_abs_trace(a.trace, b.trace)) {
    out.status = GapStatus::Equal;
    out.gap = Interval(s.precision);
    return out;
  }
  Interval la = a.length, lb = b.length;
  int p = s.precision;
  while (true) {
    if (la.disjoint(lb)) {
      out.status = GapStatus::Distinct;
      out.gap = abs(lb - la);
      out.precision = p;
      return out;
    }
    if (p * 2 > max_prec) {
      out.status = GapStatus::Undecided;
      out.gap = abs(lb - la);
      out.precision = p;
      return out;
    }
    p *= 2;
    la = record_at(s, a, p).second;
    lb = record_at(s, b, p).second;
  }
}

GapReport gap_scan(const LengthSpectrum& s, int max_prec) {
  GapReport rep;
  for (size_t i = 0; i + 1 < s.records.size(); ++i) {
    GapPair g = pair_gap(s, i, i + 1, max_prec);
    switch (g.status) {
      case GapStatus::Distinct:
        ++rep.distinct;
        rep.min_certified_gap = rep.min_certified_gap ? min(*rep.min_certified_gap, g.gap) : g.gap;
        break;
      case GapStatus::Equal: ++rep.equal; break;
      case GapStatus::Undecided: ++rep.undecided; break;
    }
    rep.pairs.push_back(std::move(g));
  }
  return rep;
}

MultiplicityReport multiplicity_report(const LengthSpectrum& s) {
  MultiplicityReport rep;
  if (s.group.kind() == ScalarKind::Real) {
    rep.notice = "interval scalars: equal lengths cannot be proved, report left empty";
    return rep;
  }
  size_t i = 0;
  while (i < s.records.size()) {
    size_t j = i + 1;
    while (j < s.records.size() && same_abs_trace(s.records[i].trace, s.records[j].trace)) ++j;
    if (j - i >= 2) {
      MultiplicityGroup g;
      const auto& r = s.records[i];
      if (const auto* q = std::get_if<Rational>(&r.trace))
        g.trace = abs(*q).get_str();
      else
        g.trace = abs_trace_key(r);
      g.length = r.length;
      for (size_t k = i; k < j; ++k) g.classes.push_back(word_to_string(s.records[k].word));
      rep.groups.push_back(std::move(g));
    }
    i = j;
  }
  return rep;
}

SeparationFit fit_separation_points(const std::vector<std::pair<double, double>>& pts, double bin_width) {
  if (pts.size() < 10) throw Error(ErrorCode::InsufficientData, "need at least 10 certified-distinct pairs");
  if (!(bin_width > 0)) throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
  std::map<long, std::pair<double, double>> bins;
  for (const auto& [x, gap] : pts) {
    if (!(gap > 0)) continue;
    double y = std::log(gap);
    long key = static_cast<long>(std::floor(x / bin_width));
    auto it = bins.find(key);
    if (it == bins.end() || y < it->second.second) bins[key] = {x, y};
  }
  if (bins.size() < 2) throw Error(ErrorCode::InsufficientData, "lower envelope has fewer than two bins");
  SeparationFit fit;
  fit.pairs_used = pts.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [key, xy] : bins) {
    fit.envelope.push_back(xy);
    sx += xy.first;
    sy += xy.second;
    sxx += xy.first * xy.first;
    sxy += xy.first * xy.second;
  }
  const double n = static_cast<double>(bins.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  fit.beta = -slope;
  fit.C = std::exp(intercept);
  for (const auto& [x, y] : fit.envelope) fit.residuals.push_back(y - (intercept + slope * x));
  return fit;
}

SeparationFit fit_separation(const LengthSpectrum& s, const GapReport& r, double bin_width) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : r.pairs) {
    if (p.status != GapStatus::Distinct) continue;
    double x = std::max(s.records[p.first].length.mid(), s.records[p.second].length.mid());
    pts.emplace_back(x, p.gap.mid());
  }
  return fit_separation_points(pts, bin_width);
}

std::pair<double, double> milnor_constants(const LengthSpectrum& s) {
  if (s.records.empty()) throw Error(ErrorCode::InsufficientData, "empty spectrum");
  double lo = 0, hi = 0;
  for (const auto& r : s.records) {
    double l = r.length.mid();
    double m = r.word_length;
    lo = std::max(lo, m / l);
    hi = std::max(hi, l / m);
  }
  return {lo, hi};
}

namespace {

Interval upper_point(const Interval& x) {
  Real v(x.precision());
  mpfr_set(v.get(), x.hi(), MPFR_RNDU);
  return Interval::from_real(v, x.precision());
}

Interval integer_power(const Integer& n, unsigned long e, int prec) {
  Integer v;
  mpz_pow_ui(v.get_mpz_t(), n.get_mpz_t(), e);
  return Interval::from_rational(Rational(v), prec);
}

}  // namespace

GapBoundReport certified_gap_bound(const LengthSpectrum& s, const GapReport& r, int prec) {
  if (s.group.kind() == ScalarKind::Real) throw Error(ErrorCode::NonAlgebraic, "certificate needs exact algebraic entries");
  if (s.records.empty()) throw Error(ErrorCode::InsufficientData, "empty spectrum");
  GapBoundReport rep;
  Interval one = Interval::from_integer(1, prec);
  rep.entry_height = one;
  if (const auto* t = std::get_if<GeneratorTuple<Rational>>(&s.group.tuple)) {
    rep.field_degree = 1;
    for (const auto& g : t->generators)
      for (const Rational* e : {&g.a, &g.b, &g.c, &g.d}) rep.N = lcm(rep.N, e->get_den());
    for (const auto& g : t->generators)
      for (const Rational* e : {&g.a, &g.b, &g.c, &g.d})
        rep.entry_height = max(rep.entry_height, Interval::from_rational(abs(*e) * rep.N, prec));
  } else {
    const auto& ft = std::get<GeneratorTuple<FieldElement>>(s.group.tuple);
    rep.field_degree = ft.generators.at(0).a.field()->degree();
    for (const auto& g : ft.generators)
      for (const FieldElement* e : {&g.a, &g.b, &g.c, &g.d})
        for (const auto& c : e->coords()) rep.N = lcm(rep.N, c.get_den());
    FieldElement Nel = FieldElement::from_rational(ft.generators[0].a.field(), Rational(rep.N));
    for (const auto& g : ft.generators)
      for (const FieldElement* e : {&g.a, &g.b, &g.c, &g.d})
        rep.entry_height = max(rep.entry_height, embedding_height(*e * Nel, prec));
  }
  const unsigned long m2 = static_cast<unsigned long>(s.max_word_length());
  rep.max_word_length = static_cast<int>(m2);
  // Entries of a word of length m lie in H((2L)^m, N, m); over the common
  // denominator N^m2 and summed for the trace:
  Interval L = upper_point(rep.entry_height);
  Interval two = Interval::from_integer(2, prec);
  Interval trace_height = two * pow(two * L, m2) * integer_power(rep.N, m2 - 1, prec);
  rep.trace_class.L = max(trace_height, integer_power(rep.N, m2, prec));
  rep.trace_class.N = rep.N;
  rep.trace_class.p = m2;
  rep.trace_class.D = 2;  // e^r is a root of x^2 - |t| x + 1
  rep.combined = combine_classes(rep.trace_class, rep.trace_class, prec);
  rep.exp_bound = difference_lower_bound(rep.combined, rep.field_degree, prec);
  Interval lmax = s.records.front().length;
  for (const auto& rec : s.records) lmax = max(lmax, rec.length);
  Interval lmax_hi = upper_point(lmax);
  rep.length_bound = two * rep.exp_bound / exp(lmax_hi / two);
  rep.log10_length_bound = (log(rep.length_bound) / log(Interval::from_integer(10, prec))).mid();
  rep.respected = true;
  for (const auto& p : r.pairs) {
    if (p.status != GapStatus::Distinct) continue;
    ++rep.pairs_checked;
    if (!mpfr_lessequal_p(rep.length_bound.hi(), p.gap.lo())) rep.respected = false;
  }
  return rep;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string spectrum_csv(const LengthSpectrum& s) {
  std::ostringstream out;
  out << "class_string,word_length,trace_exact,trace_lo,trace_hi,length_lo,length_hi\n";
  for (const auto& r : s.records) {
    out << csv_field(word_to_string(r.word)) << ',' << r.word_length << ',' << csv_field(exact_trace_string(r.trace)) << ','
        << shortest_decimal(r.trace_enclosure.lower()) << ',' << shortest_decimal(r.trace_enclosure.upper()) << ','
        << shortest_decimal(r.length.lower()) << ',' << shortest_decimal(r.length.upper()) << '\n';
  }
  return out.str();
}

std::string gaps_csv(const LengthSpectrum& s, const GapReport& r) {
  std::ostringstream out;
  out << "first_class,second_class,status,gap_lo,gap_hi,precision\n";
  for (const auto& p : r.pairs) {
    out << csv_field(word_to_string(s.records[p.first].word)) << ',' << csv_field(word_to_string(s.records[p.second].word))
        << ',' << to_string(p.status) << ',' << shortest_decimal(p.gap.lower()) << ',' << shortest_decimal(p.gap.upper())
        << ',' << p.precision << '\n';
  }
  return out.str();
}

}  // namespace lsp
