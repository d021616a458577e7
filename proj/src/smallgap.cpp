#include "lsp/smallgap.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "lsp/rational.hpp"
#include "lsp/spectrum.hpp"

namespace lsp {

Interval leading_log_eigenvalue(const IntervalMatrix& x) {
  Interval t = abs(x.trace());
  if (!t.certainly_greater(Rational(2))) throw Error(ErrorCode::NotHyperbolic, "leading eigenvalue needs |trace| > 2");
  const int prec = t.precision();
  Interval four = Interval::from_integer(4, prec);
  Interval two = Interval::from_integer(2, prec);
  return log((t + sqrt(square(t) - four)) / two);
}

Interval leading_log_eigenvalue(const RationalMatrix& x, int prec) { return leading_log_eigenvalue(x.enclose(prec)); }

double AsymptoteModel::predict(int k, int m) const {
  return kappa + 2.0 * k * lambda1.mid() + 2.0 * m * lambda2.mid();
}

namespace {

std::vector<RationalMatrix> powers(const RationalMatrix& x, int n) {
  std::vector<RationalMatrix> out{RationalMatrix::identity_like(x.a)};
  for (int i = 1; i <= n; ++i) out.push_back(out.back() * x);
  return out;
}

Word power_word(int gen, int k) { return Word(static_cast<size_t>(k), make_letter(gen, false)); }

Word ab_word(int k, int m) {
  Word w = power_word(0, k);
  Word b = power_word(1, m);
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

}  // namespace

AsymptoteModel fit_asymptote(const RationalMatrix& A1, const RationalMatrix& A2, int k_max, int m_max, int prec) {
  if (k_max < 3 || m_max < 3) throw Error(ErrorCode::InvalidArgument, "fit needs k_max, m_max >= 3");
  if (A1 * A2 == A2 * A1) throw Error(ErrorCode::Commuting, "A1 and A2 commute; the intercept is undefined");
  AsymptoteModel model;
  model.lambda1 = leading_log_eigenvalue(A1, prec);
  model.lambda2 = leading_log_eigenvalue(A2, prec);
  model.k_max = k_max;
  model.m_max = m_max;
  auto p1 = powers(A1, k_max);
  auto p2 = powers(A2, m_max);
  std::vector<std::vector<double>> r(k_max + 1, std::vector<double>(m_max + 1, 0.0));
  for (int k = 1; k <= k_max; ++k)
    for (int m = 1; m <= m_max; ++m) {
      Interval l = length_of(p1[k] * p2[m], prec);
      Interval two = Interval::from_integer(2, prec);
      r[k][m] = (l - two * Interval::from_integer(k, prec) * model.lambda1 -
                 two * Interval::from_integer(m, prec) * model.lambda2)
                    .mid();
    }
  model.kappa = r[k_max][m_max];
  model.residual_by_min.assign(std::min(k_max, m_max) + 1, 0.0);
  for (int k = 1; k <= k_max; ++k)
    for (int m = 1; m <= m_max; ++m) {
      const int s = std::min(k, m);
      const double e = std::abs(r[k][m] - model.kappa);
      model.residual_by_min[s] = std::max(model.residual_by_min[s], e);
      if (s >= 2) model.residual_bound = std::max(model.residual_bound, e);
    }
  return model;
}

std::vector<TargetHit> target_candidates(const AsymptoteModel& model, const RationalMatrix& A1, const RationalMatrix& A2,
                                         const Interval& target, double delta, int k_cap, int m_cap) {
  if (!(delta > 0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  const int prec = std::max(target.precision(), model.lambda1.precision());
  Interval d = Interval::from_double(delta, prec);
  const double step = 2.0 * model.lambda1.mid();
  const double t = target.mid();
  auto p1 = powers(A1, k_cap);
  auto p2 = powers(A2, m_cap);
  std::vector<TargetHit> hits;
  std::vector<std::vector<bool>> seen(k_cap + 1, std::vector<bool>(m_cap + 1, false));
  for (int m = 1; m <= m_cap; ++m) {
    const double guess = (t - model.kappa - 2.0 * m * model.lambda2.mid()) / step;
    if (guess < -3) break;
    const long k0 = std::lround(guess);
    for (long k = k0 - 3; k <= k0 + 3; ++k) {
      if (k < 1 || k > k_cap || seen[k][m]) continue;
      seen[k][m] = true;
      RationalMatrix x = p1[k] * p2[m];
      Interval l = length_of(x, prec);
      Interval miss = abs(l - target);
      if (!miss.certainly_less(d)) continue;
      hits.push_back({static_cast<int>(k), m, ab_word(static_cast<int>(k), m), x.trace(), l, miss});
    }
  }
  std::stable_sort(hits.begin(), hits.end(), [](const TargetHit& a, const TargetHit& b) {
    if (a.miss.mid() != b.miss.mid()) return a.miss.mid() < b.miss.mid();
    return std::make_pair(a.k, a.m) < std::make_pair(b.k, b.m);
  });
  return hits;
}

TargetHit dense_target_search(const AsymptoteModel& model, const RationalMatrix& A1, const RationalMatrix& A2,
                              const Interval& target, double delta, int k_cap, int m_cap) {
  auto hits = target_candidates(model, A1, A2, target, delta, k_cap, m_cap);
  if (!hits.empty()) return hits.front();
  // Nearest miss over the whole capped grid for the report.
  const int prec = target.precision();
  auto p1 = powers(A1, k_cap);
  auto p2 = powers(A2, m_cap);
  double best = INFINITY;
  int bk = 0, bm = 0;
  for (int k = 1; k <= k_cap; ++k)
    for (int m = 1; m <= m_cap; ++m) {
      double miss = std::abs(length_of(p1[k] * p2[m], prec).mid() - target.mid());
      if (miss < best) {
        best = miss;
        bk = k;
        bm = m;
      }
    }
  std::ostringstream msg;
  msg << "no A1^k A2^m within " << delta << " of " << target.mid() << " for k <= " << k_cap << ", m <= " << m_cap
      << "; nearest miss " << best << " at (k, m) = (" << bk << ", " << bm << ")";
  throw Error(ErrorCode::CapsExhausted, msg.str());
}

RationalMatrix shear(const RationalMatrix& x, const Rational& eta) {
  return {x.a + eta * x.c, x.b + eta * x.d, x.c, x.d};
}

namespace {

GeneratorTuple<Interval> enclose_tuple(const GeneratorTuple<Rational>& t, int prec) {
  GeneratorTuple<Interval> out;
  out.genus = t.genus;
  for (const auto& g : t.generators) out.generators.push_back(g.enclose(prec));
  return out;
}

bool bit_identical(const Interval& a, const Interval& b) {
  return a.precision() == b.precision() && mpfr_equal_p(a.lo(), b.lo()) && mpfr_equal_p(a.hi(), b.hi());
}

// Restores the surface relation after A3 moved; false if no hyperbolic
// rational completion was found.
bool restore_relation(std::vector<RationalMatrix>& gens, int genus, std::uint64_t seed) {
  const size_t last = static_cast<size_t>(2 * genus - 1);
  std::vector<RationalMatrix> partial(gens.begin(), gens.begin() + static_cast<long>(last));
  try {
    RationalMatrix x = relation_repair(partial);
    if (classify(x) == Classification::Hyperbolic) {
      gens[last] = x;
      return true;
    }
  } catch (const Error&) {
  }
  std::vector<RationalMatrix> head(gens.begin(), gens.begin() + static_cast<long>(last - 1));
  SeededRng rng(seed);
  if (!complete_relation(head, rng, 200)) return false;
  gens = std::move(head);
  return true;
}

}  // namespace

PerturbationResult equalize_lengths(const GeneratorTuple<Rational>& t, int n, const EqualizeOptions& o) {
  if (t.generators.size() < 3) throw Error(ErrorCode::ArityMismatch, "equalize_lengths needs at least three generators");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  const int g = t.genus;
  if (g == 2)
    throw Error(ErrorCode::Unsupported, "genus 2 would have to re-solve A3 itself; use a free tuple or genus >= 3");
  const int prec = o.precision;
  if (g == 0) {
    SchottkyReport rep = schottky_check(enclose_tuple(t, prec));
    if (!rep.verified) throw Error(ErrorCode::VerificationFailed, "input tuple is not Schottky-verified: " + rep.detail);
  }
  const RationalMatrix& A1 = t.generators[0];
  const RationalMatrix& A2 = t.generators[1];
  std::vector<RationalMatrix> gens = t.generators;
  const RationalMatrix A1n = matrix_power(A1, n);
  int retries = 0;
  RationalMatrix X = gens[2] * A1n;
  while (X.c == 0) {
    if (++retries > o.max_retries) throw Error(ErrorCode::DegenerateTrace, "lower-left entry stays zero after retries");
    Rational eps(1, 1024 * retries);
    eps.canonicalize();
    gens[2] = RationalMatrix{Rational(1), Rational(0), eps, Rational(1)} * gens[2];
    X = gens[2] * A1n;
  }
  if (classify(X) != Classification::Hyperbolic)
    throw Error(ErrorCode::NotHyperbolic, "A3 A1^n is not hyperbolic; increase n");
  AsymptoteModel model = fit_asymptote(A1, A2, o.fit_k, o.fit_m, prec);
  Interval L = length_of(X, prec);
  auto hits = target_candidates(model, A1, A2, L, o.delta, o.k_cap, o.m_cap);
  if (hits.empty()) dense_target_search(model, A1, A2, L, o.delta, o.k_cap, o.m_cap);

  Word target_word = power_word(0, n);
  target_word.insert(target_word.begin(), make_letter(2, false));
  for (const auto& hit : hits) {
    Rational T = X.trace() < 0 ? Rational(-abs(hit.trace)) : abs(hit.trace);
    Rational eta = eta_solve(gens[2], A1, n, T);
    std::vector<RationalMatrix> out = gens;
    out[2] = shear(gens[2], eta);
    if (g >= 3) {
      if (!restore_relation(out, g, o.seed)) continue;
      if (!(commutator_product(out, static_cast<size_t>(g)) == RationalMatrix::identity_like(Rational(0)))) continue;
    }
    GeneratorTuple<Rational> nt{out, g};
    RationalMatrix X2 = evaluate(target_word, nt);
    RationalMatrix Y2 = evaluate(hit.word, nt);
    PerturbationResult r;
    r.eta = eta;
    r.n = n;
    r.k = hit.k;
    r.m = hit.m;
    r.target_word = target_word;
    r.matched_word = hit.word;
    r.target_trace_before = X.trace();
    r.target_trace = X2.trace();
    r.matched_trace = Y2.trace();
    r.target_length = length_of(X2, prec);
    r.matched_length = length_of(Y2, prec);
    r.exact_equal = abs(r.target_trace) == abs(r.matched_trace);
    r.achieved_gap = r.exact_equal ? Interval(prec) : abs(r.target_length - r.matched_length);
    r.unperturbed_identical = bit_identical(r.matched_length, hit.length);
    r.non_conjugate = canonical_class(target_word) != canonical_class(hit.word);
    r.repaired = g >= 3;
    r.degeneracy_retries = retries;
    if (g == 0) {
      SchottkyReport rep = schottky_check(enclose_tuple(nt, prec));
      r.schottky_after = rep.verified;
      if (!rep.verified) continue;
    }
    if (!r.non_conjugate || !r.unperturbed_identical) continue;
    if (!r.exact_equal && !r.achieved_gap.certainly_less(Interval::from_double(std::ldexp(1.0, -128), prec))) continue;
    r.tuple = std::move(nt);
    return r;
  }
  throw Error(ErrorCode::VerificationFailed, "every candidate (k, m) failed verification after the shear");
}

namespace {

Interval upper_end(const Interval& t) {
  Real v(t.precision());
  mpfr_set(v.get(), t.hi(), MPFR_RNDU);
  return Interval::from_real(v, t.precision());
}

}  // namespace

std::string GapFunction::tag() const {
  switch (kind) {
    case Kind::Exp: return "exp:" + alpha.get_str();
    case Kind::Gauss: return "gauss";
    case Kind::Table: {
      std::string s = "table:";
      for (size_t i = 0; i < table.size(); ++i)
        s += (i ? "," : "") + table[i].first.get_str() + "=" + table[i].second.get_str();
      return s;
    }
  }
  return "";
}

Interval GapFunction::lower_bound(const Interval& t) const {
  const int prec = t.precision();
  Interval tu = upper_end(t);
  switch (kind) {
    case Kind::Exp: return exp(-(Interval::from_rational(alpha, prec) * tu));
    case Kind::Gauss: return exp(-square(tu));
    case Kind::Table: {
      size_t idx = 0;
      for (size_t i = 0; i < table.size(); ++i)
        if (mpfr_cmp_q(t.hi(), table[i].first.get_mpq_t()) >= 0) idx = i;
      return Interval::from_rational(table[idx].second, prec);
    }
  }
  return Interval(prec);
}

GapFunction parse_gap_function(const std::string& text) {
  GapFunction f;
  auto fail = [&](const std::string& why) { return Error(ErrorCode::ParseError, "gap function '" + text + "': " + why); };
  if (text == "exp") return f;
  if (text == "gauss") {
    f.kind = GapFunction::Kind::Gauss;
    return f;
  }
  if (text.rfind("exp:", 0) == 0) {
    try {
      f.alpha = parse_rational(text.substr(4));
    } catch (const Error&) {
      throw fail("bad rate");
    }
    if (f.alpha <= 0) throw fail("rate must be positive");
    return f;
  }
  if (text.rfind("table:", 0) == 0) {
    f.kind = GapFunction::Kind::Table;
    std::stringstream in(text.substr(6));
    std::string item;
    while (std::getline(in, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw fail("entries are t=value");
      try {
        f.table.emplace_back(parse_rational(item.substr(0, eq)), parse_rational(item.substr(eq + 1)));
      } catch (const Error&) {
        throw fail("bad number in '" + item + "'");
      }
    }
    if (f.table.empty()) throw fail("empty table");
    for (size_t i = 0; i < f.table.size(); ++i) {
      if (f.table[i].second <= 0) throw fail("values must be positive");
      if (i && (f.table[i].first <= f.table[i - 1].first || f.table[i].second > f.table[i - 1].second))
        throw fail("table must have increasing t and non-increasing values");
    }
    return f;
  }
  throw fail("expected exp, exp:ALPHA, gauss or table:...");
}

GapSchedule run_schedule(const GeneratorTuple<Rational>& t, const GapFunction& F, int count, const ScheduleOptions& opts) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be at least 1");
  if (opts.n_step < 1) throw Error(ErrorCode::InvalidArgument, "n_step must be positive");
  GapSchedule s;
  s.F = F;
  GeneratorTuple<Rational> current = t;
  int n = opts.n0;
  std::optional<Interval> prev_max;
  for (int j = 0; j < count; ++j) {
    EqualizeOptions eo = opts.equalize;
    eo.seed = opts.equalize.seed + static_cast<std::uint64_t>(j);
    SchedulePair pair;
    for (int tries = 0;; ++tries) {
      pair.result = equalize_lengths(current, n, eo);
      pair.max_length = max(pair.result.target_length, pair.result.matched_length);
      if (!prev_max || prev_max->certainly_less(pair.max_length)) break;
      if (tries >= 20) throw Error(ErrorCode::VerificationFailed, "could not increase the pair length");
      n += opts.n_step;
    }
    pair.threshold = F.lower_bound(pair.max_length);
    pair.pass = pair.result.achieved_gap.certainly_less(pair.threshold);
    s.eta_abs_sum += abs(pair.result.eta);
    current = pair.result.tuple;
    prev_max = pair.max_length;
    s.produced_pairs.push_back(std::move(pair));
    n += opts.n_step;
  }
  RationalMatrix D = current.generators[2] * t.generators[2].inverse();
  Rational one(1);
  s.drift = std::max(std::max(abs(Rational(D.a - one)), abs(D.b)), std::max(abs(D.c), abs(Rational(D.d - one))));
  s.drift_bounded = s.drift <= s.eta_abs_sum;
  s.final_tuple = std::move(current);
  return s;
}

std::string schedule_csv(const GapSchedule& s) {
  std::ostringstream out;
  out << "step,n,target_word,matched_word,eta,trace,length_lo,length_hi,gap_lo,gap_hi,threshold_lo,pass\n";
  for (size_t i = 0; i < s.produced_pairs.size(); ++i) {
    const auto& p = s.produced_pairs[i];
    const auto& r = p.result;
    out << i + 1 << ',' << r.n << ',' << word_to_string(r.target_word) << ',' << word_to_string(r.matched_word) << ','
        << r.eta.get_str() << ',' << r.target_trace.get_str() << ',' << shortest_decimal(r.target_length.lower()) << ','
        << shortest_decimal(r.target_length.upper()) << ',' << shortest_decimal(r.achieved_gap.lower()) << ','
        << shortest_decimal(r.achieved_gap.upper()) << ',' << shortest_decimal(p.threshold.lower()) << ','
        << (p.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace lsp
