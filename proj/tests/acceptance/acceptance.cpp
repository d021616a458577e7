#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "generators.hpp"
#include "lsp/algebraic_bounds.hpp"
#include "lsp/diophantine.hpp"
#include "lsp/multipoly.hpp"
#include "lsp/probes.hpp"
#include "lsp/smallgap.hpp"
#include "lsp/spectrum.hpp"
#include "oracles.hpp"

using namespace lsp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string cli_path;

const GeneratorTuple<Rational>& rational_tuple(const Group& g) { return std::get<GeneratorTuple<Rational>>(g.tuple); }

Outcome exactness_core() {
  Group g = preset("sanov");
  LengthSpectrum s = build_spectrum(g, 8);
  size_t bad = 0;
  for (const auto& r : s.records) {
    const Rational& t = std::get<Rational>(r.trace);
    if (!is_integer(t) || t != oracle::product(r.word, rational_tuple(g).generators).trace()) ++bad;
  }
  return {bad == 0 && !s.records.empty(),
          std::to_string(s.records.size()) + " records, " + std::to_string(bad) + " mismatches"};
}

Outcome separation_exponent() {
  LengthSpectrum s = build_spectrum(preset("sanov"), 12);
  GapReport r = gap_scan(s);
  SeparationFit f = fit_separation(s, r);
  size_t below = 0;
  for (const auto& p : r.pairs) {
    if (p.status != GapStatus::Distinct) continue;
    double t1 = std::abs(std::get<Rational>(s.records[p.first].trace).get_d());
    double t2 = std::abs(std::get<Rational>(s.records[p.second].trace).get_d());
    double tmax = std::max(t1, t2);
    double mvt = 2 * (std::acosh(tmax / 2) - std::acosh((tmax - 1) / 2));
    if (p.gap.lower() < 0.9 * mvt) ++below;
  }
  std::ostringstream os;
  os << "beta=" << f.beta << ", " << r.distinct << " distinct gaps, " << below << " below the oracle";
  return {f.beta >= 0.45 && f.beta <= 0.55 && below == 0 && r.undecided == 0 && r.distinct > 0, os.str()};
}

double min_root_modulus(const QPoly& p) {
  double best = INFINITY;
  for (const auto& z : certified_roots(squarefree_part(p), 128)) best = std::min(best, sqrt(square(z.re) + square(z.im)).lower());
  return best;
}

AlgebraicClass rational_class(const std::vector<const QPoly*>& polys, long N) {
  AlgebraicClass c;
  c.N = N;
  c.p = 1;
  c.D = 0;
  Rational L = N;
  for (const QPoly* p : polys) {
    c.D = std::max<unsigned long>(c.D, static_cast<unsigned long>(p->degree()));
    for (int j = 0; j < p->degree(); ++j) L = std::max(L, Rational(abs(p->coeff(j)) * N));
  }
  c.L = Interval::from_rational(L, 128);
  return c;
}

QPoly random_quadratic_irreducible(SeededRng& rng, long N) {
  for (;;) {
    QPoly p({gen::fraction(rng.uniform(-40, 40), N), gen::fraction(rng.uniform(-40, 40), N), Rational(1)});
    Rational disc = p.coeff(1) * p.coeff(1) - 4 * p.coeff(0), root;
    if (!rational_sqrt(disc, root) && disc > 0) return p;
  }
}

Outcome algebraic_certificates() {
  SeededRng rng(101);
  size_t root_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    QPoly p = gen::monic(rng, 6, 100);
    if (min_root_modulus(p) < smallest_root_bound(p).get_d()) ++root_failures;
  }
  size_t false_certs = 0, equalities = 0;
  for (int i = 0; i < 200; ++i) {
    long N = rng.uniform(1, 6);
    QPoly p1 = random_quadratic_irreducible(rng, N);
    QPoly p2 = (i % 4 == 0) ? p1 : random_quadratic_irreducible(rng, N);
    size_t i1 = static_cast<size_t>(rng.uniform(0, 1)), i2 = static_cast<size_t>(rng.uniform(0, 1));
    if (p1 == p2 && i1 == i2) {
      ++equalities;
      continue;
    }
    AlgebraicClass c = rational_class({&p1, &p2}, N);
    Interval bound = difference_lower_bound(combine_classes(c, c), 1, 128);
    Interval diff = abs(certified_roots(p1, 256)[i1].re - certified_roots(p2, 256)[i2].re);
    if (bound.lower() > diff.upper()) ++false_certs;
  }
  std::ostringstream os;
  os << root_failures << " root-bound failures of 1000, " << false_certs << " false certificates of 200 ("
     << equalities << " exact equalities)";
  return {root_failures == 0 && false_certs == 0, os.str()};
}

Outcome resultant_classes() {
  QPoly s2 = QPoly::from_integers({-2, 0, 1}), s3 = QPoly::from_integers({-3, 0, 1});
  QPoly expected = QPoly::from_integers({1, 0, -10, 0, 1});
  bool exact = sum_resultant(s2, s3, false) == expected && sum_resultant(s2, s3, true) == expected;
  SeededRng rng(202);
  size_t dominated = 0;
  for (int i = 0; i < 100; ++i) {
    long N = rng.uniform(1, 5);
    auto poly = [&] {
      int deg = static_cast<int>(rng.uniform(1, 3));
      std::vector<Rational> c(static_cast<size_t>(deg) + 1);
      for (int j = 0; j < deg; ++j) c[static_cast<size_t>(j)] = gen::fraction(rng.uniform(-12, 12), N);
      c.back() = 1;
      return QPoly(c);
    };
    QPoly p1 = poly(), p2 = poly();
    AlgebraicClass c1 = rational_class({&p1}, N), c2 = rational_class({&p2}, N);
    AlgebraicClass comb = combine_classes(c1, c2);
    bool ok = true;
    for (bool difference : {false, true}) {
      QPoly w = sum_resultant(p1, p2, difference);
      if (static_cast<unsigned long>(w.degree()) > comb.D) ok = false;
      Rational scale = 1;
      for (unsigned long k = 0; k < comb.p; ++k) scale *= N;
      for (int j = 0; j < w.degree(); ++j) {
        Rational h = w.coeff(j) * scale;
        if (!is_integer(h) || comb.L.certainly_less(abs(h))) ok = false;
      }
    }
    if (ok) ++dominated;
  }
  return {exact && dominated == 100,
          std::string(exact ? "x^4 - 10x^2 + 1 recovered" : "resultant mismatch") + ", " + std::to_string(dominated) +
              "/100 classes dominate"};
}

Outcome small_gap_construction() {
  Group g = preset("schottky3");
  const auto& t = rational_tuple(g);
  PerturbationResult r = equalize_lengths(t, 8);
  bool equal = r.exact_equal && abs(r.target_trace) == abs(r.matched_trace) && r.achieved_gap.is_point() &&
               r.achieved_gap.upper() == 0.0 && evaluate(r.target_word, r.tuple).trace() == r.target_trace &&
               evaluate(r.matched_word, r.tuple).trace() == r.matched_trace;
  bool conj = r.non_conjugate && canonical_class(r.target_word) != canonical_class(r.matched_word);
  GapSchedule s = run_schedule(t, parse_gap_function("exp"), 3);
  bool sched = s.produced_pairs.size() == 3;
  for (size_t i = 0; sched && i < s.produced_pairs.size(); ++i) {
    const auto& p = s.produced_pairs[i];
    sched = p.pass && p.result.exact_equal && (i == 0 || s.produced_pairs[i - 1].max_length.certainly_less(p.max_length));
  }
  std::ostringstream os;
  os << "eta=" << r.eta.get_str() << ", matched a1^" << r.k << " a2^" << r.m << ", schedule lengths";
  for (const auto& p : s.produced_pairs) os << " " << p.max_length.mid();
  return {equal && conj && r.unperturbed_identical && sched, os.str()};
}

Outcome chebyshev_extremal() {
  double worst = 0;
  for (int D = 1; D <= 8; ++D) {
    SupReport r = chebyshev_sup_bound(MultiPoly::from_qpoly(monic_chebyshev(D)));
    worst = std::max(worst, std::abs(r.empirical.get_d() - std::ldexp(1.0, 1 - D)));
  }
  SeededRng rng(303);
  size_t violations = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = static_cast<int>(rng.uniform(1, 3));
    MultiPoly p(n);
    while (p.degree() < 1) {
      p = MultiPoly(n);
      const int terms = static_cast<int>(rng.uniform(1, 6));
      for (int k = 0; k < terms; ++k) {
        Exponents e(static_cast<size_t>(n), 0);
        const int deg = static_cast<int>(rng.uniform(0, 6));
        for (int j = 0; j < deg; ++j) ++e[static_cast<size_t>(rng.uniform(0, n - 1))];
        p.add_term(e, rng.uniform(-20, 20));
      }
    }
    SupReport r = chebyshev_sup_bound(p);
    Rational floor = Rational(1) / Rational(Integer(1) << (p.degree() - 1));
    if (r.empirical < floor || !r.consistent) ++violations;
  }
  std::ostringstream os;
  os << "max deviation " << worst << " over degrees 1-8, " << violations << " violations of 500";
  return {worst < 1e-10 && violations == 0, os.str()};
}

Outcome remez_exponent() {
  std::ostringstream os;
  bool ok = true;
  QPoly p = QPoly::constant(1);
  for (int D = 1; D <= 4; ++D) {
    p = p * QPoly::x();
    double slope = remez_slope(p, 1e-6, 1e-3);
    double rel = std::abs(slope * D - 1.0);
    ok = ok && rel <= 0.02;
    os << (D > 1 ? ", " : "") << "D=" << D << " slope " << slope;
  }
  return {ok, os.str()};
}

Outcome borel_cantelli() {
  bool a = borel_cantelli_check(geometric_series(2, 2)).converges;
  bool b = !borel_cantelli_check(geometric_series(2, 1)).converges;
  bool c = borel_cantelli_check(closing_series(2, Rational(1, 10))).converges;
  bool d = !borel_cantelli_check(closing_series(2, 0)).converges;
  return {a && b && c && d, std::string("2^-N^2 ") + (a ? "converges" : "WRONG") + ", 2^-N " + (b ? "diverges" : "WRONG") +
                                ", closing eta>0 " + (c ? "converges" : "WRONG") + ", eta=0 " + (d ? "diverges" : "WRONG")};
}

Outcome quadexp_probe() {
  QuadExpReport r = quadexp_check(2, Rational(1, 10), 6, 20, 1);
  size_t k_ok = 0, match = 0, candidates = 0;
  double min_K = INFINITY;
  for (const auto& t : r.tuples) {
    k_ok += t.K_positive;
    match += t.gaps_match_scan;
    candidates += t.violation_candidates.size();
    min_K = std::min(min_K, t.log10_K);
  }
  std::ostringstream os;
  os << r.tuples.size() << " tuples, K>0 on " << k_ok << ", scan agreement on " << match << ", " << candidates
     << " violation candidates, min log10 K " << min_K << ", constant " << r.exponent_constant << " base " << r.base;
  return {r.tuples.size() == 20 && k_ok == 20 && match == 20 && candidates == 0 && r.violations == 0 &&
              r.exponent_constant == 48 && r.base == 7,
          os.str()};
}

Outcome combinatorics() {
  size_t count_mismatch = 0;
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 10; ++n) {
      long long c = 0;
      for_each_reduced(m, n, [&](const Word&) { ++c; });
      if (c != oracle::reduced_count(m, n)) ++count_mismatch;
    }
  size_t orbit_mismatch = 0;
  for (bool primitive : {false, true}) {
    auto classes = enumerate_classes(2, 8, primitive);
    for (int n = 1; n <= 8; ++n) {
      std::set<Word> got;
      for (const auto& c : classes)
        if (static_cast<int>(c.size()) == n) got.insert(c);
      if (got != oracle::orbit_classes(2, n, primitive, false)) ++orbit_mismatch;
    }
  }
  return {count_mismatch == 0 && orbit_mismatch == 0,
          std::to_string(count_mismatch) + " count mismatches, " + std::to_string(orbit_mismatch) + " orbit mismatches"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome reproducibility() {
  if (cli_path.empty()) return {false, "no CLI path given"};
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("lsp_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream poly(dir / "p.poly");
    poly << "vars 2\n2 0 : 1\n0 1 : -1/2\n0 0 : 1/3\n";
  }
  const std::vector<std::string> runs = {
      "spectrum --preset sanov --cutoff 7",
      "spectrum --preset sqrt2 --cutoff 4 --format json",
      "gaps --preset sanov-hyperbolic --cutoff 6",
      "fit --preset sanov --cutoff 9 --format json",
      "smallgap --preset schottky3 --count 2",
      "smallgap --preset genus3 --count 1 --F gauss --format json",
      "diophantine --check series --series closing:2:1/10",
      "diophantine --check quadexp --genus 2 --cutoff 4 --tuples 2",
      "diophantine --check words --m 2 --cutoff 6 --tuples 3",
      "diophantine --check chebyshev --poly " + (dir / "p.poly").string(),
      "diophantine --check remez --poly " + (dir / "p.poly").string() + " --epsilon 0.01",
      "diophantine --check trace --word 'a1 A2 a1' --eliminate",
      "examples --preset genus2",
  };
  size_t differing = 0;
  for (size_t i = 0; i < runs.size(); ++i) {
    std::string outs[2];
    for (int rep = 0; rep < 2; ++rep) {
      fs::path o = dir / ("o" + std::to_string(i) + "_" + std::to_string(rep));
      fs::path f = dir / ("f" + std::to_string(i));
      fs::remove(f);
      std::string cmd = "'" + cli_path + "' " + runs[i] + " --out '" + f.string() + "' > '" + o.string() + "' 2>&1";
      int rc = std::system(cmd.c_str());
      outs[rep] = std::to_string(rc) + "\n" + slurp(o) + "\n" + slurp(f);
    }
    if (outs[0] != outs[1] || outs[0].size() < 8) {
      ++differing;
      std::cerr << "not reproducible: " << runs[i] << "\n";
    }
  }
  fs::remove_all(dir);
  return {differing == 0, std::to_string(runs.size()) + " invocations rerun, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exactness core", 30, exactness_core},
      {2, "separation exponent", 120, separation_exponent},
      {3, "algebraic certificates", 60, algebraic_certificates},
      {4, "resultant class combination", 30, resultant_classes},
      {5, "small-gap construction", 120, small_gap_construction},
      {6, "Chebyshev extremal", 60, chebyshev_extremal},
      {7, "Remez exponent", 60, remez_exponent},
      {8, "Borel-Cantelli verdicts", 5, borel_cantelli},
      {9, "QuadExp probe", 300, quadexp_probe},
      {10, "combinatorics", 60, combinatorics},
      {11, "CLI reproducibility", 300, reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass && secs <= c.budget_seconds;
    if (!pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.2fs of %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
