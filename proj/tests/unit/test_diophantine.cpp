#include <catch_amalgamated.hpp>

#include <cmath>

#include "generators.hpp"
#include "lsp/diophantine.hpp"
#include "lsp/error.hpp"
#include "lsp/multipoly.hpp"

using namespace lsp;

namespace {

MultiPoly random_poly(SeededRng& rng, int n, int max_deg, long bound) {
  MultiPoly p(n);
  int terms = static_cast<int>(rng.uniform(1, 6));
  for (int i = 0; i < terms; ++i) {
    Exponents e(static_cast<size_t>(n), 0);
    int budget = static_cast<int>(rng.uniform(0, max_deg));
    for (int j = 0; j < budget; ++j) ++e[static_cast<size_t>(rng.uniform(0, n - 1))];
    p.add_term(e, rng.uniform(-bound, bound));
  }
  if (p.is_zero()) p.add_term(Exponents(static_cast<size_t>(n), 0), 1);
  return p;
}

}  // namespace

TEST_CASE("multivariate arithmetic", "[multipoly]") {
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  MultiPoly sq = (x + y).pow(2);
  CHECK(sq == x * x + Rational(2) * x * y + y * y);
  CHECK(sq.degree() == 2);
  CHECK(sq.degree_in(1) == 2);
  CHECK(sq.eval(std::vector<Rational>{Rational(1, 2), Rational(3)}) == Rational(49, 4));
  CHECK((sq - sq).is_zero());
  MultiPoly h = Rational(1, 6) * x + Rational(1, 4) * y;
  CHECK(h.denominator() == 12);
  CHECK_FALSE(h.is_integral());
  QPoly q = QPoly::from_integers({1, -3, 0, 2});
  CHECK(MultiPoly::from_qpoly(q).to_qpoly() == q);
  CHECK(MultiPoly::parse(sq.serialize()) == sq);
  CHECK_THROWS_AS(MultiPoly::parse("vars 2\n1 : 3\n"), Error);
}

TEST_CASE("multivariate serialization and evaluation", "[multipoly][property]") {
  SeededRng rng(31);
  for (int i = 0; i < 200; ++i) {
    int n = static_cast<int>(rng.uniform(1, 4));
    MultiPoly p = random_poly(rng, n, 6, 50), q = random_poly(rng, n, 4, 50);
    CHECK(MultiPoly::parse(p.serialize()) == p);
    std::vector<Rational> xr;
    std::vector<double> xd;
    for (int j = 0; j < n; ++j) {
      xr.push_back(gen::rational(rng, 5, 4));
      xd.push_back(xr.back().get_d());
    }
    CHECK(p.eval(xr) * q.eval(xr) == (p * q).eval(xr));
    CHECK(p.eval(xr) - q.eval(xr) == (p - q).eval(xr));
    double exact = p.eval(xr).get_d();
    CHECK(std::abs(p.eval(xd) - exact) <= 1e-9 * (1 + std::abs(exact)));
  }
}

TEST_CASE("monic Chebyshev polynomials", "[chebyshev]") {
  CHECK(monic_chebyshev(0) == QPoly::from_integers({1}));
  CHECK(monic_chebyshev(3) == QPoly({Rational(0), Rational(-3, 4), Rational(0), Rational(1)}));
  for (int D = 1; D <= 8; ++D) {
    SupReport r = chebyshev_sup_bound(MultiPoly::from_qpoly(monic_chebyshev(D)));
    CHECK(std::abs(r.empirical.get_d() - std::ldexp(1.0, 1 - D)) < 1e-10);
    CHECK(r.bound == Rational(1) / Rational(Integer(1) << (D - 1)));
    CHECK(r.consistent);
  }
  CHECK_THROWS_AS(chebyshev_sup_bound(MultiPoly(2)), Error);
}

TEST_CASE("sup bound on random integer polynomials", "[chebyshev][property]") {
  SeededRng rng(17);
  for (int i = 0; i < 120; ++i) {
    MultiPoly p = random_poly(rng, static_cast<int>(rng.uniform(1, 3)), 6, 9);
    SupReport r = chebyshev_sup_bound(p);
    CHECK(r.consistent);
    CHECK(r.empirical >= r.bound);
    CHECK(abs(p.eval(r.argmax)) == r.empirical);
  }
}

TEST_CASE("sublevel measures", "[remez]") {
  QPoly p({Rational(-1, 4), Rational(0), Rational(1)});
  double expected = 2 * (std::sqrt(0.35) - std::sqrt(0.15));
  CHECK(std::abs(sublevel_measure_exact(p, Rational(1, 10), -1, 1) - expected) < 1e-12);
  CHECK(std::abs(sublevel_measure_exact(QPoly::x(), Rational(1, 10), -1, 1) - 0.2) < 1e-15);
  for (int D = 1; D <= 4; ++D) {
    QPoly xd = QPoly::from_integers({0, 1}) * QPoly::constant(1);
    for (int j = 1; j < D; ++j) xd = xd * QPoly::x();
    CHECK(std::abs(remez_slope(xd, 1e-6, 1e-3) - 1.0 / D) < 0.02 / D);
  }
}

TEST_CASE("Remez bound", "[remez]") {
  RemezReport r = remez_measure_bound(MultiPoly::variable(1, 0), 0.1, Box::cube(1));
  CHECK(r.estimate.samples == 0);
  CHECK(std::abs(r.estimate.estimated_measure - 0.2) < 1e-12);
  CHECK(std::abs(r.bound - 0.8) < 1e-9);
  CHECK(r.consistent);
  MultiPoly xy = MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1);
  RemezReport m = remez_measure_bound(xy, 0.01, Box::cube(2), 0, 50000, 3);
  CHECK(m.estimate.samples == 50000);
  CHECK(m.consistent);
  CHECK(m.estimate.estimated_measure == remez_measure_bound(xy, 0.01, Box::cube(2), 0, 50000, 3).estimate.estimated_measure);
  CHECK(remez_measure_bound(xy, 10.0, Box::cube(2)).saturated);
  CHECK(default_remez_constant(Box::cube(2), 3) == Catch::Approx(std::pow(32.0, 3)));
}

TEST_CASE("trace polynomials", "[multipoly]") {
  auto names = entry_names(1);
  CHECK(trace_polynomial(parse_word("a1 a1"), 1).to_string(names) == "a1^2 + 2*b1*c1 + d1^2");
  EliminatedTrace e = eliminate_d(trace_polynomial(parse_word("a1 A2 a1"), 2), 2);
  CHECK(e.a_powers == std::vector<int>{2, 1});
  for (int j = 0; j < 2; ++j) CHECK(e.numerator.degree_in(4 * j + 3) == 0);
  SeededRng rng(6);
  for (int i = 0; i < 60; ++i) {
    GeneratorTuple<Rational> t;
    for (int j = 0; j < 2; ++j) t.generators.push_back(gen::sl2(rng, 6, 3));
    Word w = gen::reduced_word(rng, 2, static_cast<int>(rng.uniform(1, 6)));
    std::vector<Rational> x;
    for (const auto& g : t.generators) x.insert(x.end(), {g.a, g.b, g.c, g.d});
    MultiPoly tp = trace_polynomial(w, 2);
    CHECK(tp.eval(x) == evaluate(w, t).trace());
    EliminatedTrace el = eliminate_d(tp, 2);
    Rational denom = 1;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < el.a_powers[static_cast<size_t>(j)]; ++k) denom *= t.generators[static_cast<size_t>(j)].a;
    CHECK(el.numerator.eval(x) / denom == evaluate(w, t).trace());
  }
}

TEST_CASE("Borel-Cantelli verdicts", "[series]") {
  CHECK(borel_cantelli_check(geometric_series(2, 2)).converges);
  CHECK_FALSE(borel_cantelli_check(geometric_series(2, 1)).converges);
  CHECK(borel_cantelli_check(closing_series(2, Rational(1, 10))).converges);
  CHECK_FALSE(borel_cantelli_check(closing_series(2, 0)).converges);
  CHECK(borel_cantelli_check(closing_series(3, Rational(1, 1000))).converges);
  CHECK(borel_cantelli_check(word_identity_series(2, Rational(1, 10))).converges);
  CHECK_FALSE(borel_cantelli_check(word_identity_series(2, 0)).converges);
  CHECK(borel_cantelli_check(parse_series("power:3:1")).converges);
  CHECK_FALSE(borel_cantelli_check(parse_series("power:1:1")).converges);
  CHECK(borel_cantelli_check(parse_series("exp:2:0,0,1:0,1")).converges);
  SummabilityVerdict v = borel_cantelli_check(geometric_series(2, 2), 5);
  CHECK(v.partial_sums.size() == 5);
  CHECK_FALSE(v.tail_bound_rationale.empty());
  SeriesSpec table;
  table.kind = SeriesSpec::Kind::Table;
  table.table = {0.5, 0.25};
  table.table_degrees = {1, 2};
  CHECK_THROWS_AS(borel_cantelli_check(table), Error);
  table.tail = std::make_shared<SeriesSpec>(geometric_series(2, 2));
  CHECK(borel_cantelli_check(table).converges);
  CHECK_THROWS_AS(parse_series("exp:2"), Error);
}

TEST_CASE("closing-series constants", "[series]") {
  CHECK(quadexp_exponent_constant(2) == 48);
  CHECK(quadexp_base(2) == 7);
  CHECK(quadexp_exponent_constant(3) == 100);
  CHECK(quadexp_base(3) == 11);
  for (int g = 2; g <= 6; ++g) CHECK(quadexp_exponent_constant(g) == (2 * g + 4) * (4 * g - 2));
}
