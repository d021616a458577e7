#include <catch_amalgamated.hpp>

#include <cmath>

#include "generators.hpp"
#include "lsp/error.hpp"
#include "lsp/rational.hpp"
#include "lsp/smallgap.hpp"
#include "lsp/spectrum.hpp"

using namespace lsp;

namespace {

const GeneratorTuple<Rational>& rational_tuple(const Group& g) { return std::get<GeneratorTuple<Rational>>(g.tuple); }

}  // namespace

TEST_CASE("matrix powers", "[smallgap]") {
  SeededRng rng(1);
  RationalMatrix x = gen::sl2(rng, 4, 3);
  RationalMatrix acc = RationalMatrix::identity_like(Rational(1));
  for (int n = 0; n <= 9; ++n) {
    CHECK(matrix_power(x, n) == acc);
    CHECK(matrix_power(x, -n) == acc.inverse());
    acc = acc * x;
  }
}

TEST_CASE("leading log eigenvalue", "[smallgap]") {
  Interval l = leading_log_eigenvalue(RationalMatrix{2, 1, 1, 1});
  CHECK(!l.certainly_less(parse_rational("0.962423650119206894995517826848")));
  CHECK(!l.certainly_greater(parse_rational("0.962423650119206894995517826849")));
  CHECK(leading_log_eigenvalue(RationalMatrix{-2, -1, -1, -1}).identical(l));
  Interval len = length_of(RationalMatrix{2, 1, 1, 1}, 128);
  CHECK(!(len - Interval::from_integer(2, 128) * l).certainly_positive());
  CHECK(!(len - Interval::from_integer(2, 128) * l).certainly_negative());
}

TEST_CASE("asymptote fit", "[smallgap]") {
  Group group = preset("sanov-hyperbolic");
  const auto& t = rational_tuple(group);
  AsymptoteModel model = fit_asymptote(t.generators[0], t.generators[1], 12, 12);
  CHECK(model.residual_bound < 0.2);
  for (size_t s = 3; s < model.residual_by_min.size(); ++s) CHECK(model.residual_by_min[s] <= model.residual_by_min[s - 1]);
  RationalMatrix w = matrix_power(t.generators[0], 10) * matrix_power(t.generators[1], 9);
  CHECK(std::abs(length_of(w, 128).mid() - model.predict(10, 9)) < 1e-6);
  CHECK_THROWS_AS(fit_asymptote(t.generators[0], t.generators[0] * t.generators[0], 8, 8), Error);
  CHECK_THROWS_AS(fit_asymptote(t.generators[0], t.generators[1], 2, 8), Error);
}

TEST_CASE("target search agrees with exhaustive search", "[smallgap]") {
  Group group = preset("schottky3");
  const auto& t = rational_tuple(group);
  const auto& A1 = t.generators[0];
  const auto& A2 = t.generators[1];
  AsymptoteModel model = fit_asymptote(A1, A2, 12, 12);
  for (int target_i : {20, 27, 33, 41}) {
    Interval target = Interval::from_integer(target_i, 128);
    auto hits = target_candidates(model, A1, A2, target, 3.0, 20, 20);
    double brute = INFINITY;
    for (int k = 1; k <= 20; ++k)
      for (int m = 1; m <= 20; ++m)
        brute = std::min(brute, std::abs(length_of(matrix_power(A1, k) * matrix_power(A2, m), 128).mid() - target_i));
    if (brute > 3.0) {
      CHECK(hits.empty());
      continue;
    }
    REQUIRE(!hits.empty());
    CHECK(std::abs(hits.front().miss.mid() - brute) < 1e-12);
    for (size_t i = 0; i < hits.size(); ++i) {
      CHECK(hits[i].miss.upper() <= 3.0);
      CHECK(hits[i].trace == (matrix_power(A1, hits[i].k) * matrix_power(A2, hits[i].m)).trace());
      if (i > 0) CHECK(hits[i - 1].miss.mid() <= hits[i].miss.mid());
    }
  }
  CHECK_THROWS_AS(dense_target_search(model, A1, A2, Interval::from_integer(1000, 64), 0.5, 4, 4), Error);
}

TEST_CASE("eta solve hits the target trace", "[smallgap][property]") {
  SeededRng rng(12);
  for (int i = 0; i < 100; ++i) {
    RationalMatrix A1 = gen::sl2(rng, 6, 4), A3 = gen::sl2(rng, 6, 4);
    int n = static_cast<int>(rng.uniform(1, 6));
    Rational target = gen::rational(rng, 500, 7);
    RationalMatrix x = A3 * matrix_power(A1, n);
    if (x.c == 0) {
      CHECK_THROWS_AS(eta_solve(A3, A1, n, target), Error);
      continue;
    }
    Rational eta = eta_solve(A3, A1, n, target);
    RationalMatrix sheared = shear(A3, eta);
    CHECK(sheared.det() == 1);
    CHECK((sheared * matrix_power(A1, n)).trace() == target);
  }
}

TEST_CASE("equalize lengths on a Schottky triple", "[smallgap]") {
  Group group = preset("schottky3");
  const auto& t = rational_tuple(group);
  PerturbationResult r = equalize_lengths(t, 8);
  CHECK(r.exact_equal);
  CHECK(abs(r.target_trace) == abs(r.matched_trace));
  CHECK(r.achieved_gap.is_point());
  CHECK(r.achieved_gap.upper() == 0.0);
  CHECK(r.unperturbed_identical);
  CHECK(r.non_conjugate);
  CHECK(r.schottky_after);
  CHECK(canonical_class(r.target_word) != canonical_class(r.matched_word));
  CHECK(evaluate(r.target_word, r.tuple).trace() == r.target_trace);
  CHECK(evaluate(r.matched_word, r.tuple).trace() == r.matched_trace);
  CHECK(r.tuple.generators[2] == shear(t.generators[2], r.eta));
  PerturbationResult again = equalize_lengths(t, 8);
  CHECK(again.eta == r.eta);
}

TEST_CASE("equalize lengths preconditions", "[smallgap]") {
  CHECK_THROWS_AS(equalize_lengths(rational_tuple(preset("sanov-hyperbolic")), 8), Error);
  try {
    equalize_lengths(rational_tuple(preset("genus2")), 8);
    FAIL("genus two accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
}

TEST_CASE("equalize lengths keeps the surface relation", "[smallgap]") {
  Group group = preset("genus3");
  const auto& t = rational_tuple(group);
  PerturbationResult r = equalize_lengths(t, 6);
  CHECK(r.exact_equal);
  CHECK(r.repaired);
  CHECK(r.unperturbed_identical);
  CHECK(commutator_product(r.tuple.generators, 3) == RationalMatrix::identity_like(Rational(1)));
}

TEST_CASE("gap functions", "[smallgap]") {
  CHECK(parse_gap_function("exp").kind == GapFunction::Kind::Exp);
  CHECK(parse_gap_function("exp:2").alpha == 2);
  CHECK(parse_gap_function("gauss").kind == GapFunction::Kind::Gauss);
  GapFunction tab = parse_gap_function("table:1=1/2,5=1/100");
  CHECK(tab.table.size() == 2);
  CHECK_THROWS_AS(parse_gap_function("sin"), Error);
  CHECK_THROWS_AS(parse_gap_function("table:5=1,1=2"), Error);
  GapFunction e = parse_gap_function("exp");
  Interval v = e.lower_bound(Interval::from_bounds(1.0, 2.0, 128));
  CHECK(std::abs(v.mid() - std::exp(-2.0)) < 1e-15);
  SeededRng rng(2);
  for (const char* text : {"exp", "exp:3/2", "gauss", "table:1=1/2,5=1/100,9=1/1000"}) {
    GapFunction F = parse_gap_function(text);
    double prev = INFINITY;
    for (int i = 0; i < 40; ++i) {
      double x = 0.25 * i;
      double val = F.lower_bound(Interval::from_bounds(x, x + 0.1, 128)).upper();
      CHECK(val <= prev);
      CHECK(val >= 0);
      prev = val;
    }
    CHECK(parse_gap_function(F.tag()).tag() == F.tag());
  }
}

TEST_CASE("gap schedule", "[smallgap]") {
  Group group = preset("schottky3");
  const auto& t = rational_tuple(group);
  GapSchedule s = run_schedule(t, parse_gap_function("exp"), 3);
  REQUIRE(s.produced_pairs.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    const auto& p = s.produced_pairs[i];
    CHECK(p.pass);
    CHECK(p.result.exact_equal);
    CHECK(p.result.achieved_gap.upper() <= p.threshold.lower());
    if (i > 0) CHECK(s.produced_pairs[i - 1].max_length.certainly_less(p.max_length));
  }
  CHECK(s.drift_bounded);
  CHECK(s.drift <= s.eta_abs_sum);
  std::string csv = schedule_csv(s);
  CHECK(csv.rfind("step,n,target_word,matched_word,eta,trace,length_lo,length_hi,gap_lo,gap_hi,threshold_lo,pass", 0) == 0);
  CHECK(csv == schedule_csv(run_schedule(t, parse_gap_function("exp"), 3)));
}
