#include <catch_amalgamated.hpp>

#include <algorithm>

#include "lsp/error.hpp"
#include "lsp/probes.hpp"

using namespace lsp;

TEST_CASE("QuadExp probe on small genus-two samples", "[probes]") {
  QuadExpReport r = quadexp_check(2, Rational(1, 10), 4, 3, 1);
  CHECK(r.exponent_constant == 48);
  CHECK(r.base == 7);
  REQUIRE(r.tuples.size() == 3);
  CHECK(r.violations == 0);
  for (const auto& t : r.tuples) {
    CHECK(t.K_positive);
    CHECK(t.gaps_match_scan);
    CHECK(t.violation_candidates.empty());
    CHECK(t.pairs_checked > 0);
    CHECK_FALSE(t.levels.empty());
    for (const auto& lv : t.levels) CHECK(lv.log10_ratio >= t.log10_K);
  }
  QuadExpReport again = quadexp_check(2, Rational(1, 10), 4, 3, 1);
  CHECK(again.tuples[1].log10_K == r.tuples[1].log10_K);
}

TEST_CASE("QuadExp budget guard", "[probes]") {
  try {
    quadexp_check(2, Rational(1, 10), 9, 1, 1, 1000);
    FAIL("budget not enforced");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("word identity bound on free groups", "[probes]") {
  Group g = preset("sanov");
  const auto& sanov = std::get<GeneratorTuple<Rational>>(g.tuple);
  WordIdentityTupleReport s = word_identity_check_tuple(sanov, Rational(1, 10), 6);
  CHECK(s.violations.empty());
  CHECK(s.words_checked == 4 + 12 + 36 + 108 + 324 + 972);
  CHECK(s.min_log10_margin > 0);
  CHECK(s.min_log10_margin <= s.median_log10_margin);
  CHECK(s.median_log10_margin <= s.max_log10_margin);
  WordIdentityReport r = word_identity_bound_check(2, Rational(1, 10), 5, 4, 7);
  CHECK(r.tuples.size() == 4);
  CHECK(r.violations == 0);
}

TEST_CASE("word identity probe flags relations", "[probes]") {
  GeneratorTuple<Rational> rot{{RationalMatrix{0, -1, 1, 0}, RationalMatrix{2, 1, 1, 1}}, 0};
  WordIdentityTupleReport r = word_identity_check_tuple(rot, Rational(1, 10), 4);
  CHECK(std::find(r.violations.begin(), r.violations.end(), "a1 a1 a1 a1") != r.violations.end());
  GeneratorTuple<Rational> twice{{RationalMatrix{2, 1, 1, 1}, RationalMatrix{2, 1, 1, 1}}, 0};
  WordIdentityTupleReport c = word_identity_check_tuple(twice, Rational(1, 10), 3);
  CHECK(std::find(c.violations.begin(), c.violations.end(), "a1 A2") != c.violations.end());
  CHECK(std::find(c.violations.begin(), c.violations.end(), "a1 a2") == c.violations.end());
}
