#include <catch_amalgamated.hpp>

#include <cmath>

#include "lsp/algebraic_bounds.hpp"
#include "lsp/error.hpp"
#include "lsp/moebius.hpp"
#include "lsp/number_field.hpp"
#include "lsp/qpoly.hpp"
#include "lsp/rational.hpp"
#include "generators.hpp"

using namespace lsp;

namespace {

bool meets(const Interval& x, const char* lo, const char* hi) {
  return !x.certainly_less(parse_rational(lo)) && !x.certainly_greater(parse_rational(hi));
}

double min_root_modulus(const QPoly& p) {
  QPoly sf = squarefree_part(p);
  double best = INFINITY;
  for (const auto& z : certified_roots(sf, 128)) {
    Interval m = sqrt(square(z.re) + square(z.im));
    best = std::min(best, m.lower());
  }
  return best;
}

}  // namespace

TEST_CASE("rational parsing and helpers", "[rational]") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK(lcm(Integer(4), Integer(6)) == 12);
  Rational r;
  CHECK(rational_sqrt(Rational(9, 4), r));
  CHECK(r == Rational(3, 2));
  CHECK_FALSE(rational_sqrt(Rational(2), r));
  CHECK(std::abs(log10_abs(Rational(1000)) - 3.0) < 1e-12);
}

TEST_CASE("interval enclosures contain reference constants", "[rigorous]") {
  for (int prec : {53, 64, 128, 256}) {
    Interval pi = Interval::pi(prec);
    CHECK(meets(pi, "3.14159265358979323846264338327950288", "3.14159265358979323846264338327950289"));
    CHECK(pi.lower() <= 3.141592653589793);
    CHECK(pi.upper() >= 3.141592653589793);
    Interval s = sqrt(Interval::from_integer(2, prec));
    CHECK(s.lower() <= 1.4142135623730951);
    CHECK(s.upper() >= 1.4142135623730950);
    Interval l = log(Interval::from_rational(Rational(3, 2), prec));
    CHECK(meets(l, "0.405465108108164381978013115464349136", "0.405465108108164381978013115464349137"));
  }
  Interval a = acosh(Interval::from_rational(Rational(3, 2), 128));
  CHECK(std::abs(2 * a.mid() - 1.9248473002384138) < 1e-15);
}

TEST_CASE("interval arithmetic is monotone in precision", "[rigorous][property]") {
  SeededRng rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational x = gen::fraction(rng.uniform(1, 1000), rng.uniform(1, 97));
    Rational y = gen::rational(rng, 1000, 97);
    Interval lo = exp(log(Interval::from_rational(x, 64))) * Interval::from_rational(y, 64);
    Interval hi = exp(log(Interval::from_rational(x, 256))) * Interval::from_rational(y, 256);
    CHECK(lo.contains(Rational(x * y)));
    CHECK(hi.contains(Rational(x * y)));
    CHECK(hi.width() <= lo.width());
  }
}

TEST_CASE("polynomial arithmetic identities", "[qpoly]") {
  QPoly p = QPoly::from_integers({-2, 0, 1});
  QPoly q = QPoly::from_integers({-3, 0, 1});
  CHECK(sum_resultant(p, q, false) == QPoly::from_integers({1, 0, -10, 0, 1}));
  CHECK(sum_resultant(p, q, true) == QPoly::from_integers({1, 0, -10, 0, 1}));
  CHECK(resultant(p, q) == 1);
  CHECK(gcd(QPoly::from_integers({-1, 0, 1}), QPoly::from_integers({1, 1})) == QPoly::from_integers({1, 1}));
  CHECK(factor_monic_integer(QPoly::from_integers({-1, 0, 0, 0, 1})).size() == 3);
  CHECK(is_irreducible(QPoly::from_integers({1, 0, -10, 0, 1})));
  CHECK_FALSE(is_irreducible(QPoly::from_integers({-1, 0, 1})));
  auto roots = certified_roots(p, 128);
  REQUIRE(roots.size() == 2);
  CHECK(meets(roots[0].re, "-1.41421356237309504880168872420969808", "-1.41421356237309504880168872420969807"));
  CHECK(meets(roots[1].re, "1.41421356237309504880168872420969807", "1.41421356237309504880168872420969808"));
}

TEST_CASE("division and extended gcd round trip", "[qpoly][property]") {
  SeededRng rng(5);
  for (int i = 0; i < 150; ++i) {
    QPoly a = gen::monic(rng, 7, 20);
    QPoly b = gen::monic(rng, 4, 20);
    QPoly quot, rem;
    QPoly::divmod(a, b, quot, rem);
    CHECK(quot * b + rem == a);
    CHECK(rem.degree() < b.degree());
    QPoly s, t;
    QPoly g = extended_gcd(a, b, s, t);
    CHECK(s * a + t * b == g);
    CHECK((a % g).is_zero());
  }
}

TEST_CASE("smallest root bound holds on random monic polynomials", "[bounds][property]") {
  SeededRng rng(2024);
  int failures = 0;
  for (int i = 0; i < 300; ++i) {
    QPoly p = gen::monic(rng, 6, 100);
    double bound = smallest_root_bound(p).get_d();
    if (min_root_modulus(p) < bound) ++failures;
  }
  CHECK(failures == 0);
  CHECK(smallest_root_bound(QPoly::from_integers({-2, 1})) == 2);
}

TEST_CASE("number field arithmetic in Q(sqrt 2)", "[field]") {
  FieldPtr K = NumberField::create(QPoly::from_integers({-2, 0, 1}));
  FieldElement t = FieldElement::generator(K);
  FieldElement one = FieldElement::from_rational(K, 1);
  CHECK((one + t) * (one - t) == FieldElement::from_rational(K, -1));
  CHECK((t * t).is_rational());
  CHECK((one + t).norm() == -1);
  CHECK((one + t).trace() == 2);
  CHECK((one + t).minimal_polynomial() == QPoly::from_integers({-1, -2, 1}));
  CHECK(meets(t.real_value(128), "1.41421356237309504880168872420969807", "1.41421356237309504880168872420969808"));
  CHECK_THROWS_AS(NumberField::create(QPoly::from_integers({-4, 0, 1})), Error);
  FieldPtr back = NumberField::parse(K->serialize());
  CHECK(back->same_as(*K));
}

TEST_CASE("field inverses", "[field][property]") {
  FieldPtr K = NumberField::create(QPoly::from_integers({1, 0, -10, 0, 1}));
  SeededRng rng(8);
  for (int i = 0; i < 60; ++i) {
    std::vector<Rational> c(4);
    for (auto& x : c) x = gen::rational(rng, 9, 5);
    FieldElement a(K, c);
    if (a.is_zero()) continue;
    CHECK(a * a.inverse() == FieldElement::from_rational(K, 1));
    CHECK(FieldElement::parse(K, a.to_string()) == a);
  }
}

TEST_CASE("field lower bound", "[bounds]") {
  FieldPtr K = NumberField::create(QPoly::from_integers({-2, 0, 1}));
  FieldElement x(K, {Rational(-7), Rational(5)});  // 5 sqrt 2 - 7, tiny
  DenominatorClass cls{Interval::from_integer(15, 128), 1, 0};
  REQUIRE(is_member(x, cls));
  Interval lb = field_lower_bound(x, cls, 128);
  CHECK(lb.upper() <= std::abs(5 * std::sqrt(2.0) - 7));
  CHECK_THROWS_AS(field_lower_bound(FieldElement::from_rational(K, 0), cls), Error);
}

TEST_CASE("difference bound against quadratic pairs", "[bounds][property]") {
  SeededRng rng(77);
  int false_certs = 0;
  for (int i = 0; i < 80; ++i) {
    long N = rng.uniform(1, 4);
    QPoly p1({gen::fraction(rng.uniform(-30, 30), N), gen::fraction(rng.uniform(-30, 30), N), Rational(1)});
    QPoly p2 = (i % 5 == 0) ? p1 : QPoly({gen::fraction(rng.uniform(-30, 30), N), gen::fraction(rng.uniform(-30, 30), N), Rational(1)});
    AlgebraicClass c;
    c.N = N;
    c.p = 1;
    c.D = 2;
    Rational L = N;
    for (const auto* p : {&p1, &p2})
      for (int j = 0; j < 2; ++j) L = std::max(L, Rational(abs(p->coeff(j)) * N));
    c.L = Interval::from_rational(L, 128);
    Interval lb = difference_lower_bound(combine_classes(c, c), 1);
    auto r1 = certified_roots(squarefree_part(p1), 128);
    auto r2 = certified_roots(squarefree_part(p2), 128);
    for (const auto& a : r1)
      for (const auto& b : r2) {
        Interval dr = a.re - b.re, di = a.im - b.im;
        Interval dist = sqrt(square(dr) + square(di));
        if (dist.contains_zero()) continue;
        if (dist.upper() < lb.lower()) ++false_certs;
      }
  }
  CHECK(false_certs == 0);
}
