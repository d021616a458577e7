#include <catch_amalgamated.hpp>

#include "lsp/error.hpp"
#include "lsp/group_file.hpp"
#include "lsp/moebius.hpp"
#include "lsp/words.hpp"
#include "generators.hpp"

using namespace lsp;

namespace {

RationalMatrix M(long a, long b, long c, long d) { return {Rational(a), Rational(b), Rational(c), Rational(d)}; }

std::string parse_message(const std::string& text) {
  try {
    parse_group(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("classification by trace", "[moebius]") {
  CHECK(classify(M(2, 1, 1, 1)) == Classification::Hyperbolic);
  CHECK(classify(M(1, 2, 0, 1)) == Classification::Parabolic);
  CHECK(classify(M(0, -1, 1, 0)) == Classification::Elliptic);
  CHECK(classify(M(1, 0, 0, 1)) == Classification::Identity);
  CHECK(classify(M(-1, 0, 0, -1)) == Classification::Identity);
  IntervalMatrix near{Interval::from_bounds(0.999, 1.001, 64), Interval(64), Interval(64), Interval::from_integer(1, 64)};
  CHECK(classify(near) == Classification::Undecided);
}

TEST_CASE("matrix inverse and determinant", "[moebius][property]") {
  SeededRng rng(3);
  for (int i = 0; i < 100; ++i) {
    RationalMatrix x = gen::sl2(rng, 50, 9);
    const Rational& a = x.a;
    CHECK(x.det() == 1);
    CHECK(x * x.inverse() == RationalMatrix::identity_like(a));
    CHECK((x * x).trace() == x.trace() * x.trace() - 2);
  }
}

TEST_CASE("seeded generator is reproducible", "[moebius]") {
  SeededRng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    long x = a.uniform(-1000, 1000);
    CHECK(x == b.uniform(-1000, 1000));
    if (x != c.uniform(-1000, 1000)) differs = true;
    double u = a.unit();
    b.unit();
    c.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(differs);
}

TEST_CASE("presets are well formed", "[moebius]") {
  for (const auto& name : preset_names()) {
    Group g = preset(name);
    CHECK(g.size() >= 2);
    Group back = parse_group(serialize_group(g));
    CHECK(serialize_group(back) == serialize_group(g));
    CHECK(back.genus() == g.genus());
    if (g.genus() > 0) CHECK(relation_defect(g).upper() == 0.0);
  }
  CHECK(preset("sqrt2").kind() == ScalarKind::Field);
  CHECK(preset("genus3").genus() == 3);
  CHECK_THROWS_AS(preset("nope"), Error);
}

TEST_CASE("Schottky verification", "[moebius]") {
  CHECK(schottky_check(preset("schottky3")).verified);
  CHECK(schottky_check(preset("sanov-hyperbolic")).verified);
  Group overlap;
  overlap.tuple = GeneratorTuple<Rational>{{M(2, 1, 1, 1), M(3, 2, 1, 1)}, 0};
  CHECK_FALSE(schottky_check(overlap).verified);
}

TEST_CASE("genus-mode samples satisfy the relation exactly", "[moebius][property]") {
  for (int g : {2, 3}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      auto t = sample_tuple(2 * g, true, seed);
      REQUIRE(static_cast<int>(t.generators.size()) == 2 * g);
      CHECK(commutator_product(t.generators, g) == RationalMatrix::identity_like(Rational(1)));
      for (const auto& x : t.generators) {
        CHECK(x.det() == 1);
        CHECK(classify(x) == Classification::Hyperbolic);
      }
    }
  }
  CHECK_THROWS_AS(sample_tuple(3, true, 1), Error);
}

TEST_CASE("free-mode samples are reproducible Schottky tuples", "[moebius][property]") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto t = sample_tuple(3, false, seed);
    auto u = sample_tuple(3, false, seed);
    REQUIRE(t.generators.size() == 3);
    for (size_t i = 0; i < 3; ++i) CHECK(t.generators[i] == u.generators[i]);
    Group g;
    g.tuple = t;
    CHECK(schottky_check(g).verified);
  }
}

TEST_CASE("relation repair recovers the last generator", "[moebius][property]") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto t = sample_tuple(4, true, seed);
    std::vector<RationalMatrix> partial(t.generators.begin(), t.generators.end() - 1);
    RationalMatrix last = relation_repair(partial);
    partial.push_back(last);
    CHECK(commutator_product(partial, 2) == RationalMatrix::identity_like(Rational(1)));
    CHECK(last.det() == 1);
  }
}

TEST_CASE("group file parsing", "[group_file]") {
  Group g = parse_group("# two parabolics\nscalar rational\nmatrix 1 2 0 1\nmatrix 1 0 2 1\n");
  CHECK(g.kind() == ScalarKind::Rational);
  CHECK(g.size() == 2);
  CHECK(serialize_group(parse_group("preset sanov\n")) == serialize_group(preset("sanov")));
  Group f = parse_group("scalar field\nfield -2 0 1\nmatrix 1,1 0 0 -1,1\nmatrix 0,1 1 1 0,1\n");
  CHECK(f.kind() == ScalarKind::Field);
  Group r = parse_group("scalar real\nmatrix 2 1 1 1\nmatrix 1.25 0.75 0.75 1.25\n");
  CHECK(r.kind() == ScalarKind::Real);
  CHECK(r.enclose(128).generators[1].a.contains(1.25));
}

TEST_CASE("group file errors carry positions", "[group_file]") {
  CHECK(parse_message("scalar rational\nmatrix 1 2 0\n").find("line 2") != std::string::npos);
  CHECK(parse_message("scalar rational\nmatrix 1 2 0 x\n").find("column") != std::string::npos);
  CHECK(parse_message("scalar rational\nmatrix 1 2 0 2\n").find("line 2") != std::string::npos);
  CHECK(parse_message("scalar banana\n").find("line 1") != std::string::npos);
  CHECK(parse_message("bogus 1\n").find("line 1") != std::string::npos);
}
