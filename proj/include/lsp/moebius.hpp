#pragma once

// SL(2) matrices over exact or interval scalars and generator tuples.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "lsp/error.hpp"
#include "lsp/number_field.hpp"
#include "lsp/rational.hpp"
#include "lsp/rigorous.hpp"

namespace lsp {

enum class ScalarKind { Rational, Field, Real };

const char* to_string(ScalarKind kind);

// Scalar helpers shared by the matrix templates.
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline FieldElement one_like(const FieldElement& x) { return FieldElement::from_rational(x.field(), Rational(1)); }
inline FieldElement zero_like(const FieldElement& x) { return FieldElement::from_rational(x.field(), Rational(0)); }
inline Interval one_like(const Interval& x) { return Interval::from_integer(1, x.precision()); }
inline Interval zero_like(const Interval& x) { return Interval(x.precision()); }

inline Interval enclose(const Rational& x, int prec) { return Interval::from_rational(x, prec); }
inline Interval enclose(const FieldElement& x, int prec) { return x.real_value(prec); }
inline Interval enclose(const Interval& x, int) { return x; }

inline std::string scalar_string(const Rational& x) { return x.get_str(); }
inline std::string scalar_string(const FieldElement& x) { return x.to_string(); }
inline std::string scalar_string(const Interval& x) { return shortest_decimal(x.mid()); }

template <class T>
struct Matrix2 {
  T a, b, c, d;

  static Matrix2 identity_like(const T& s) { return {one_like(s), zero_like(s), zero_like(s), one_like(s)}; }

  T trace() const { return a + d; }
  T det() const { return a * d - b * c; }
  // Adjugate; the inverse for determinant one.
  Matrix2 inverse() const { return {d, -b, -c, a}; }

  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }

  Matrix2<Interval> enclose(int prec) const {
    using lsp::enclose;
    return {enclose(a, prec), enclose(b, prec), enclose(c, prec), enclose(d, prec)};
  }

  std::string to_string() const {
    return "(" + scalar_string(a) + " " + scalar_string(b) + "; " + scalar_string(c) + " " + scalar_string(d) + ")";
  }
};

template <class T>
bool operator==(const Matrix2<T>& x, const Matrix2<T>& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

using RationalMatrix = Matrix2<Rational>;
using FieldMatrix = Matrix2<FieldElement>;
using IntervalMatrix = Matrix2<Interval>;

enum class Classification { Hyperbolic, Parabolic, Elliptic, Identity, Undecided };

const char* to_string(Classification c);

Classification classify(const RationalMatrix& x);
Classification classify(const FieldMatrix& x);
// Undecided when |tr| - 2 cannot be separated from zero.
Classification classify(const IntervalMatrix& x);

template <class T>
struct GeneratorTuple {
  std::vector<Matrix2<T>> generators;
  // 0 for no relation, g for the surface relation [A1,A2]...[A_{2g-1},A_{2g}] = I.
  int genus = 0;
};

// Interval generators remembered by their decimal sources so they can be
// re-enclosed at any precision.
struct RealTuple {
  std::vector<std::array<std::string, 4>> sources;
  int genus = 0;

  GeneratorTuple<Interval> at(int prec) const;
};

using TupleVariant = std::variant<GeneratorTuple<Rational>, GeneratorTuple<FieldElement>, RealTuple>;

struct Group {
  TupleVariant tuple;
  std::string name;

  ScalarKind kind() const;
  size_t size() const;
  int genus() const;
  GeneratorTuple<Interval> enclose(int prec) const;
  FieldPtr field() const;  // null unless kind() == Field
};

// Product of commutators [A1,A2]...[A_{2k-1},A_{2k}] over the first 2k matrices.
template <class T>
Matrix2<T> commutator_product(const std::vector<Matrix2<T>>& g, size_t pairs) {
  Matrix2<T> r = Matrix2<T>::identity_like(g.at(0).a);
  for (size_t i = 0; i < pairs; ++i) {
    const auto& x = g[2 * i];
    const auto& y = g[2 * i + 1];
    r = r * x * y * x.inverse() * y.inverse();
  }
  return r;
}

// Max-entry distance of the relation product from the identity.
Interval relation_defect(const Group& group, int prec = 128);
Interval relation_defect(const GeneratorTuple<Rational>& t, int prec = 128);

// Solves the last generator of a genus-g tuple from A1..A_{2g-1}.
RationalMatrix relation_repair(const std::vector<RationalMatrix>& partial);

struct SchottkyReport {
  bool verified = false;
  // Regions pairwise disjoint, not merely interior-disjoint.
  bool strict = false;
  std::string detail;
};

// Ping-pong check on the isometric circles of the generators and inverses.
SchottkyReport schottky_check(const GeneratorTuple<Interval>& t);
SchottkyReport schottky_check(const Group& group, int prec = 128);

// Deterministic 64-bit generator with a fixed mapping to integers, so
// sampled tuples are reproducible across platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);
  std::uint64_t next();
  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi);
  // Uniform double in [0, 1).
  double unit();

 private:
  std::mt19937_64 engine_;
};

// Appends A_{2g-1} and A_{2g} to A1..A_{2g-2} so the surface relation holds
// exactly, both new matrices hyperbolic.  False after `attempts` failures.
bool complete_relation(std::vector<RationalMatrix>& gens, SeededRng& rng, int attempts = 200);

// m generators; genus mode requires m = 2g with g >= 2.  `spread` scales the
// range of the axis positions in free mode.
GeneratorTuple<Rational> sample_tuple(int m, bool genus_mode, std::uint64_t seed, double spread = 2.0);

std::vector<std::string> preset_names();
Group preset(const std::string& name);

}  // namespace lsp
