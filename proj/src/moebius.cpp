#include "lsp/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace lsp {

const char* to_string(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::Rational: return "rational";
    case ScalarKind::Field: return "field";
    case ScalarKind::Real: return "real";
  }
  return "unknown";
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Hyperbolic: return "hyperbolic";
    case Classification::Parabolic: return "parabolic";
    case Classification::Elliptic: return "elliptic";
    case Classification::Identity: return "identity";
    case Classification::Undecided: return "undecided";
  }
  return "unknown";
}

Classification classify(const RationalMatrix& x) {
  Rational t = abs(x.trace());
  if (t > 2) return Classification::Hyperbolic;
  if (t < 2) return Classification::Elliptic;
  if (x.b == 0 && x.c == 0) return Classification::Identity;
  return Classification::Parabolic;
}

Classification classify(const FieldMatrix& x) {
  FieldElement t = x.trace();
  if (t.is_rational() && abs(t.rational_part()) == 2) {
    if (x.b.is_zero() && x.c.is_zero()) return Classification::Identity;
    return Classification::Parabolic;
  }
  for (int prec = 64; prec <= 4096; prec *= 2) {
    Interval v = abs(t.real_value(prec));
    if (v.certainly_greater(Rational(2))) return Classification::Hyperbolic;
    if (v.certainly_less(Rational(2))) return Classification::Elliptic;
  }
  return Classification::Undecided;
}

Classification classify(const IntervalMatrix& x) {
  Interval v = abs(x.trace());
  if (v.certainly_greater(Rational(2))) return Classification::Hyperbolic;
  if (v.certainly_less(Rational(2))) return Classification::Elliptic;
  return Classification::Undecided;
}

GeneratorTuple<Interval> RealTuple::at(int prec) const {
  GeneratorTuple<Interval> t;
  t.genus = genus;
  for (const auto& s : sources)
    t.generators.push_back({Interval::from_decimal(s[0], prec), Interval::from_decimal(s[1], prec),
                            Interval::from_decimal(s[2], prec), Interval::from_decimal(s[3], prec)});
  return t;
}

ScalarKind Group::kind() const {
  switch (tuple.index()) {
    case 0: return ScalarKind::Rational;
    case 1: return ScalarKind::Field;
    default: return ScalarKind::Real;
  }
}

size_t Group::size() const {
  return std::visit(
      [](const auto& t) -> size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(t)>, RealTuple>)
          return t.sources.size();
        else
          return t.generators.size();
      },
      tuple);
}

int Group::genus() const {
  return std::visit([](const auto& t) { return t.genus; }, tuple);
}

GeneratorTuple<Interval> Group::enclose(int prec) const {
  return std::visit(
      [prec](const auto& t) -> GeneratorTuple<Interval> {
        if constexpr (std::is_same_v<std::decay_t<decltype(t)>, RealTuple>) {
          return t.at(prec);
        } else {
          GeneratorTuple<Interval> out;
          out.genus = t.genus;
          for (const auto& g : t.generators) out.generators.push_back(g.enclose(prec));
          return out;
        }
      },
      tuple);
}

FieldPtr Group::field() const {
  if (const auto* t = std::get_if<GeneratorTuple<FieldElement>>(&tuple))
    if (!t->generators.empty()) return t->generators[0].a.field();
  return nullptr;
}

// ---------------------------------------------------------------- relation

namespace {

Interval max_entry_distance(const IntervalMatrix& r) {
  Interval one = Interval::from_integer(1, r.a.precision());
  return max(max(abs(r.a - one), abs(r.b)), max(abs(r.c), abs(r.d - one)));
}

void require_genus(int genus, size_t size) {
  if (genus < 1) throw Error(ErrorCode::InvalidArgument, "tuple has no surface relation");
  if (size != static_cast<size_t>(2 * genus)) throw Error(ErrorCode::ArityMismatch, "genus relation needs 2g generators");
}

}  // namespace

Interval relation_defect(const GeneratorTuple<Rational>& t, int prec) {
  require_genus(t.genus, t.generators.size());
  return max_entry_distance(commutator_product(t.generators, static_cast<size_t>(t.genus)).enclose(prec));
}

Interval relation_defect(const Group& group, int prec) {
  require_genus(group.genus(), group.size());
  const size_t g = static_cast<size_t>(group.genus());
  if (const auto* t = std::get_if<GeneratorTuple<Rational>>(&group.tuple)) return relation_defect(*t, prec);
  if (const auto* t = std::get_if<GeneratorTuple<FieldElement>>(&group.tuple))
    return max_entry_distance(commutator_product(t->generators, g).enclose(prec));
  return max_entry_distance(commutator_product(group.enclose(prec).generators, g));
}

namespace {

// Basis of the nullspace of a rational matrix, from its reduced row echelon form.
std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> m) {
  const size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[static_cast<size_t>(pivot_col[i])] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix from_vec(const std::vector<Rational>& v) { return {v[0], v[1], v[2], v[3]}; }

RationalMatrix scaled(const RationalMatrix& x, const Rational& s) { return {x.a * s, x.b * s, x.c * s, x.d * s}; }

size_t height_bits(const RationalMatrix& x) {
  size_t bits = 0;
  for (const Rational* e : {&x.a, &x.b, &x.c, &x.d})
    bits += mpz_sizeinbase(e->get_num_mpz_t(), 2) + mpz_sizeinbase(e->get_den_mpz_t(), 2);
  return bits;
}

RationalMatrix normalize_sign(const RationalMatrix& x) {
  Rational t = x.trace();
  if (t < 0 || (t == 0 && x.a < 0)) return scaled(x, Rational(-1));
  return x;
}

}  // namespace

RationalMatrix relation_repair(const std::vector<RationalMatrix>& partial) {
  if (partial.size() < 3) {
    if (partial.size() == 1) throw Error(ErrorCode::GenusOne, "genus one has no hyperbolic surface group");
    throw Error(ErrorCode::ArityMismatch, "relation repair needs 2g-1 >= 3 matrices");
  }
  if (partial.size() % 2 == 0) throw Error(ErrorCode::ArityMismatch, "relation repair needs an odd number of matrices");
  const size_t g = (partial.size() + 1) / 2;
  RationalMatrix B = commutator_product(partial, g - 1);
  const RationalMatrix& Q = partial.back();
  if (B == RationalMatrix::identity_like(Rational(0)))
    throw Error(ErrorCode::RepairDegenerate, "commutator product is the identity; the last generator is undetermined");
  RationalMatrix P = B * Q;
  // Linear map X -> P X - X Q on the entries (x11, x12, x21, x22).
  std::vector<std::vector<Rational>> m(4, std::vector<Rational>(4));
  for (int k = 0; k < 4; ++k) {
    std::vector<Rational> e(4);
    e[static_cast<size_t>(k)] = 1;
    RationalMatrix X = from_vec(e);
    RationalMatrix PX = P * X, XQ = X * Q;
    m[0][static_cast<size_t>(k)] = PX.a - XQ.a;
    m[1][static_cast<size_t>(k)] = PX.b - XQ.b;
    m[2][static_cast<size_t>(k)] = PX.c - XQ.c;
    m[3][static_cast<size_t>(k)] = PX.d - XQ.d;
  }
  auto basis = nullspace(m);
  if (basis.empty()) throw Error(ErrorCode::RepairNoSolution, "rewritten relation has only the zero solution");
  if (basis.size() >= 3) throw Error(ErrorCode::RepairDegenerate, "solution space of dimension " + std::to_string(basis.size()));

  RationalMatrix X0 = from_vec(basis[0]);
  if (basis.size() == 1) {
    Rational det = X0.det();
    if (det <= 0) throw Error(ErrorCode::RepairNoRealSolution, "no real determinant-one scaling");
    Rational root;
    if (!rational_sqrt(det, root)) throw Error(ErrorCode::RepairNoRationalScaling, "determinant is not a rational square");
    return normalize_sign(scaled(X0, 1 / root));
  }
  RationalMatrix X1 = X0 * Q;
  // det(s X0 + t X1) = det(X0) (s^2 + tr(Q) s t + t^2)
  const Rational A = X0.det();
  const Rational tau = Q.trace();
  if (A == 0) throw Error(ErrorCode::RepairNoRealSolution, "solutions are singular");
  auto finish = [&](const Rational& s, const Rational& t) -> std::optional<RationalMatrix> {
    Rational det = A * (s * s + tau * s * t + t * t);
    Rational root;
    if (det <= 0 || !rational_sqrt(det, root)) return std::nullopt;
    RationalMatrix X{X0.a * s + X1.a * t, X0.b * s + X1.b * t, X0.c * s + X1.c * t, X0.d * s + X1.d * t};
    return normalize_sign(scaled(X, 1 / root));
  };
  // s^2 + tau s t + t^2 is positive definite for |tau| < 2 and indefinite otherwise.
  if (A < 0 && abs(tau) <= 2) throw Error(ErrorCode::RepairNoRealSolution, "determinant form is never positive");
  for (long h = 1; h <= 64; ++h) {
    for (long s = -h; s <= h; ++s) {
      for (long t = -h; t <= h; ++t) {
        if (std::max(std::labs(s), std::labs(t)) != h) continue;
        if (auto X = finish(Rational(s), Rational(t))) return *X;
      }
    }
  }
  // Rational eigenvalues lambda, 1/lambda: the form factors as
  // (s + lambda t)(s + t / lambda), so s + lambda t = A k, s + t / lambda = 1 / k
  // gives determinant A^2.  Keep the k giving the smallest entries.
  Rational disc;
  if (rational_sqrt(tau * tau - 4, disc) && disc != 0) {
    Rational lambda = (tau + disc) / 2;
    std::optional<RationalMatrix> best;
    size_t best_bits = 0;
    for (long num = -12; num <= 12; ++num) {
      for (long den = 1; den <= 12; ++den) {
        if (num == 0) continue;
        Rational k(num, den);
        k.canonicalize();
        Rational t = (A * k - 1 / k) / (lambda - 1 / lambda);
        Rational s = A * k - lambda * t;
        auto X = finish(s, t);
        if (!X) continue;
        size_t bits = height_bits(*X);
        if (!best || bits < best_bits) {
          best = X;
          best_bits = bits;
        }
      }
    }
    if (best) return *best;
  }
  throw Error(ErrorCode::RepairNoRationalScaling, "no rational determinant-one scaling found");
}

// ---------------------------------------------------------------- Schottky

namespace {

struct Region {
  Interval lo;  // enclosure of the left end
  Interval hi;  // enclosure of the right end
  std::string label;
};

Interval infinite(int sign, int prec) {
  Real inf(prec);
  mpfr_set_inf(inf.get(), sign);
  return Interval::from_real(inf, prec);
}

bool is_exact_zero(const Interval& x) { return x.is_point() && x.contains(0.0); }

bool regions_of(const IntervalMatrix& g, const std::string& name, std::vector<Region>& out, std::string& why) {
  const int prec = g.a.precision();
  if (!g.c.contains_zero()) {
    Interval r = Interval::from_integer(1, prec) / abs(g.c);
    Interval c1 = -g.d / g.c;  // isometric circle of g
    Interval c2 = g.a / g.c;   // isometric circle of the inverse
    out.push_back({c1 - r, c1 + r, name});
    out.push_back({c2 - r, c2 + r, name + "^-1"});
    return true;
  }
  if (is_exact_zero(g.c) && g.a.is_point() && g.d.is_point() && (g.a * g.d).contains(1.0) &&
      (g.a.contains(1.0) || g.a.contains(-1.0))) {
    Interval tau = abs(g.b * g.a);
    if (!tau.certainly_positive()) {
      why = name + " is the identity";
      return false;
    }
    Interval half = tau / Interval::from_integer(2, prec);
    out.push_back({half, infinite(1, prec), name});
    out.push_back({infinite(-1, prec), -half, name + "^-1"});
    return true;
  }
  why = name + " has no certified isometric circle";
  return false;
}

}  // namespace

SchottkyReport schottky_check(const GeneratorTuple<Interval>& t) {
  SchottkyReport rep;
  std::vector<Region> regions;
  for (size_t i = 0; i < t.generators.size(); ++i) {
    std::string why;
    if (!regions_of(t.generators[i], "A" + std::to_string(i + 1), regions, why)) {
      rep.detail = why;
      return rep;
    }
  }
  bool strict = true;
  for (size_t i = 0; i < regions.size(); ++i) {
    for (size_t j = i + 1; j < regions.size(); ++j) {
      const Region& x = regions[i];
      const Region& y = regions[j];
      bool left = mpfr_lessequal_p(x.hi.hi(), y.lo.lo()) != 0;
      bool right = mpfr_lessequal_p(y.hi.hi(), x.lo.lo()) != 0;
      if (!left && !right) {
        rep.detail = "regions of " + x.label + " and " + y.label + " overlap";
        return rep;
      }
      bool sep = left ? mpfr_less_p(x.hi.hi(), y.lo.lo()) != 0 : mpfr_less_p(y.hi.hi(), x.lo.lo()) != 0;
      strict = strict && sep;
    }
  }
  rep.verified = true;
  rep.strict = strict;
  rep.detail = strict ? "disjoint isometric regions" : "interior-disjoint isometric regions (touching)";
  return rep;
}

SchottkyReport schottky_check(const Group& group, int prec) { return schottky_check(group.enclose(prec)); }

// ---------------------------------------------------------------- sampling

SeededRng::SeededRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SeededRng::next() { return engine_(); }

long SeededRng::uniform(long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return lo + static_cast<long>(v % span);
}

double SeededRng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

struct Slot {
  Rational center;
  Rational radius;
};

bool clear_of(const std::vector<Slot>& used, const Slot& s) {
  for (const auto& u : used)
    if (abs(u.center - s.center) <= u.radius + s.radius) return false;
  return true;
}

void sample_free_into(int count, SeededRng& rng, double spread, std::vector<RationalMatrix>& out) {
  const long range = std::max<long>(4, static_cast<long>(std::ceil(spread * 2 * count)));
  std::vector<Slot> used;
  for (int i = 0; i < count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      long c = rng.uniform(1, 3);
      Rational r(1, c);
      Slot sp{Rational(rng.uniform(-range, range)), r};
      Slot sq{Rational(rng.uniform(-range, range)), r};
      if (!clear_of(used, sp)) continue;
      used.push_back(sp);
      if (!clear_of(used, sq)) {
        used.pop_back();
        continue;
      }
      used.push_back(sq);
      Rational cc(c);
      Rational a = sq.center * cc, d = -sp.center * cc;
      Rational b = (a * d - 1) / cc;
      out.push_back({a, b, cc, d});
      placed = true;
    }
    if (!placed) throw Error(ErrorCode::SamplingFailed, "could not place disjoint isometric circles");
  }
}

}  // namespace

bool complete_relation(std::vector<RationalMatrix>& gens, SeededRng& rng, int attempts) {
  if (gens.empty() || gens.size() % 2 != 0) throw Error(ErrorCode::ArityMismatch, "need A1..A_{2g-2} with g >= 2");
  const size_t g = gens.size() / 2 + 1;
  RationalMatrix B = commutator_product(gens, g - 1);
  RationalMatrix E{B.a - 1, B.b, B.c, B.d - 1};
  const Rational trE = E.trace();
  std::optional<std::vector<RationalMatrix>> best;
  size_t best_bits = 0;
  int found = 0;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    // A_{2g-1} = S diag(lambda, 1/lambda) S^-1 with tr(E A_{2g-1}) = 0; rational
    // eigenvalues keep the determinant condition of the repair solvable.
    long den = rng.uniform(1, 3);
    Rational lambda(rng.uniform(den + 1, 3 * den + 3), den);
    lambda.canonicalize();
    Rational f = trE / (1 - lambda * lambda);
    Rational s11(rng.uniform(-3, 3)), s21(rng.uniform(-3, 3));
    Rational p = E.a * s11 + E.b * s21, q = E.c * s11 + E.d * s21;
    Rational s12 = p - f * s11, s22 = q - f * s21;
    Rational detS = s11 * s22 - s12 * s21;
    if (detS == 0) continue;
    RationalMatrix S{s11, s12, s21, s22};
    RationalMatrix Sinv{s22 / detS, -s12 / detS, -s21 / detS, s11 / detS};
    RationalMatrix Q = S * RationalMatrix{lambda, Rational(0), Rational(0), 1 / lambda} * Sinv;
    std::vector<RationalMatrix> partial = gens;
    partial.push_back(Q);
    RationalMatrix last;
    try {
      last = relation_repair(partial);
    } catch (const Error&) {
      continue;
    }
    if (classify(last) != Classification::Hyperbolic) continue;
    partial.push_back(last);
    if (!(commutator_product(partial, g) == RationalMatrix::identity_like(Rational(0)))) continue;
    size_t bits = height_bits(Q) + height_bits(last);
    if (!best || bits < best_bits) {
      best = std::move(partial);
      best_bits = bits;
    }
    if (++found == 8) break;
  }
  if (!best) return false;
  gens = std::move(*best);
  return true;
}

GeneratorTuple<Rational> sample_tuple(int m, bool genus_mode, std::uint64_t seed, double spread) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "need at least two generators");
  SeededRng rng(seed);
  GeneratorTuple<Rational> t;
  if (!genus_mode) {
    sample_free_into(m, rng, spread, t.generators);
    return t;
  }
  if (m % 2 != 0) throw Error(ErrorCode::ArityMismatch, "genus mode needs an even number of generators");
  const int g = m / 2;
  if (g == 1) throw Error(ErrorCode::GenusOne, "genus one has no hyperbolic surface group");
  for (int round = 0; round < 20; ++round) {
    std::vector<RationalMatrix> gens;
    sample_free_into(2 * g - 2, rng, spread, gens);
    if (complete_relation(gens, rng, 10)) {
      t.generators = std::move(gens);
      t.genus = g;
      return t;
    }
  }
  throw Error(ErrorCode::SamplingFailed, "relation repair failed for every retry at this seed");
}

// ---------------------------------------------------------------- presets

std::vector<std::string> preset_names() {
  return {"sanov", "sanov-hyperbolic", "sqrt2", "schottky3", "genus2", "genus3"};
}

namespace {

RationalMatrix ints(long a, long b, long c, long d) { return {Rational(a), Rational(b), Rational(c), Rational(d)}; }

}  // namespace

Group preset(const std::string& name) {
  Group g;
  g.name = name;
  if (name == "sanov") {
    g.tuple = GeneratorTuple<Rational>{{ints(1, 2, 0, 1), ints(1, 0, 2, 1)}, 0};
  } else if (name == "sanov-hyperbolic") {
    g.tuple = GeneratorTuple<Rational>{{ints(5, 2, 2, 1), ints(5, -2, -2, 1)}, 0};
  } else if (name == "sqrt2") {
    FieldPtr k = NumberField::create(QPoly::from_integers({-2, 0, 1}));
    auto el = [&](long x, long y) { return FieldElement(k, {Rational(x), Rational(y)}); };
    GeneratorTuple<FieldElement> t;
    t.generators.push_back({el(1, 1), el(0, 0), el(0, 0), el(-1, 1)});
    t.generators.push_back({el(0, 1), el(1, 0), el(1, 0), el(0, 1)});
    g.tuple = std::move(t);
  } else if (name == "schottky3") {
    g.tuple = sample_tuple(3, false, 1);
  } else if (name == "genus2") {
    g.tuple = sample_tuple(4, true, 1);
  } else if (name == "genus3") {
    g.tuple = sample_tuple(6, true, 1);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
  }
  return g;
}

}  // namespace lsp
