#include "lsp/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lsp/error.hpp"
#include "lsp/rational.hpp"

namespace lsp {

namespace {

int count_real(const std::vector<ComplexInterval>& roots) {
  return static_cast<int>(std::count_if(roots.begin(), roots.end(), [](const ComplexInterval& z) { return z.is_real(); }));
}

bool overlaps(const ComplexInterval& a, const ComplexInterval& b) {
  return !a.re.disjoint(b.re) && !a.im.disjoint(b.im);
}

void check_poly(const QPoly& p) {
  if (p.degree() < 1) throw Error(ErrorCode::DegreeZero, "field polynomial must have positive degree");
  if (!p.is_monic() || !p.is_integral()) throw Error(ErrorCode::InvalidArgument, "field polynomial must be monic with integer coefficients");
  if (p.degree() > 16) throw Error(ErrorCode::Unsupported, "field degree above 16");
  if (!is_irreducible(p)) throw Error(ErrorCode::Reducible, "polynomial " + p.to_string() + " is reducible over Q");
}

}  // namespace

NumberField::NumberField(const QPoly& poly, int chosen) : poly_(poly), chosen_(chosen) {}

FieldPtr NumberField::create(const QPoly& minimal_polynomial, int real_root_index) {
  check_poly(minimal_polynomial);
  auto roots = certified_roots(minimal_polynomial, 128);
  int nreal = count_real(roots);
  if (nreal == 0) throw Error(ErrorCode::EmbeddingFailure, "polynomial " + minimal_polynomial.to_string() + " has no real root");
  int idx = real_root_index < 0 ? nreal - 1 : real_root_index;
  if (idx >= nreal) throw Error(ErrorCode::EmbeddingFailure, "real root index out of range");
  return std::make_shared<const NumberField>(minimal_polynomial, idx);
}

FieldPtr NumberField::create_near(const QPoly& minimal_polynomial, const Rational& mid, const Rational& radius) {
  check_poly(minimal_polynomial);
  auto roots = certified_roots(minimal_polynomial, 128);
  Interval window = Interval::hull(Interval::from_rational(mid - radius, 128), Interval::from_rational(mid + radius, 128));
  int found = -1;
  int nreal = count_real(roots);
  for (int i = 0; i < nreal; ++i) {
    if (!roots[static_cast<size_t>(i)].re.disjoint(window)) {
      if (found >= 0) throw Error(ErrorCode::EmbeddingFailure, "embedding window contains several real roots");
      found = i;
    }
  }
  if (found < 0) throw Error(ErrorCode::EmbeddingFailure, "embedding window contains no real root");
  return std::make_shared<const NumberField>(minimal_polynomial, found);
}

std::vector<ComplexInterval> NumberField::embeddings(int prec) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(prec);
  if (it != cache_.end()) return it->second;
  std::vector<ComplexInterval> raw = certified_roots(poly_, prec);
  if (!cache_.empty() && count_real(raw) != count_real(cache_.begin()->second))
    throw Error(ErrorCode::EmbeddingFailure, "inconsistent real root count across precisions");
  for (auto& z : raw) {
    for (const auto& [p, roots] : cache_) {
      for (const auto& w : roots) {
        if (!overlaps(z, w)) continue;
        if (p < prec) {
          z.re = intersect(z.re, w.re);
          z.im = intersect(z.im, w.im);
        }
        break;
      }
    }
    for (const auto& [p, roots] : cache_) {
      if (p <= prec) continue;
      for (const auto& w : roots) {
        if (!overlaps(z, w)) continue;
        z.re = Interval::hull(z.re, w.re);
        z.im = Interval::hull(z.im, w.im);
        break;
      }
    }
  }
  cache_.emplace(prec, raw);
  return raw;
}

Interval NumberField::chosen_root(int prec) const { return embeddings(prec)[static_cast<size_t>(chosen_)].re; }

bool NumberField::same_as(const NumberField& other) const {
  return this == &other || (poly_ == other.poly_ && chosen_ == other.chosen_);
}

std::string NumberField::serialize() const {
  std::ostringstream out;
  out << "field";
  for (const auto& c : poly_.coeffs()) out << ' ' << c.get_str();
  auto roots = embeddings(128);
  double mid = roots[static_cast<size_t>(chosen_)].re.mid();
  double sep = 1e-12;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (static_cast<int>(i) == chosen_) continue;
    double d = std::hypot(roots[i].re.mid() - mid, roots[i].im.mid());
    sep = std::min(sep, d / 4);
  }
  out << "\nembedding " << shortest_decimal(mid) << ' ' << shortest_decimal(sep) << '\n';
  return out.str();
}

FieldPtr NumberField::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Rational> coeffs;
  bool have_embedding = false;
  Rational mid, radius;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string tok;
    if (key == "field") {
      while (ls >> tok) coeffs.push_back(parse_rational(tok));
    } else if (key == "embedding") {
      std::string a, b;
      if (!(ls >> a >> b)) throw Error(ErrorCode::ParseError, "embedding needs a midpoint and a radius");
      mid = parse_rational(a);
      radius = parse_rational(b);
      have_embedding = true;
    } else {
      throw Error(ErrorCode::ParseError, "unknown field keyword '" + key + "'");
    }
  }
  if (coeffs.empty()) throw Error(ErrorCode::ParseError, "missing field polynomial");
  QPoly p(std::move(coeffs));
  return have_embedding ? create_near(p, mid, radius) : create(p);
}

// ---------------------------------------------------------------- elements

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords) : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw Error(ErrorCode::InvalidArgument, "field element without a field");
  const size_t d = static_cast<size_t>(field_->degree());
  if (coords_.size() > d) throw Error(ErrorCode::InvalidArgument, "too many coordinates for the field degree");
  coords_.resize(d);
  for (auto& c : coords_) c.canonicalize();
}

FieldElement FieldElement::from_rational(FieldPtr field, const Rational& q) {
  return FieldElement(std::move(field), std::vector<Rational>{q});
}

FieldElement FieldElement::generator(FieldPtr field) {
  if (field->degree() == 1) {
    Rational r = -field->minimal_polynomial().coeff(0);
    return from_rational(std::move(field), r);
  }
  return FieldElement(std::move(field), std::vector<Rational>{Rational(0), Rational(1)});
}

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

QPoly FieldElement::as_poly() const { return QPoly(coords_); }

FieldElement FieldElement::from_poly(FieldPtr field, const QPoly& p) {
  QPoly r = p % field->minimal_polynomial();
  return FieldElement(std::move(field), r.coeffs());
}

namespace {

void require_same(const FieldElement& a, const FieldElement& b) {
  if (!a.field() || !b.field() || !a.field()->same_as(*b.field()))
    throw Error(ErrorCode::ScalarKindMismatch, "field elements from different fields");
}

}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  std::vector<Rational> c(a.coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] + b.coords_[i];
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  std::vector<Rational> c(a.coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] - b.coords_[i];
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return FieldElement::from_poly(a.field_, a.as_poly() * b.as_poly());
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::operator-() const {
  std::vector<Rational> c = coords_;
  for (auto& x : c) x = -x;
  return FieldElement(field_, std::move(c));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field_ && b.field_ && a.field_->same_as(*b.field_) && a.coords_ == b.coords_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroElement, "inverse of zero");
  QPoly s, t;
  extended_gcd(as_poly(), field_->minimal_polynomial(), s, t);
  return from_poly(field_, s);
}

Interval FieldElement::real_value(int prec) const { return as_poly().eval(field_->chosen_root(prec)); }

std::vector<ComplexInterval> FieldElement::conjugates(int prec) const {
  std::vector<ComplexInterval> out;
  QPoly p = as_poly();
  for (const auto& z : field_->embeddings(prec)) {
    if (p.degree() <= 0) {
      out.emplace_back(Interval::from_rational(p.coeff(0), prec), Interval(prec));
    } else {
      out.push_back(p.eval(z));
    }
  }
  return out;
}

std::vector<std::vector<Rational>> FieldElement::multiplication_matrix() const {
  const size_t d = coords_.size();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  QPoly col = as_poly();
  for (size_t j = 0; j < d; ++j) {
    QPoly r = col % field_->minimal_polynomial();
    for (size_t i = 0; i < d; ++i) m[i][j] = r.coeff(static_cast<int>(i));
    col = r * QPoly::x();
  }
  return m;
}

QPoly FieldElement::characteristic_polynomial() const {
  auto a = multiplication_matrix();
  const size_t n = a.size();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        next[i][j] = s;
      }
    for (size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    Rational tr = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t l = 0; l < n; ++l) tr += a[i][l] * next[l][i];
    c[n - k] = -tr / static_cast<long>(k);
    m = std::move(next);
  }
  return QPoly(std::move(c));
}

QPoly FieldElement::minimal_polynomial() const { return squarefree_part(characteristic_polynomial()).primitive(); }

Rational FieldElement::norm() const {
  QPoly cp = characteristic_polynomial();
  return (cp.degree() % 2 == 0) ? cp.coeff(0) : Rational(-cp.coeff(0));
}

Rational FieldElement::trace() const { return -characteristic_polynomial().coeff(field_->degree() - 1); }

std::string FieldElement::to_string() const {
  std::string out;
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ",";
    out += coords_[i].get_str();
  }
  return out;
}

FieldElement FieldElement::parse(FieldPtr field, const std::string& text) {
  std::vector<Rational> c;
  size_t start = 0;
  while (true) {
    size_t comma = text.find(',', start);
    c.push_back(parse_rational(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (c.size() > static_cast<size_t>(field->degree()))
    throw Error(ErrorCode::ParseError, "element '" + text + "' has more coordinates than the field degree");
  return FieldElement(std::move(field), std::move(c));
}

Interval embedding_height(const FieldElement& beta, int prec) {
  Interval best(prec);
  bool first = true;
  for (const auto& z : beta.conjugates(prec)) {
    Interval m = modulus(z);
    best = first ? m : max(best, m);
    first = false;
  }
  return best;
}

}  // namespace lsp
