#pragma once

// Real number fields Q(theta) presented by a monic irreducible integer
// polynomial together with a chosen real root theta.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lsp/qpoly.hpp"
#include "lsp/rigorous.hpp"

namespace lsp {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
 public:
  // `real_root_index` selects among the real roots in increasing order;
  // -1 picks the largest.  Throws Reducible or EmbeddingFailure.
  static FieldPtr create(const QPoly& minimal_polynomial, int real_root_index = -1);
  // Chooses the real root inside [mid - radius, mid + radius].
  static FieldPtr create_near(const QPoly& minimal_polynomial, const Rational& mid, const Rational& radius);

  int degree() const { return poly_.degree(); }
  const QPoly& minimal_polynomial() const { return poly_; }

  // Enclosures of all roots (real roots first, increasing).  Results at a
  // higher precision are contained in those at a lower one.
  std::vector<ComplexInterval> embeddings(int prec) const;
  int chosen_index() const { return chosen_; }
  Interval chosen_root(int prec) const;

  bool same_as(const NumberField& other) const;

  // Two lines: "field c0 c1 ... cd" and "embedding MID RADIUS".
  std::string serialize() const;
  static FieldPtr parse(const std::string& text);

  NumberField(const QPoly& poly, int chosen);

 private:
  QPoly poly_;
  int chosen_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::vector<ComplexInterval>> cache_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::vector<Rational> coords);
  static FieldElement from_rational(FieldPtr field, const Rational& q);
  static FieldElement generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;
  // Constant coordinate; meaningful when is_rational().
  const Rational& rational_part() const { return coords_[0]; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  FieldElement inverse() const;

  // Value under the chosen real embedding.
  Interval real_value(int prec) const;
  std::vector<ComplexInterval> conjugates(int prec) const;

  std::vector<std::vector<Rational>> multiplication_matrix() const;
  QPoly characteristic_polynomial() const;
  // Primitive integer polynomial with positive leading coefficient.
  QPoly minimal_polynomial() const;
  Rational norm() const;
  Rational trace() const;

  // Comma separated coordinates, e.g. "1,1" for 1 + theta.
  std::string to_string() const;
  static FieldElement parse(FieldPtr field, const std::string& text);

 private:
  QPoly as_poly() const;
  static FieldElement from_poly(FieldPtr field, const QPoly& p);

  FieldPtr field_;
  std::vector<Rational> coords_;
};

// max_j |sigma_j(beta)|
Interval embedding_height(const FieldElement& beta, int prec = 128);

}  // namespace lsp
