#pragma once

#include <string>
#include <string_view>

#include "lsp/rigorous.hpp"

namespace lsp {

// Parses "7", "-3/4" or an exact decimal such as "1.25e-2".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer lcm(const Integer& a, const Integer& b);

// Exact square root of a non-negative rational if it is a perfect square.
bool rational_sqrt(const Rational& q, Rational& root);

// Base-10 logarithm of |q| (q != 0), accurate to double precision even when
// q overflows a double.
double log10_abs(const Rational& q);

}  // namespace lsp
