#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fk {

using Rational = mpq_class;

// n/d in canonical form. The two-argument mpq_class constructor does not reduce,
// and GMP arithmetic assumes reduced operands.
inline Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Accepts "a", "-a", "a/b"; whitespace is not allowed. Throws ParseError.
Rational parse_rational(std::string_view text);

// "p/q" for non-integers, "p" for integers.
std::string to_string(const Rational& x);

// Always "p/q" (the JSON convention), including integers ("3/1").
std::string to_fraction_string(const Rational& x);

Rational floor_div(const Rational& x, const Rational& m);
bool is_integer(const Rational& x);
bool is_even_integer(const Rational& x);
double to_double(const Rational& x);

}  // namespace fk
