#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace numberless {

// Exact unbounded rational. mpq_class keeps values canonical (lowest terms,
// positive denominator) after every arithmetic operation.
using Rational = mpq_class;

// Accepts "p/q", "p" and optional leading sign. Throws ParseError.
Rational parse_rational(std::string_view text);

// "3/8", "0", "1": the shortest exact rendering.
std::string to_string(const Rational& r);

// Always "num/den", e.g. "1/1", "0/1". Used by the document format.
std::string to_fraction_string(const Rational& r);

double to_double(const Rational& r);

Rational pow(const Rational& base, unsigned long exponent);

std::size_t hash_value(const Rational& r);

}  // namespace numberless
