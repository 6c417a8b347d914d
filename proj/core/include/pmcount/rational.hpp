#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pmcount {

// Exact rational in lowest terms; GMP keeps it canonical after every
// arithmetic operation.
using Rational = mpq_class;

// Accepts "[-]digits" or "[-]digits/digits" with a positive denominator.
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

}  // namespace pmcount
