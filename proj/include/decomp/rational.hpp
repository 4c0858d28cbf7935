#pragma once

#include <gmpxx.h>

#include <string>

namespace decomp {

// Exact rational scalar.  GMP keeps values reduced with a positive
// denominator, so equal values compare equal bit for bit.
using Rational = mpq_class;

// Parses "p", "-p", or "p/q" (q != 0).  Throws ParseError on anything else.
Rational rational_from_string(const std::string& text);

// Renders canonically: integers as "p", everything else as "p/q".
std::string rational_to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace decomp
