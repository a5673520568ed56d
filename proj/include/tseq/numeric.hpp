#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace tseq {

// Exact arithmetic everywhere: arbitrary-precision integers and rationals.
// No floating point appears anywhere in the library.
using Int = mpz_class;
using Rat = mpq_class;

/// Floor division toward -infinity (so mod results land in [0, b) for b > 0).
Int floor_div(const Int& a, const Int& b);

/// a - b*floor_div(a, b); in [0, b) for b > 0.
Int mod_floor(const Int& a, const Int& b);

/// Largest m with m*m <= n. Requires n >= 0.
Int isqrt(const Int& n);

/// base^exp for exp >= 0.
Int pow_int(const Int& base, unsigned long exp);

/// Largest integer <= q.
Int floor_rat(const Rat& q);

/// Smallest integer >= q.
Int ceil_rat(const Rat& q);

/// |q| as a rational.
Rat abs_rat(const Rat& q);

Rat make_rat(const Int& num, const Int& den);

/// Largest e >= 0 with 2^e <= q, or -1 if q < 1.
long floor_log2(const Rat& q);

/// Parses an optionally signed decimal integer. Rejects anything else.
Int parse_int(const std::string& text);

/// Parses "p" or "p/q" with q a positive decimal integer.
Rat parse_fraction(const std::string& text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string fraction_str(const Rat& q);

}  // namespace tseq
