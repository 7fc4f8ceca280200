#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace handelman {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator once canonicalized; all helpers here return
/// canonical values.
using Rat = mpq_class;
using Int = mpz_class;
using RatVector = std::vector<Rat>;

/// Parses "p/q", "p" or a plain decimal such as "1.5294". Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rat parse_rat(std::string_view text);

/// Canonical text form: "p/q", or "p" when q = 1.
std::string to_string(const Rat& value);

double to_double(const Rat& value);

/// Smallest multiple of 1/denominator that is >= value.
Rat ceil_to_grid(double value, long denominator);
/// Largest multiple of 1/denominator that is <= value.
Rat floor_to_grid(double value, long denominator);

/// Simplest rational within `tolerance` of value (continued fractions).
Rat rationalize(double value, double tolerance);

Int factorial(unsigned k);

}  // namespace handelman
