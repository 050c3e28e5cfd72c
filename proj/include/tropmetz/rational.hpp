#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tropmetz {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p/q" or "p" (optional leading sign). Throws Error{Malformed} on
/// anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form with q > 0 and gcd(p, q) = 1; integers keep "/1".
std::string format_rational(const Rational& value);

/// Shorter human form: integers print without "/1".
std::string pretty_rational(const Rational& value);

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace tropmetz
