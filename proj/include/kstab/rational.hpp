#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kstab {

// Exact scalars. mpq_class keeps results canonical after every arithmetic op.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" in lowest terms, or "n" when the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "n", "-n", "p/q"; normalizes. Throws InputError on junk or zero denominator.
Rational parse_rational(std::string_view text);

inline int sign(const Rational& r) { return sgn(r); }

}  // namespace kstab
