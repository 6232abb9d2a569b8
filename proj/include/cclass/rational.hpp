#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cclass {

using Q = mpq_class;
using Z = mpz_class;

/// Canonical text form: "p/q" in lowest terms, integers without a denominator.
std::string to_string(const Q& q);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else.
Q parse_rational(std::string_view text);

Q factorial(int k);
Q binomial(int n, int k);

inline bool is_zero(const Q& q) { return sgn(q) == 0; }

}  // namespace cclass
