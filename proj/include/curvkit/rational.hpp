#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace curvkit {

using Rational = mpq_class;

/// Parses "12", "-3/4" or a plain decimal such as "0.25" into an exact value.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Size proxy used for pivot selection in exact elimination.
inline std::size_t cost(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace curvkit
