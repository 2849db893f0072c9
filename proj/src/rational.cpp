#include "curvkit/rational.hpp"

#include "curvkit/error.hpp"

#include <cctype>

namespace curvkit {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw InputError("not a rational number: '" + s + "'");
    q.canonicalize();
    return q;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac = s.size() - dot - 1;
  for (char c : s.substr(dot + 1))
    if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("not a decimal number: '" + s + "'");
  mpz_class num;
  if (digits.empty() || digits == "-" || num.set_str(digits, 10) != 0)
    throw InputError("not a decimal number: '" + s + "'");
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace curvkit
