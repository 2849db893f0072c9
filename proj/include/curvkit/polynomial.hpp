#pragma once

#include "curvkit/atoms.hpp"
#include "curvkit/rational.hpp"

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace curvkit {

/// Sparse product of atom powers, sorted by atom id, exponents nonzero.
/// Exponents may be negative (Laurent monomials).
using PowerProduct = std::vector<std::pair<AtomId, int>>;

/// Exponent of an exp-monomial: a polynomial with rational coefficients over
/// coordinate and parameter atoms (nonnegative powers), sorted by power product.
using ExpExponent = std::vector<std::pair<PowerProduct, Rational>>;

/// atom powers times exp(exponent). Multiplication adds both parts, so the
/// monomials form an ordered abelian group.
struct Monomial {
  PowerProduct powers;
  ExpExponent exponent;
  int degree = 0;  // sum of the exponents in `powers`

  bool is_one() const { return powers.empty() && exponent.empty(); }
  bool operator==(const Monomial& other) const = default;
};

/// Graded lexicographic on atom powers, then lexicographic on the exp part.
/// Compatible with multiplication.
int compare(const Monomial& a, const Monomial& b);
Monomial operator*(const Monomial& a, const Monomial& b);
Monomial inverse(const Monomial& m);
Monomial monomial_of_atom(AtomId atom, int power = 1);
Monomial exp_monomial(ExpExponent exponent);

int compare(const PowerProduct& a, const PowerProduct& b);
ExpExponent add(const ExpExponent& a, const ExpExponent& b);
ExpExponent scale(const ExpExponent& a, const Rational& c);

struct Term {
  Monomial monomial;
  Rational coeff;
  bool operator==(const Term& other) const = default;
};

/// Laurent polynomial with exp-monomials over the atom alphabet, exact
/// rational coefficients. Terms are kept sorted in decreasing monomial order.
class Poly {
 public:
  Poly() = default;
  static Poly constant(const Rational& c);
  static Poly atom(AtomId id, int power = 1);
  static Poly from_term(Monomial m, Rational c);
  /// Builds from unsorted terms, merging duplicates and dropping zeros.
  static Poly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_single_term() const { return terms_.size() == 1; }
  std::optional<Rational> as_constant() const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& lead() const { return terms_.front(); }
  const Term& trail() const { return terms_.back(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly times(const Monomial& m, const Rational& c = 1) const;
  Poly pow(unsigned k) const;

  /// Partial derivative with respect to a coordinate atom.
  Poly derivative(AtomId coordinate) const;

  /// Quotient when `divisor` divides this polynomial exactly.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  /// Per-atom minimum exponent over all terms (exp part left empty).
  Monomial min_powers() const;

  /// Every atom occurring in a power or in an exp exponent.
  void collect_atoms(std::set<AtomId>& out) const;

  bool operator==(const Poly& other) const { return terms_ == other.terms_; }

 private:
  std::vector<Term> terms_;
};

int compare(const Poly& a, const Poly& b);

/// Splits p = c * m * q with q monic (leading coefficient 1), free of any
/// monomial factor, and with a leading term that carries no exp part.
struct PrimitiveSplit {
  Rational coeff;
  Monomial unit;
  Poly primitive;
};
PrimitiveSplit primitive_split(const Poly& p);

/// Converts a polynomial free of exp parts and negative powers into an exp
/// exponent. Throws when the polynomial does not qualify.
ExpExponent to_exponent(const Poly& p);
Poly from_exponent(const ExpExponent& e);

}  // namespace curvkit
