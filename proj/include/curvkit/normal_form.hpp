#pragma once

#include "curvkit/polynomial.hpp"

#include <functional>
#include <map>
#include <vector>

namespace curvkit {

/// A non-monomial, primitive polynomial occurring in a denominator.
struct DenominatorFactor {
  Poly poly;
  int multiplicity = 1;
  bool operator==(const DenominatorFactor& other) const = default;
};

/// Canonical rational function over the atom alphabet.
///
/// The numerator is a Laurent polynomial, so monomial denominators (f^-3,
/// exp(-x), ...) live inside it. Every other denominator is kept factored as
/// a list of primitive polynomials with multiplicities, and common factors
/// with the numerator are cancelled by exact division after each operation.
/// Zero is represented uniquely (empty numerator, no factors); a value is
/// zero exactly when its numerator is.
class NormalForm {
 public:
  NormalForm() = default;
  NormalForm(const Rational& c) : num_(Poly::constant(c)) {}  // NOLINT
  NormalForm(int c) : num_(Poly::constant(Rational(c))) {}    // NOLINT
  explicit NormalForm(Poly numerator) : num_(std::move(numerator)) {}
  NormalForm(Poly numerator, std::vector<DenominatorFactor> denominator);

  static NormalForm atom(AtomId id) { return NormalForm(Poly::atom(id)); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  std::optional<Rational> as_rational() const;
  const Poly& numerator() const { return num_; }
  const std::vector<DenominatorFactor>& denominator() const { return den_; }
  /// Product of the denominator factors, expanded.
  Poly denominator_poly() const;
  std::size_t size() const;

  NormalForm operator-() const;
  NormalForm& operator+=(const NormalForm& other);
  NormalForm& operator-=(const NormalForm& other);
  NormalForm& operator*=(const NormalForm& other);
  NormalForm& operator/=(const NormalForm& other);
  friend NormalForm operator+(NormalForm a, const NormalForm& b) { return a += b; }
  friend NormalForm operator-(NormalForm a, const NormalForm& b) { return a -= b; }
  friend NormalForm operator*(NormalForm a, const NormalForm& b) { return a *= b; }
  friend NormalForm operator/(NormalForm a, const NormalForm& b) { return a /= b; }
  NormalForm inverse() const;
  NormalForm pow(int k) const;

  NormalForm derivative(AtomId coordinate) const;

  /// Replaces atoms by the given values (atoms without an entry are kept).
  /// Atoms inside exp exponents may only map to exp-free polynomials.
  NormalForm substitute(const std::map<AtomId, NormalForm>& values) const;

  void collect_atoms(std::set<AtomId>& out) const;

  /// Structural equality; for these canonical forms it coincides with
  /// mathematical equality whenever the denominators are factored alike.
  bool same_as(const NormalForm& other) const { return num_ == other.num_ && den_ == other.den_; }

 private:
  void cancel();
  Poly num_;
  std::vector<DenominatorFactor> den_;  // sorted by compare(poly)
};

/// Mathematical equality: the difference normalizes to zero.
bool equal(const NormalForm& a, const NormalForm& b);
inline bool is_zero(const NormalForm& x) { return x.is_zero(); }
inline std::size_t cost(const NormalForm& x) { return x.size(); }

}  // namespace curvkit
