#pragma once

#include "curvkit/expression.hpp"

#include <map>
#include <optional>

namespace curvkit {

/// Values for coordinates and parameters plus concrete replacements for opaque
/// functions. Derivative atoms of an instantiated function resolve to the
/// derivatives of its replacement.
struct Binding {
  std::map<AtomId, Rational> exact;
  std::map<AtomId, long double> approximate;
  std::map<AtomId, NormalForm> functions;  // keyed by the underived function atom

  void set(AtomId atom, const Rational& value) { exact[atom] = value; }
  void set(AtomId atom, long double value) { approximate[atom] = value; }
  void instantiate(AtomId function, NormalForm value) { functions[function] = std::move(value); }
};

struct Value {
  std::optional<Rational> exact;
  long double approx = 0;
  bool is_exact() const { return exact.has_value(); }
};

/// Replaces every function atom whose base has an instantiation. With
/// `require_all`, a function without one is an error.
NormalForm instantiate(const NormalForm& x, const Binding& b, bool require_all = false);
Expression instantiate(const Expression& e, const Binding& b);

/// Exact when the bound values are rational and no exp of a nonzero constant
/// survives; otherwise a long double approximation. Throws DivisionByZero at a
/// pole and InputError for an unbound symbol.
Value evaluate(const NormalForm& x, const Binding& b);
Value evaluate(const Expression& e, const Binding& b);

/// Pure floating evaluation with all atoms given numerically.
long double evaluate_numeric(const NormalForm& x, const std::map<AtomId, long double>& values);

}  // namespace curvkit
