#pragma once

#include "curvkit/normal_form.hpp"
#include "curvkit/symbols.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace curvkit {

/// Immutable expression tree as written by a user or produced for display.
/// Builders apply only local cleanup (flattening, constant folding); identity
/// checks go through normalize().
class Expression {
 public:
  enum class Kind { Constant, Symbol, FunctionAtom, Exp, Sum, Product, Power, Quotient };

  Expression() : Expression(Rational(0)) {}
  Expression(const Rational& value);  // NOLINT
  Expression(int value) : Expression(Rational(value)) {}  // NOLINT

  static Expression symbol(AtomId atom);
  static Expression exp(Expression exponent);
  static Expression sum(std::vector<Expression> terms);
  static Expression product(std::vector<Expression> factors);
  static Expression power(Expression base, int exponent);
  static Expression quotient(Expression numerator, Expression denominator);

  Kind kind() const { return node_->kind; }
  const Rational& value() const { return node_->value; }
  AtomId atom() const { return node_->atom; }
  int exponent() const { return node_->exponent; }
  const std::vector<Expression>& children() const { return node_->children; }
  bool is_constant(const Rational& c) const { return kind() == Kind::Constant && value() == c; }

  friend Expression operator+(const Expression& a, const Expression& b) { return sum({a, b}); }
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b) { return product({a, b}); }
  friend Expression operator/(const Expression& a, const Expression& b) { return quotient(a, b); }
  Expression operator-() const;

 private:
  struct Node {
    Kind kind = Kind::Constant;
    Rational value;
    AtomId atom = 0;
    int exponent = 0;
    std::vector<Expression> children;
  };
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expression parse(std::string_view text, const SymbolTable& symbols);
std::string print(const Expression& e, const SymbolTable& symbols);
std::string print(const NormalForm& x, const SymbolTable& symbols);

Expression differentiate(const Expression& e, AtomId coordinate);
NormalForm normalize(const Expression& e);
/// Integer-coefficient numerator over denominator rendering of a normal form.
Expression to_expression(const NormalForm& x);

}  // namespace curvkit
