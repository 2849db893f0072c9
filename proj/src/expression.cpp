#include "curvkit/expression.hpp"

#include "curvkit/error.hpp"

#include <algorithm>

namespace curvkit {

Expression::Expression(const Rational& value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->value = value;
  node->value.canonicalize();
  node_ = std::move(node);
}

Expression Expression::symbol(AtomId atom) {
  auto node = std::make_shared<Node>();
  node->kind = atom_info(atom).kind == AtomKind::Function ? Kind::FunctionAtom : Kind::Symbol;
  node->atom = atom;
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::exp(Expression exponent) {
  if (exponent.is_constant(0)) return Expression(1);
  auto node = std::make_shared<Node>();
  node->kind = Kind::Exp;
  node->children.push_back(std::move(exponent));
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::sum(std::vector<Expression> terms) {
  std::vector<Expression> flat;
  Rational constant = 0;
  for (auto& t : terms) {
    if (t.kind() == Kind::Sum) {
      for (const auto& c : t.children()) {
        if (c.kind() == Kind::Constant)
          constant += c.value();
        else
          flat.push_back(c);
      }
    } else if (t.kind() == Kind::Constant) {
      constant += t.value();
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (constant != 0) flat.emplace_back(constant);
  if (flat.empty()) return Expression(0);
  if (flat.size() == 1) return flat.front();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sum;
  node->children = std::move(flat);
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::product(std::vector<Expression> factors) {
  std::vector<Expression> flat;
  Rational constant = 1;
  for (auto& f : factors) {
    if (f.kind() == Kind::Product) {
      for (const auto& c : f.children()) {
        if (c.kind() == Kind::Constant)
          constant *= c.value();
        else
          flat.push_back(c);
      }
    } else if (f.kind() == Kind::Constant) {
      constant *= f.value();
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (constant == 0) return Expression(0);
  if (flat.empty()) return Expression(constant);
  if (constant == 1 && flat.size() == 1) return flat.front();
  if (constant != 1) flat.insert(flat.begin(), Expression(constant));
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->children = std::move(flat);
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::power(Expression base, int exponent) {
  if (exponent == 0) return Expression(1);
  if (exponent == 1) return base;
  if (base.kind() == Kind::Constant) {
    if (base.value() == 0) {
      if (exponent < 0) throw DivisionByZero("division by zero");
      return Expression(0);
    }
    Rational r = 1;
    for (int i = 0; i < std::abs(exponent); ++i) r *= base.value();
    if (exponent < 0) r = 1 / r;
    return Expression(r);
  }
  if (base.kind() == Kind::Power) return power(base.children().front(), base.exponent() * exponent);
  auto node = std::make_shared<Node>();
  node->kind = Kind::Power;
  node->exponent = exponent;
  node->children.push_back(std::move(base));
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::quotient(Expression numerator, Expression denominator) {
  if (denominator.is_constant(0)) throw DivisionByZero("division by zero");
  if (numerator.is_constant(0)) return Expression(0);
  if (denominator.is_constant(1)) return numerator;
  if (denominator.kind() == Kind::Constant && (numerator.kind() != Kind::Sum || denominator.value() < 0))
    return product({Expression(1 / denominator.value()), numerator});
  auto node = std::make_shared<Node>();
  node->kind = Kind::Quotient;
  node->children = {std::move(numerator), std::move(denominator)};
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::operator-() const {
  if (kind() == Kind::Constant) return Expression(-value());
  return product({Expression(-1), *this});
}

Expression operator-(const Expression& a, const Expression& b) { return Expression::sum({a, -b}); }

Expression differentiate(const Expression& e, AtomId coordinate) {
  using Kind = Expression::Kind;
  switch (e.kind()) {
    case Kind::Constant:
      return Expression(0);
    case Kind::Symbol:
      return Expression(e.atom() == coordinate ? 1 : 0);
    case Kind::FunctionAtom: {
      auto d = AtomTable::instance().derivative(e.atom(), coordinate);
      return d ? Expression::symbol(*d) : Expression(0);
    }
    case Kind::Exp:
      return Expression::product({e, differentiate(e.children().front(), coordinate)});
    case Kind::Sum: {
      std::vector<Expression> terms;
      for (const auto& c : e.children()) terms.push_back(differentiate(c, coordinate));
      return Expression::sum(std::move(terms));
    }
    case Kind::Product: {
      std::vector<Expression> terms;
      const auto& f = e.children();
      for (std::size_t i = 0; i < f.size(); ++i) {
        Expression d = differentiate(f[i], coordinate);
        if (d.is_constant(0)) continue;
        std::vector<Expression> factors = f;
        factors[i] = d;
        terms.push_back(Expression::product(std::move(factors)));
      }
      return Expression::sum(std::move(terms));
    }
    case Kind::Power: {
      const Expression& b = e.children().front();
      return Expression::product(
          {Expression(e.exponent()), Expression::power(b, e.exponent() - 1), differentiate(b, coordinate)});
    }
    case Kind::Quotient: {
      const Expression& a = e.children()[0];
      const Expression& b = e.children()[1];
      Expression top = differentiate(a, coordinate) * b - a * differentiate(b, coordinate);
      if (top.is_constant(0)) return Expression(0);
      return Expression::quotient(top, Expression::power(b, 2));
    }
  }
  return Expression(0);
}

NormalForm normalize(const Expression& e) {
  using Kind = Expression::Kind;
  switch (e.kind()) {
    case Kind::Constant:
      return NormalForm(e.value());
    case Kind::Symbol:
    case Kind::FunctionAtom:
      return NormalForm::atom(e.atom());
    case Kind::Exp: {
      NormalForm u = normalize(e.children().front());
      if (!u.is_polynomial()) throw InputError("exp exponent must be polynomial in coordinates and parameters");
      return NormalForm(Poly::from_term(exp_monomial(to_exponent(u.numerator())), 1));
    }
    case Kind::Sum: {
      NormalForm acc;
      for (const auto& c : e.children()) acc += normalize(c);
      return acc;
    }
    case Kind::Product: {
      NormalForm acc(1);
      for (const auto& c : e.children()) {
        acc *= normalize(c);
        if (acc.is_zero()) break;
      }
      return acc;
    }
    case Kind::Power:
      return normalize(e.children().front()).pow(e.exponent());
    case Kind::Quotient:
      return normalize(e.children()[0]) / normalize(e.children()[1]);
  }
  return NormalForm();
}

namespace {

Expression power_product_expression(const PowerProduct& pp) {
  std::vector<Expression> factors;
  for (const auto& [atom, k] : pp) factors.push_back(Expression::power(Expression::symbol(atom), k));
  return Expression::product(std::move(factors));
}

Expression monomial_expression(const Monomial& m) {
  Expression pp = power_product_expression(m.powers);
  if (m.exponent.empty()) return pp;
  std::vector<Expression> parts;
  for (const auto& [p, c] : m.exponent) parts.push_back(Expression::product({Expression(c), power_product_expression(p)}));
  return Expression::product({pp, Expression::exp(Expression::sum(std::move(parts)))});
}

Expression poly_expression(const Poly& p) {
  std::vector<Expression> terms;
  for (const auto& t : p.terms()) terms.push_back(Expression::product({Expression(t.coeff), monomial_expression(t.monomial)}));
  return Expression::sum(std::move(terms));
}

mpz_class denominator_lcm(const Poly& p) {
  mpz_class l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l;
}

mpz_class numerator_gcd(const Poly& p) {
  mpz_class g = 0;
  for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  return g;
}

}  // namespace

Expression to_expression(const NormalForm& x) {
  if (x.is_zero()) return Expression(0);
  Rational scale = 1;
  std::vector<Expression> den;
  for (const auto& f : x.denominator()) {
    mpz_class l = denominator_lcm(f.poly);
    Poly scaled = f.poly.scaled(Rational(l));
    mpz_class g = numerator_gcd(scaled);
    Poly integral = scaled.scaled(Rational(1, 1) / Rational(g));
    Rational ratio = Rational(l) / Rational(g);
    for (int i = 0; i < f.multiplicity; ++i) scale *= ratio;
    den.push_back(Expression::power(poly_expression(integral), f.multiplicity));
  }
  Poly num = x.numerator().scaled(scale);
  Monomial lift = num.min_powers();
  PowerProduct shift;
  for (const auto& [atom, k] : lift.powers)
    if (k < 0) shift.emplace_back(atom, -k);
  Monomial m;
  m.powers = shift;
  for (const auto& [a, k] : shift) m.degree += k;
  num = num.times(m);
  mpz_class l = denominator_lcm(num);
  num = num.scaled(Rational(l));
  std::vector<Expression> den_factors;
  if (l != 1) den_factors.emplace_back(Rational(l));
  if (!shift.empty()) den_factors.push_back(power_product_expression(shift));
  for (auto& d : den) den_factors.push_back(std::move(d));
  Expression top = poly_expression(num);
  if (den_factors.empty()) return top;
  return Expression::quotient(top, Expression::product(std::move(den_factors)));
}

}  // namespace curvkit
