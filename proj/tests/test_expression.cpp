#include "curvkit/error.hpp"
#include "curvkit/evaluate.hpp"
#include "curvkit/expression.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace curvkit;

namespace {

SymbolTable pp_symbols() {
  return SymbolTable({"x", "r", "x3", "x4"}, {"a", "b"},
                     {{"h", {"x", "x3", "x4"}}, {"f", {"x3", "x4"}}, {"H", {"x", "x3", "x4"}}});
}

NormalForm nf(const std::string& text, const SymbolTable& s) { return normalize(parse(text, s)); }

}  // namespace

TEST(Parse, LiteralTrees) {
  auto s = pp_symbols();
  Expression e = parse("-2*h(x,x3,x4)", s);
  ASSERT_EQ(e.kind(), Expression::Kind::Product);
  ASSERT_EQ(e.children().size(), 2u);
  EXPECT_TRUE(e.children()[0].is_constant(-2));
  EXPECT_EQ(e.children()[1].kind(), Expression::Kind::FunctionAtom);
  EXPECT_EQ(e.children()[1].atom(), *s.function_atom("h"));

  Expression x = parse("exp(x + x3 - x4)", s);
  ASSERT_EQ(x.kind(), Expression::Kind::Exp);
  EXPECT_TRUE(equal(normalize(x.children()[0]), nf("x + x3 - x4", s)));

  Expression q = parse("(-f3^2 - f4^2 + f*f33 + f*f44)/(4*f)", s);
  EXPECT_EQ(q.kind(), Expression::Kind::Quotient);
}

TEST(Parse, Errors) {
  auto s = pp_symbols();
  try {
    parse("x3 + * x4", s);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse("q + 1", s), ParseError);
  EXPECT_THROW(parse("g(x)", s), ParseError);
  EXPECT_THROW(parse("h(x, r)", s), ParseError);
  EXPECT_THROW(parse("(x + 1", s), ParseError);
  EXPECT_THROW(parse("x^y", s), ParseError);
  EXPECT_THROW(parse("exp(f)", s), ParseError);
  EXPECT_THROW(parse("2x", s), ParseError);
  EXPECT_THROW(parse("", s), ParseError);
}

TEST(Parse, DerivativeAtoms) {
  auto s = pp_symbols();
  EXPECT_TRUE(equal(nf("h34", s), nf("h43", s)));
  EXPECT_TRUE(nf("f1", s).is_zero());
  EXPECT_TRUE(nf("h2", s).is_zero());
  AtomId x3 = s.coordinate_atom(2);
  AtomId x4 = s.coordinate_atom(3);
  EXPECT_TRUE(equal(normalize(differentiate(parse("h", s), x3)), nf("h3", s)));
  EXPECT_TRUE(equal(normalize(differentiate(parse("h34", s), x3)), nf("h334", s)));
  EXPECT_EQ(print(differentiate(parse("h43", s), x4), s), "h344");
}

TEST(Normalize, Cancellation) {
  auto s = pp_symbols();
  EXPECT_TRUE(nf("f*f33/f - f33", s).is_zero());
  EXPECT_TRUE(nf("exp(x3 + a*x4)*exp(x3 + a*x4) - exp(2*x3 + 2*a*x4)", s).is_zero());
  EXPECT_TRUE(nf("(f3^2 - f4^2)/(f3 - f4) - f3 - f4", s).is_zero());
  EXPECT_TRUE(nf("1/(f + 1) + 1/(f - 1) - 2*f/(f^2 - 1)", s).is_zero());
  EXPECT_THROW(nf("x/(f - f)", s), DivisionByZero);
}

TEST(Normalize, ScalarCurvatureForm) {
  auto s = pp_symbols();
  NormalForm k = nf("2*(f3^2 + f4^2 - f*(f33 + f44))/f^3", s);
  NormalForm alt = nf("2*f3^2/f^3 + 2*f4^2/f^3 - 2*f33/f^2 - 2*f44/f^2", s);
  EXPECT_TRUE(equal(k, alt));
}

TEST(Print, RoundTrip) {
  auto s = pp_symbols();
  for (const char* text : {"-2*h(x,x3,x4)", "exp(x + x3 - x4)", "(-f3^2 - f4^2 + f*f33 + f*f44)/(4*f)",
                           "x^2 - 1/2*a", "1/(f + 1)^2 - h3*exp(-a*x3)/f^3", "-(x - r)/(3*(f - 2))"}) {
    Expression e = parse(text, s);
    std::string p = print(e, s);
    EXPECT_TRUE(equal(normalize(parse(p, s)), normalize(e))) << text << " -> " << p;
    std::string q = print(normalize(e), s);
    EXPECT_TRUE(equal(normalize(parse(q, s)), normalize(e))) << text << " -> " << q;
  }
}

TEST(Evaluate, Basics) {
  auto s = pp_symbols();
  AtomId x = s.coordinate_atom(0);
  Binding b;
  b.set(x, Rational(2));
  auto v = evaluate(parse("x^2 + 1", s), b);
  ASSERT_TRUE(v.is_exact());
  EXPECT_EQ(*v.exact, 5);
  b.set(x, Rational(0));
  v = evaluate(parse("exp(x)", s), b);
  ASSERT_TRUE(v.is_exact());
  EXPECT_EQ(*v.exact, 1);
  b.set(x, Rational(1));
  v = evaluate(parse("exp(x)", s), b);
  EXPECT_FALSE(v.is_exact());
  EXPECT_NEAR(static_cast<double>(v.approx), std::exp(1.0), 1e-15);
  b.set(x, Rational(1));
  EXPECT_THROW(evaluate(parse("1/(x - 1)", s), b), DivisionByZero);
  EXPECT_THROW(evaluate(parse("r", s), b), InputError);
}

TEST(Instantiate, Examples) {
  auto s = pp_symbols();
  Binding b;
  b.instantiate(*s.function_atom("h"), nf("x3^3", s));
  EXPECT_TRUE(equal(normalize(instantiate(parse("h33", s), b)), nf("6*x3", s)));

  Binding e;
  e.instantiate(*s.function_atom("f"), nf("exp(a*x3)", s));
  EXPECT_TRUE(normalize(instantiate(parse("f*f33 - f3^2", s), e)).is_zero());

  Binding m;
  m.instantiate(*s.function_atom("h"), nf("-H/2", s));
  EXPECT_TRUE(equal(normalize(instantiate(parse("h34", s), m)), nf("-H34/2", s)));

  EXPECT_THROW(instantiate(parse("f*h", s), b), InputError);
  Binding bad;
  bad.instantiate(*s.function_atom("f"), nf("x", s));
  EXPECT_THROW(instantiate(parse("f", s), bad), InputError);
}
