#include "curvkit/error.hpp"
#include "curvkit/evaluate.hpp"
#include "curvkit/expression.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace curvkit;

namespace {

SymbolTable symbols() { return SymbolTable({"x", "y"}, {"a"}, {{"f", {"x", "y"}}}); }

/// Random rational functions over x, y, a, f and exp(x - 2y), with
/// Laurent powers of f and a non-monomial denominator.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed), s_(symbols()) {
    atoms_ = {s_.coordinate_atom(0), s_.coordinate_atom(1), *s_.parameter_atom("a"), *s_.function_atom("f")};
    e_ = normalize(parse("exp(x - 2*y)", s_));
  }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  NormalForm poly(int terms, bool with_functions = true, bool with_exp = true) {
    NormalForm out;
    for (int t = 0; t < terms; ++t) {
      NormalForm m(Rational(integer(-9, 9)) / integer(1, 4));
      for (std::size_t k = 0; k < atoms_.size(); ++k) {
        if (k == 3 && !with_functions) continue;
        int p = k == 3 ? integer(-1, 2) : integer(0, 2);
        if (p != 0) m *= NormalForm::atom(atoms_[k]).pow(p);
      }
      if (with_exp && integer(0, 3) == 0) m *= e_.pow(integer(-1, 1));
      out += m;
    }
    if (out.is_zero()) out = NormalForm(1);
    return out;
  }

  NormalForm rational(bool with_functions = true, bool with_exp = true) {
    NormalForm num = poly(integer(1, 4), with_functions, with_exp);
    if (integer(0, 2) == 0) return num;
    NormalForm den = poly(2, with_functions, with_exp) + NormalForm(integer(1, 5));
    if (den.is_zero()) return num;
    return num / den;
  }

  const SymbolTable& table() const { return s_; }
  AtomId x() const { return atoms_[0]; }
  AtomId y() const { return atoms_[1]; }
  AtomId a() const { return atoms_[2]; }

 private:
  std::mt19937_64 rng_;
  SymbolTable s_;
  std::vector<AtomId> atoms_;
  NormalForm e_;
};

constexpr int kCases = 60;

}  // namespace

TEST(NormalFormProperty, FieldAxioms) {
  Gen gen(11);
  for (int i = 0; i < kCases; ++i) {
    NormalForm p = gen.rational(), q = gen.rational(), r = gen.rational();
    EXPECT_TRUE(equal(p + q, q + p));
    EXPECT_TRUE(equal(p * q, q * p));
    EXPECT_TRUE(equal((p + q) + r, p + (q + r)));
    EXPECT_TRUE(equal((p * q) * r, p * (q * r)));
    EXPECT_TRUE(equal(p * (q + r), p * q + p * r));
    EXPECT_TRUE((p - p).is_zero());
    if (!q.is_zero()) {
      EXPECT_TRUE(equal((p * q) / q, p));
      EXPECT_TRUE(equal(q * q.inverse(), NormalForm(1)));
    }
  }
}

TEST(NormalFormProperty, PrintParseRoundTrip) {
  Gen gen(12);
  for (int i = 0; i < kCases; ++i) {
    NormalForm p = gen.rational();
    std::string text = print(p, gen.table());
    EXPECT_TRUE(equal(normalize(parse(text, gen.table())), p)) << text;
  }
}

TEST(NormalFormProperty, LeibnizAndQuotientRules) {
  Gen gen(13);
  for (int i = 0; i < kCases; ++i) {
    NormalForm p = gen.rational(), q = gen.rational();
    for (AtomId c : {gen.x(), gen.y()}) {
      EXPECT_TRUE(equal((p * q).derivative(c), p.derivative(c) * q + p * q.derivative(c)));
      if (!q.is_zero())
        EXPECT_TRUE(equal((p / q).derivative(c), (p.derivative(c) * q - p * q.derivative(c)) / (q * q)));
    }
    EXPECT_TRUE(equal(p.derivative(gen.x()).derivative(gen.y()), p.derivative(gen.y()).derivative(gen.x())));
  }
}

TEST(NormalFormProperty, EvaluationIsAHomomorphism) {
  Gen gen(14);
  std::map<AtomId, long double> at{{gen.x(), 0.3L}, {gen.y(), -0.7L}, {gen.a(), 1.25L}};
  for (int i = 0; i < kCases; ++i) {
    NormalForm p = gen.rational(false), q = gen.rational(false);
    long double vp = evaluate_numeric(p, at), vq = evaluate_numeric(q, at);
    EXPECT_NEAR(static_cast<double>(evaluate_numeric(p + q, at)), static_cast<double>(vp + vq),
                1e-9 * (1 + std::fabs(static_cast<double>(vp + vq))));
    EXPECT_NEAR(static_cast<double>(evaluate_numeric(p * q, at)), static_cast<double>(vp * vq),
                1e-9 * (1 + std::fabs(static_cast<double>(vp * vq))));
  }
}

TEST(NormalFormProperty, DerivativeMatchesCentralDifference) {
  Gen gen(15);
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const long double h = 1e-4L;
  int checked = 0;
  for (int i = 0; i < kCases; ++i) {
    NormalForm p = gen.rational(false);
    std::map<AtomId, long double> at{{gen.x(), coord(rng)}, {gen.y(), coord(rng)}, {gen.a(), coord(rng)}};
    if (std::fabs(evaluate_numeric(p, at)) > 100) continue;  // near a pole
    for (AtomId c : {gen.x(), gen.y()}) {
      auto shifted = [&](long double k) {
        auto v = at;
        v[c] += k * h;
        return evaluate_numeric(p, v);
      };
      long double fd = (8 * (shifted(1) - shifted(-1)) - shifted(2) + shifted(-2)) / (12 * h);
      long double exact = evaluate_numeric(p.derivative(c), at);
      EXPECT_NEAR(static_cast<double>(fd), static_cast<double>(exact), 1e-6 * (1 + std::fabs(static_cast<double>(exact))))
          << print(p, gen.table());
      ++checked;
    }
  }
  EXPECT_GT(checked, kCases);
}

TEST(NormalFormProperty, SubstitutionCommutesWithArithmetic) {
  Gen gen(16);
  for (int i = 0; i < kCases; ++i) {
    NormalForm p = gen.rational(), q = gen.rational();
    AtomId f = *gen.table().function_atom("f");
    std::map<AtomId, NormalForm> sub{{gen.x(), NormalForm(gen.integer(2, 5))},
                                     {gen.a(), NormalForm::atom(gen.y())},
                                     {f, NormalForm::atom(gen.y()) + NormalForm(gen.integer(1, 3))}};
    try {
      EXPECT_TRUE(equal((p * q).substitute(sub), p.substitute(sub) * q.substitute(sub)));
      EXPECT_TRUE(equal((p + q).substitute(sub), p.substitute(sub) + q.substitute(sub)));
    } catch (const DivisionByZero&) {
      // the substitution hit a pole of p or q
    }
  }
}

TEST(NormalForm, SubstituteIntoLaurentTerms) {
  auto s = symbols();
  NormalForm p = normalize(parse("y + x/f", s));
  NormalForm v = normalize(parse("x^2 + 1", s));
  NormalForm got = p.substitute({{*s.function_atom("f"), v}});
  EXPECT_TRUE(equal(got, normalize(parse("y + x/(x^2 + 1)", s)))) << print(got, s);
}

TEST(Poly, ExactDivision) {
  Gen gen(17);
  for (int i = 0; i < kCases; ++i) {
    Poly p = gen.poly(3).numerator(), q = gen.poly(2).numerator();
    auto back = (p * q).divide_exact(q);
    ASSERT_TRUE(back.has_value());
    EXPECT_TRUE(*back == p);
  }
  auto s = symbols();
  Poly x2 = normalize(parse("x^2 + 1", s)).numerator();
  Poly x1 = normalize(parse("x + 1", s)).numerator();
  EXPECT_FALSE(x2.divide_exact(x1).has_value());
  EXPECT_FALSE(x1.divide_exact(x2).has_value());
}

TEST(Poly, PrimitiveSplit) {
  auto s = symbols();
  Poly p = normalize(parse("6*x^2*f^-1*y + 4*x*f^-1", s)).numerator();
  PrimitiveSplit split = primitive_split(p);
  EXPECT_EQ(split.coeff, 6);
  EXPECT_TRUE(equal(NormalForm(split.primitive), normalize(parse("x*y + 2/3", s))));
  EXPECT_EQ(split.primitive.lead().coeff, 1);
}

TEST(NormalForm, Errors) {
  Gen gen(18);
  EXPECT_THROW(NormalForm(1) / NormalForm(0), DivisionByZero);
  EXPECT_THROW(NormalForm(0).inverse(), DivisionByZero);
  EXPECT_THROW(NormalForm(0).pow(-2), DivisionByZero);
  NormalForm p = normalize(parse("1/(x - y)", gen.table()));
  EXPECT_THROW(p.substitute({{gen.x(), NormalForm::atom(gen.y())}}), DivisionByZero);
}
