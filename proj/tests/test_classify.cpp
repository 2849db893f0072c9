#include "curvkit/catalog.hpp"
#include "curvkit/error.hpp"

#include <gtest/gtest.h>

using namespace curvkit;
using nlohmann::json;

namespace {

Classifier classifier(const std::string& id, std::uint64_t seed = 7) {
  ClassifyOptions o;
  o.seed = seed;
  return load(id).classifier(o);
}

}  // namespace

TEST(Solve, UniqueSolution) {
  Classifier c = classifier("plane-wave");
  LinearSystem s;
  s.unknowns = {"u", "v"};
  s.add({NormalForm(1), NormalForm(0)}, c.parse("a1"), "first");
  s.add({c.parse("x3"), c.parse("x4")}, c.parse("a1*x3 + a2*x4"), "second");
  s.add({NormalForm(0), NormalForm(0)}, NormalForm(0), "empty");
  EXPECT_EQ(s.rows.size(), 2u);
  SystemSolution sol = c.solve(s);
  ASSERT_TRUE(sol.consistent);
  EXPECT_TRUE(sol.free.empty());
  EXPECT_TRUE(equal(sol.values[0], c.parse("a1")));
  EXPECT_TRUE(equal(sol.values[1], c.parse("a2")));
  EXPECT_EQ(sol.evidence, Evidence::Symbolic);
  EXPECT_FALSE(c.residual(s, sol.values).has_value());
  EXPECT_EQ(c.residual(s, {c.parse("a1"), c.parse("a1")}).value_or(""), "second");
}

TEST(Solve, Inconsistent) {
  Classifier c = classifier("plane-wave");
  LinearSystem s;
  s.unknowns = {"u"};
  s.add({c.parse("x3")}, c.parse("x3"), "one");
  s.add({c.parse("x4")}, c.parse("2*x4"), "two");
  SystemSolution sol = c.solve(s);
  EXPECT_FALSE(sol.consistent);
  EXPECT_FALSE(sol.contradiction.empty());
}

TEST(Solve, FreeUnknowns) {
  Classifier c = classifier("plane-wave");
  LinearSystem s;
  s.unknowns = {"u", "v"};
  s.add({NormalForm(1), NormalForm(1)}, c.parse("a3"), "sum");
  SystemSolution sol = c.solve(s);
  ASSERT_TRUE(sol.consistent);
  ASSERT_EQ(sol.free.size(), 1u);
  EXPECT_FALSE(c.residual(s, sol.values).has_value());
}

TEST(Verdicts, FlatSpace) {
  Classifier c = classifier("minkowski");
  EXPECT_EQ(c.parallel("flat", "R").status, Status::Holds);
  EXPECT_EQ(c.recurrent("recurrent", "R").status, Status::Vacuous);
  EXPECT_EQ(c.zero("flat", "R").status, Status::Holds);
  EXPECT_EQ(c.nonzero("curved", "R").status, Status::Fails);
}

TEST(Verdicts, WitnessForFailure) {
  Classifier c = classifier("pp-wave");
  Verdict v = c.zero("ricci-flat", "S");
  EXPECT_EQ(v.status, Status::Fails);
  EXPECT_EQ(v.witness["tensor"], "S");
  EXPECT_EQ(v.witness["component"], "11");
  EXPECT_EQ(c.zero("semisymmetric", "act(R,R)").status, Status::Holds);
  Verdict n = c.nonzero("curved", "R");
  EXPECT_EQ(n.status, Status::Holds);
  EXPECT_TRUE(n.witness.contains("component"));
}

TEST(Verdicts, ConstantCurvatureIsEinstein) {
  Classifier c = classifier("constant-curvature");
  Verdict v = c.ein_k("einstein", 1);
  EXPECT_TRUE(v.holds()) << c.report(v).dump();
  EXPECT_EQ(c.zero("conformally-flat", "C").status, Status::Holds);
  EXPECT_EQ(c.parallel("locally-symmetric", "R").status, Status::Holds);
}

TEST(Verdicts, RecurrenceFormFound) {
  Classifier c = classifier("sippel-goenner");
  Verdict v = c.recurrent("recurrent", "R");
  ASSERT_TRUE(v.holds());
  EXPECT_TRUE(c.run("r", {{"recurrent", "R"}, {"expected", {"0", "0", "a2", "-a3"}}}).holds());
  EXPECT_EQ(c.run("r", {{"recurrent", "R"}, {"expected", {"0", "0", "2*a2", "-2*a3"}}}).status, Status::Fails);
}

TEST(Operators, CurvatureActionProperties) {
  for (const char* id : {"pp-wave", "robinson-trautman"}) {
    Classifier c = classifier(id);
    EXPECT_TRUE(c.tensor("act(R,g)").is_zero()) << id;
    EXPECT_TRUE(c.tensor("Q(g,g)").is_zero()) << id;
    EXPECT_TRUE(c.tensor("Q(S,g)").is_zero() == c.tensor("Q(g,S)").is_zero()) << id;
    for (const char* name : {"act(R,R)", "Q(S,R)", "Q(g,S)"}) {
      const Tensor& t = c.tensor(name);
      EXPECT_TRUE(is_antisymmetric(t, t.rank() - 2, t.rank() - 1)) << id << " " << name;
    }
  }
}

TEST(Run, Errors) {
  Classifier c = classifier("pp-wave");
  EXPECT_THROW(c.run("x", {{"no_such_check", "R"}}), InputError);
  EXPECT_THROW(c.run("x", {{"zero", "Z"}}), InputError);
  EXPECT_THROW(c.run("x", {{"zero", "act(R)"}}), InputError);
  EXPECT_THROW(c.run("x", {{"chaki", {{"eta", {"1", "0"}}}}}), InputError);
  EXPECT_THROW(c.tensor("div(kappa)"), InputError);
  EXPECT_THROW(c.parse("undefined_symbol + 1"), ParseError);
}

TEST(Run, Combinators) {
  Classifier c = classifier("pp-wave");
  EXPECT_EQ(c.run("x", {{"all", {{{"zero", "act(R,R)"}}, {{"zero", "S"}}}}}).status, Status::Fails);
  EXPECT_TRUE(c.run("x", {{"any", {{{"zero", "act(R,R)"}}, {{"zero", "S"}}}}}).holds());
  EXPECT_TRUE(c.run("x", {{"not", {{"zero", "S"}}}}).holds());
}

TEST(Determinism, SameSeedSameReport) {
  json check = {{"quasi_einstein", {{"rank", 2}, {"alpha", "(f3^2 + f4^2 - f*f33 - f*f44)/f^3"}}}};
  Classifier a = classifier("gppwave"), b = classifier("gppwave");
  EXPECT_EQ(a.report(a.run("q", check)).dump(), b.report(b.run("q", check)).dump());
  json weak = {{"weakly_symmetric", "R"}};
  Classifier p = classifier("pp-wave"), q = classifier("pp-wave");
  Verdict vp = p.run("w", weak), vq = q.run("w", weak);
  EXPECT_EQ(p.report(vp).dump(), q.report(vq).dump());
  Classifier other = classifier("pp-wave", 99);
  Verdict vo = other.run("w", weak);
  EXPECT_EQ(vo.status, vp.status);
  EXPECT_NE(vo.samples, vp.samples);
}

TEST(Status, StringRoundTrip) {
  for (Status s : {Status::Holds, Status::HoldsWithSolution, Status::HoldsNumeric, Status::Fails, Status::Vacuous})
    EXPECT_EQ(status_from_string(to_string(s)), s);
  EXPECT_THROW(status_from_string("maybe"), InputError);
}
