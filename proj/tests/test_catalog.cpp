#include "curvkit/catalog.hpp"
#include "curvkit/error.hpp"
#include "curvkit/report.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace curvkit;
using nlohmann::json;

namespace {

std::set<std::string> failing(const CatalogEntry& e, bool corrected) {
  Classifier c = e.classifier();
  std::set<std::string> out;
  for (auto it = e.tables.begin(); it != e.tables.end(); ++it)
    if (!check_table(c, it.key(), it.value(), corrected).pass()) out.insert(it.key());
  return out;
}

}  // namespace

TEST(Catalog, ListsEveryEntry) {
  auto ids = catalog_ids();
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  for (const char* id : {"gppwave", "pp-wave", "brinkmann", "sippel-goenner", "plane-wave", "codazzi-example",
                         "robinson-trautman", "minkowski", "constant-curvature"})
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
  EXPECT_THROW(load("no-such-metric"), InputError);
}

TEST(Catalog, DefinitionRoundTrip) {
  for (const auto& id : catalog_ids()) {
    CatalogEntry e = load(id);
    json first = to_json(e.definition);
    CatalogEntry again = load_definition(first);
    EXPECT_EQ(to_json(again.definition), first) << id;
    ASSERT_EQ(again.metric->dim(), e.metric->dim());
    for (std::size_t i = 0; i < e.metric->dim(); ++i)
      for (std::size_t j = 0; j < e.metric->dim(); ++j) EXPECT_TRUE(equal(again.metric->g(i, j), e.metric->g(i, j)));
  }
}

TEST(Catalog, LorentzianAtSamplePoints) {
  for (const auto& id : catalog_ids()) {
    CatalogEntry e = load(id);
    Classifier c = e.classifier();
    const Metric& m = *e.metric;
    int checked = 0;
    for (const SamplePoint& p : c.samples()) {
      Matrix<NormalForm> g(m.dim());
      for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) g[i].push_back(p(m.g(i, j)));
      Binding none;
      Metric at(m.symbols(), g);
      Signature s = signature_at(at, none);
      if (id == "constant-curvature") {
        EXPECT_EQ(s.positive + s.negative, 4) << id;
      } else {
        EXPECT_TRUE(s.lorentzian()) << id << " " << s.positive << "/" << s.negative;
      }
      ++checked;
    }
    EXPECT_EQ(checked, 15) << id;
  }
}

TEST(Catalog, SuitesPassForEveryEntry) {
  for (const auto& id : catalog_ids()) {
    CatalogEntry e = load(id);
    Classifier c = e.classifier();
    for (auto it = e.suites.begin(); it != e.suites.end(); ++it)
      for (const ItemResult& r : run_suite(c, it.key(), it.value()))
        EXPECT_TRUE(r.pass) << id << "/" << r.suite << "/" << r.id << ": " << to_string(r.verdict.status);
  }
}

TEST(Tables, ReferenceEntriesMatchExactly) {
  for (const char* id : {"pp-wave", "brinkmann", "plane-wave", "codazzi-example", "minkowski", "constant-curvature"})
    EXPECT_TRUE(failing(load(id), false).empty()) << id;
}

TEST(Tables, GeneralizedWaveCorrections) {
  CatalogEntry e = load("gppwave");
  EXPECT_EQ(failing(e, false), (std::set<std::string>{"conformal", "projective", "energy-momentum-codazzi",
                                                      "energy-momentum-derivative"}));
  EXPECT_EQ(failing(e, true), (std::set<std::string>{"conformal", "projective"}));
  Classifier c = e.classifier();
  for (const char* name : {"conformal", "projective"}) {
    TableResult r = check_table(c, name, e.tables[name]);
    EXPECT_FALSE(r.pass());
    EXPECT_TRUE(r.pass_modulo()) << name;
  }
  TableResult codazzi = check_table(c, "energy-momentum-codazzi", e.tables["energy-momentum-codazzi"]);
  std::set<std::string> wrong;
  for (const auto& m : codazzi.mismatches) wrong.insert(m.component);
  EXPECT_EQ(wrong, (std::set<std::string>{"123", "124", "132", "142"}));
  EXPECT_EQ(check_table(c, "energy-momentum-codazzi", e.tables["energy-momentum-codazzi"], true).corrected, 2u);
}

TEST(Tables, ZeroOutsideListedComponents) {
  CatalogEntry e = load("plane-wave");
  Classifier c = e.classifier();
  json t = e.tables["ricci"];
  t["components"].erase("11");
  TableResult r = check_table(c, "ricci", t);
  ASSERT_EQ(r.mismatches.size(), 1u);
  EXPECT_EQ(r.mismatches[0].component, "11");
  EXPECT_EQ(r.mismatches[0].expected, "0");
}

TEST(Reduction, BrinkmannFromGeneralizedWave) {
  Verdict v = reduction_check(load("brinkmann"));
  EXPECT_EQ(v.status, Status::Holds) << v.witness.dump();
}

TEST(Report, Components) {
  CatalogEntry e = load("plane-wave");
  Classifier c = e.classifier();
  EXPECT_EQ(tensor_name("ricci"), "S");
  EXPECT_EQ(tensor_name("weyl"), "C");
  EXPECT_EQ(tensor_name("d(S)"), "d(S)");
  json s = tensor_components(c, "S");
  EXPECT_EQ(s, json({{"11", "2*a1 + 2*a2"}}));
  EXPECT_TRUE(tensor_components(c, "d(R)").empty());
  EXPECT_THROW(check_report(e, c, {"no-such-suite"}), InputError);
}

TEST(Report, ComparisonPairs) {
  ClassifyOptions o;
  json rt_gp = compare_report("robinson-trautman", "gppwave", o);
  EXPECT_TRUE(rt_gp["pass"].get<bool>()) << rt_gp.dump(1);
  json rt_pp = compare_report("robinson-trautman", "pp-wave", o);
  EXPECT_TRUE(rt_pp["pass"].get<bool>()) << rt_pp.dump(1);
  EXPECT_TRUE(rt_pp["expected"]["missing"].empty());
}

TEST(Catalog, MalformedDefinitions) {
  EXPECT_THROW(load_definition(json::array()), InputError);
  EXPECT_THROW(load_definition(json{{"coordinates", {"x", "y", "z"}}}), InputError);
  json bad = {{"coordinates", {"x", "y", "z"}}, {"metric", {{"1", "0"}, {"0", "1"}}}};
  EXPECT_THROW(load_definition(bad), InputError);
  json asym = {{"coordinates", {"x", "y", "z"}}, {"metric", {{"1", "x", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}}};
  EXPECT_THROW(load_definition(asym), InputError);
  json unknown = {{"coordinates", {"x", "y", "z"}}, {"metric", {{"1", "q", "0"}, {"q", "1", "0"}, {"0", "0", "1"}}}};
  EXPECT_THROW(load_definition(unknown), ParseError);
  EXPECT_THROW(load_file("/nonexistent/metric.json"), InputError);
}
