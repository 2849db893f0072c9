#include "curvkit/report.hpp"

#include "curvkit/error.hpp"

#include <algorithm>
#include <map>

namespace curvkit {

using nlohmann::json;

std::string tensor_name(const std::string& alias) {
  static const std::map<std::string, std::string> m = {
      {"metric", "g"},       {"riemann", "R"},      {"ricci", "S"},      {"scalar", "kappa"},
      {"conformal", "C"},    {"weyl", "C"},         {"concircular", "W"}, {"conharmonic", "K"},
      {"gaussian", "G"},     {"projective", "P"},   {"energy-momentum", "T"},
      {"riemann-squared", "D"}};
  auto it = m.find(alias);
  return it == m.end() ? alias : it->second;
}

json tensor_components(Classifier& c, const std::string& name) {
  const Tensor& t = c.tensor(name);
  bool derivative = name.rfind("d(", 0) == 0;
  json out = json::object();
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t.flat(k).is_zero()) continue;
    std::string label = component_label(t.unflatten(k));
    if (derivative && label.size() > 1) label.insert(label.size() - 1, ",");
    out[label] = c.print(t.flat(k));
  }
  return out;
}

json table_report(const TableResult& r) {
  json mismatches = json::array();
  for (const auto& m : r.mismatches)
    mismatches.push_back({{"component", m.component},
                          {"engine", m.engine},
                          {"expected", m.expected},
                          {"vanishes_modulo", m.vanishes_modulo}});
  return {{"table", r.name},
          {"tensor", r.tensor},
          {"listed", r.listed},
          {"corrected", r.corrected},
          {"pass", r.pass()},
          {"pass_modulo", r.pass_modulo()},
          {"mismatches", mismatches}};
}

json check_report(const CatalogEntry& e, Classifier& c, const CheckRequest& req) {
  if (!req.suite.empty() && !e.suites.contains(req.suite))
    throw InputError("'" + e.id + "' has no suite '" + req.suite + "'");
  bool ok = true;
  json report = {{"metric", e.id},
                 {"seed", c.options().seed},
                 {"tables", json::array()},
                 {"suites", json::object()}};
  if (req.suite.empty()) {
    for (auto it = e.tables.begin(); it != e.tables.end(); ++it) {
      TableResult r = check_table(c, it.key(), it.value(), req.corrected);
      ok = ok && r.pass();
      report["tables"].push_back(table_report(r));
    }
    if (!e.reduction.is_null()) {
      Verdict v = reduction_check(e);
      ok = ok && v.holds();
      report["reduction"] = c.report(v);
    }
  }
  if (!req.tables_only) {
    for (auto it = e.suites.begin(); it != e.suites.end(); ++it) {
      if (!req.suite.empty() && it.key() != req.suite) continue;
      json items = json::array();
      for (const auto& r : run_suite(c, it.key(), it.value())) {
        ok = ok && r.pass;
        json j = c.report(r.verdict);
        j["id"] = r.id;
        j["expected"] = to_string(r.expected);
        j["pass"] = r.pass;
        items.push_back(j);
      }
      report["suites"][it.key()] = items;
    }
  }
  report["pass"] = ok;
  return report;
}

json compare_report(const std::string& first, const std::string& second, const ClassifyOptions& options) {
  CatalogEntry x = load(first);
  CatalogEntry y = load(second);
  Classifier cx = x.classifier(options);
  Classifier cy = y.classifier(options);
  json out = to_json(compare(cx, cy));
  bool ok = true;
  for (const auto& p : comparison_profile().value("pairs", json::array())) {
    if (p.at("first") != first || p.at("second") != second) continue;
    json missing = json::array();
    for (const char* group : {"similarities", "dissimilarities"})
      for (const auto& s : p.value(group, json::array())) {
        const json& got = out[group];
        if (std::find(got.begin(), got.end(), s) == got.end()) missing.push_back({{"structure", s}, {"group", group}});
      }
    out["expected"] = {{"similarities", p.value("similarities", json::array())},
                       {"dissimilarities", p.value("dissimilarities", json::array())},
                       {"missing", missing}};
    ok = missing.empty();
  }
  out["pass"] = ok;
  return out;
}

}  // namespace curvkit
