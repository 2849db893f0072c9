#include "curvkit/error.hpp"
#include "curvkit/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace curvkit;

namespace {

struct Common {
  std::uint64_t seed = 7;
  int instantiations = 5;
  int points = 3;
  double tolerance = 1e-9;
  std::string format = "text";
  std::string metric_file;
  std::string lambda = "Lambda";
  bool natural_units = false;

  ClassifyOptions options() const {
    ClassifyOptions o;
    o.seed = seed;
    o.instantiations = instantiations;
    o.points = points;
    o.tolerance = tolerance;
    o.lambda = lambda;
    o.natural_units = natural_units;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for randomized instantiation");
  cmd->add_option("--instantiations", c.instantiations, "Random instantiations of opaque functions")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--points", c.points, "Exact sample points per instantiation")->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance", c.tolerance, "Relative tolerance for float fallback");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--lambda", c.lambda, "Cosmological constant expression");
  cmd->add_flag("--natural-units", c.natural_units, "Set c^4/(8 pi G) = 1");
}

CatalogEntry entry_for(const std::string& id, const Common& c) {
  if (!c.metric_file.empty()) return load_file(c.metric_file);
  if (id.empty()) throw InputError("give a catalog id or --metric-file");
  return load(id);
}

std::string status_line(bool pass) { return pass ? "PASS" : "FAIL"; }

int run_list(const Common& c) {
  json ids = catalog_ids();
  if (c.format == "json") {
    std::cout << ids.dump(1) << "\n";
  } else {
    for (const auto& id : ids) std::cout << id.get<std::string>() << "\n";
  }
  return 0;
}

int run_compute(const std::string& id, const std::vector<std::string>& tensors, const Common& c) {
  CatalogEntry e = entry_for(id, c);
  Classifier cl = e.classifier(c.options());
  json out = {{"metric", e.id}, {"tensors", json::object()}};
  for (const auto& requested : tensors) {
    std::string name = tensor_name(requested);
    out["tensors"][requested] = {{"name", name}, {"components", tensor_components(cl, name)}};
  }
  if (c.format == "json") {
    std::cout << out.dump(1) << "\n";
    return 0;
  }
  for (const auto& requested : tensors) {
    const json& t = out["tensors"][requested];
    std::string name = t["name"];
    std::cout << requested << " (" << name << ") of " << e.id << "\n";
    if (t["components"].empty()) std::cout << "  all components vanish\n";
    for (auto it = t["components"].begin(); it != t["components"].end(); ++it)
      std::cout << "  " << name << "_" << it.key() << " = " << it.value().get<std::string>() << "\n";
  }
  return 0;
}

int run_check(const std::string& id, const CheckRequest& req, const Common& c) {
  CatalogEntry e = entry_for(id, c);
  Classifier cl = e.classifier(c.options());
  json report = check_report(e, cl, req);
  bool ok = report["pass"];
  if (c.format == "json") {
    std::cout << report.dump(1) << "\n";
    return ok ? 0 : 1;
  }
  for (const auto& t : report["tables"]) {
    std::cout << status_line(t["pass"]) << "  table " << t["table"].get<std::string>() << " ("
              << t["tensor"].get<std::string>() << ", " << t["listed"] << " listed)\n";
    for (const auto& m : t["mismatches"]) {
      std::cout << "      " << m["component"].get<std::string>() << ": engine " << m["engine"].get<std::string>()
                << ", table " << m["expected"].get<std::string>();
      if (m["vanishes_modulo"].get<bool>()) std::cout << " (difference vanishes modulo the table factor)";
      std::cout << "\n";
    }
  }
  if (report.contains("reduction"))
    std::cout << status_line(report["reduction"]["status"] != "fails") << "  reduction from "
              << report["reduction"]["witness"]["from"].get<std::string>() << "\n";
  for (auto it = report["suites"].begin(); it != report["suites"].end(); ++it)
    for (const auto& item : it.value())
      std::cout << status_line(item["pass"]) << "  " << it.key() << "/" << item["id"].get<std::string>() << ": "
                << item["status"].get<std::string>() << "\n";
  std::cout << (ok ? "all checks pass" : "some checks fail") << "\n";
  return ok ? 0 : 1;
}

int run_compare(const std::string& a, const std::string& b, const Common& c) {
  json out = compare_report(a, b, c.options());
  bool ok = out["pass"];
  if (c.format == "json") {
    std::cout << out.dump(1) << "\n";
    return ok ? 0 : 1;
  }
  for (const char* group : {"similarities", "dissimilarities", "neither"}) {
    std::cout << group << ":\n";
    for (const auto& s : out[group]) std::cout << "  " << s.get<std::string>() << "\n";
  }
  if (out.contains("expected"))
    for (const auto& m : out["expected"]["missing"])
      std::cout << "expected in " << m["group"].get<std::string>() << ": " << m["structure"].get<std::string>()
                << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvkit: exact curvature tensors and curvature-structure checks"};
  app.require_subcommand(1);
  Common common;

  auto* list = app.add_subcommand("list", "List catalog metrics");
  list->add_option("--format", common.format)->check(CLI::IsMember({"json", "text"}));

  std::string id;
  std::vector<std::string> tensors{"ricci"};
  auto* compute = app.add_subcommand("compute", "Print nonzero tensor components");
  compute->add_option("metric", id, "Catalog id");
  compute->add_option("--tensor", tensors, "Tensor names or aliases (riemann, ricci, d(S), act(R,S), ...)");
  compute->add_option("--metric-file", common.metric_file, "Metric-definition JSON file");
  add_common(compute, common);

  CheckRequest req;
  auto* check = app.add_subcommand("check", "Check recorded tables and structure suites");
  check->add_option("metric", id, "Catalog id");
  check->add_option("--suite", req.suite, "Run one suite only");
  check->add_flag("--tables", req.tables_only, "Component tables only");
  check->add_flag("--corrected", req.corrected, "Apply recorded table corrections");
  check->add_option("--metric-file", common.metric_file, "Metric-definition JSON file");
  add_common(check, common);

  std::string first, second;
  auto* cmp = app.add_subcommand("compare", "Compare the curvature profile of two metrics");
  cmp->add_option("first", first)->required();
  cmp->add_option("second", second)->required();
  add_common(cmp, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*list) return run_list(common);
    if (*compute) return run_compute(id, tensors, common);
    if (*check) return run_check(id, req, common);
    if (*cmp) return run_compare(first, second, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
