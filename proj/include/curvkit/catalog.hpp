#pragma once

#include "curvkit/classify.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

namespace curvkit {

/// A metric together with the expected results recorded for it.
///
/// Entries either list their components directly or derive from another
/// entry ("base") by instantiating some of its functions. `definition` is
/// always the self-contained, expanded form.
struct CatalogEntry {
  std::string id;
  MetricDefinition definition;
  SymbolTable symbols;     // also knows the functions replaced by `instantiation`
  Binding instantiation;   // applied to expected expressions
  std::shared_ptr<const Metric> metric;
  nlohmann::json tables = nlohmann::json::object();
  nlohmann::json suites = nlohmann::json::object();
  nlohmann::json reduction;  // optional: how this metric arises from another entry

  std::shared_ptr<const CurvatureBundle> bundle() const;
  /// Classifier that parses expected expressions through the instantiation.
  Classifier classifier(ClassifyOptions options = {}) const;

 private:
  mutable std::shared_ptr<const CurvatureBundle> bundle_;
};

std::vector<std::string> catalog_ids();
/// Throws InputError for an unknown id.
CatalogEntry load(const std::string& id);
/// Entry from a metric-definition document (base ids refer to the catalog).
CatalogEntry load_definition(const nlohmann::json& j);
CatalogEntry load_file(const std::string& path);

/// Shared analysis comparisons (profile checks and expected outcomes).
const nlohmann::json& comparison_profile();

struct ItemResult {
  std::string suite;
  std::string id;
  Verdict verdict;
  Status expected = Status::Holds;
  bool pass = false;
};

std::vector<ItemResult> run_suite(Classifier& c, const std::string& name, const nlohmann::json& suite);

struct TableMismatch {
  std::string component;
  std::string engine;
  std::string expected;
  bool vanishes_modulo = false;  // difference divisible by the table's `modulo` factor
};

struct TableResult {
  std::string name;
  std::string tensor;
  std::size_t listed = 0;
  std::size_t corrected = 0;  // listed values replaced from `corrections`
  std::vector<TableMismatch> mismatches;
  bool pass() const { return mismatches.empty(); }
  bool pass_modulo() const {
    return std::all_of(mismatches.begin(), mismatches.end(), [](const auto& m) { return m.vanishes_modulo; });
  }
};

/// Compares every component of the named tensor with the listed ones and
/// their symmetry images; components not covered must vanish. With
/// `use_corrections` the table's `corrections` override listed values.
TableResult check_table(Classifier& c, const std::string& name, const nlohmann::json& table,
                        bool use_corrections = false);

/// Instantiates the base entry as recorded in `entry.reduction` and compares
/// the listed tensors with those computed directly from `entry`.
Verdict reduction_check(const CatalogEntry& entry);

struct ComparisonReport {
  std::string first, second;
  std::vector<std::string> similarities;
  std::vector<std::string> dissimilarities;
  std::vector<std::string> neither;
  std::vector<std::pair<Verdict, Verdict>> verdicts;
};

ComparisonReport compare(Classifier& a, Classifier& b);
nlohmann::json to_json(const ComparisonReport& r);

}  // namespace curvkit
