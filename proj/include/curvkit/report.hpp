#pragma once

#include "curvkit/catalog.hpp"

#include <json.hpp>

#include <string>

namespace curvkit {

/// Maps names such as "ricci" or "energy-momentum" to tensor names; other
/// names pass through.
std::string tensor_name(const std::string& alias);

/// Nonzero components keyed by 1-based labels ("1313", "11,1" for d(X)).
nlohmann::json tensor_components(Classifier& c, const std::string& name);

nlohmann::json table_report(const TableResult& r);

struct CheckRequest {
  std::string suite;        // empty: every suite plus tables and reduction
  bool tables_only = false;
  bool corrected = false;
};

/// Tables, reduction and suites of one entry; "pass" summarizes.
nlohmann::json check_report(const CatalogEntry& e, Classifier& c, const CheckRequest& req);

/// Grouped comparison plus, when recorded, the expected groups for the pair
/// and the structures missing from them.
nlohmann::json compare_report(const std::string& first, const std::string& second, const ClassifyOptions& options);

}  // namespace curvkit
