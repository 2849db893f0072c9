#pragma once

#include "curvkit/evaluate.hpp"
#include "curvkit/linalg.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace curvkit {

/// Metric definition as read from a file: chart, symbols and the component
/// matrix as expression text. Extra keys are kept verbatim in `metadata`.
struct MetricDefinition {
  std::string id;
  std::string description;
  std::vector<std::string> coordinates;
  std::vector<std::string> parameters;
  std::vector<FunctionDecl> functions;
  std::vector<std::vector<std::string>> components;
  std::vector<std::string> constraints;
  nlohmann::json metadata = nlohmann::json::object();

  SymbolTable symbols() const;
};

MetricDefinition parse_metric_definition(const nlohmann::json& j);
nlohmann::json to_json(const MetricDefinition& d);

class Metric {
 public:
  Metric(SymbolTable symbols, Matrix<NormalForm> g);

  const SymbolTable& symbols() const { return symbols_; }
  std::size_t dim() const { return g_.size(); }
  const NormalForm& g(std::size_t i, std::size_t j) const { return g_[i][j]; }
  const NormalForm& inv(std::size_t i, std::size_t j) const { return inv_[i][j]; }
  const Matrix<NormalForm>& matrix() const { return g_; }
  const Matrix<NormalForm>& inverse_matrix() const { return inv_; }
  const NormalForm& det() const { return det_; }
  AtomId coordinate(std::size_t i) const { return symbols_.coordinate_atom(i); }

  /// Substitutes function instantiations (and any fixed parameter values).
  /// `symbols` must know every function the instantiations introduce.
  Metric instantiated(const Binding& b, SymbolTable symbols) const;
  Metric instantiated(const Binding& b) const { return instantiated(b, symbols_); }

 private:
  SymbolTable symbols_;
  Matrix<NormalForm> g_;
  Matrix<NormalForm> inv_;
  NormalForm det_;
};

Metric build_metric(const MetricDefinition& d);
Metric build_metric(const SymbolTable& symbols, const std::vector<std::vector<std::string>>& components);

struct Signature {
  int positive = 0;
  int negative = 0;
  /// Either sign convention: one direction of one sign, the rest of the other.
  bool lorentzian() const { return (negative == 1 && positive >= 1) || (positive == 1 && negative >= 1); }
};

/// Sylvester inertia of the metric at a point, after instantiation. Exact
/// when the values are rational. Throws DegeneratePoint when singular there.
Signature signature_at(const Metric& m, const Binding& point);

}  // namespace curvkit
