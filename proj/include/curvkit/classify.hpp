#pragma once

#include "curvkit/actions.hpp"
#include "curvkit/curvature.hpp"
#include "curvkit/sampling.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace curvkit {

enum class Status { Holds, HoldsWithSolution, HoldsNumeric, Fails, Vacuous };
enum class Evidence { Symbolic, ExactInstantiation, Float };

std::string to_string(Status s);
std::string to_string(Evidence e);
Status status_from_string(const std::string& s);

struct Verdict {
  std::string structure;
  Status status = Status::Fails;
  Evidence evidence = Evidence::Symbolic;
  nlohmann::json witness = nlohmann::json::object();
  std::vector<std::string> side_conditions;
  std::vector<std::string> samples;

  bool holds() const {
    return status == Status::Holds || status == Status::HoldsWithSolution || status == Status::HoldsNumeric;
  }
};

/// One 1-form, possibly depending on free scalar parameters.
struct OneForm {
  std::vector<NormalForm> components;
  std::vector<std::string> free_parameters;
};

struct ClassifyOptions {
  std::uint64_t seed = 7;
  int instantiations = 5;
  int points = 3;
  double tolerance = 1e-9;
  std::string lambda = "Lambda";
  bool natural_units = false;
};

/// A linear system sum_u rows[r][u] x_u = rhs[r] with labelled rows.
struct LinearSystem {
  std::vector<std::string> unknowns;
  std::vector<std::vector<NormalForm>> rows;
  std::vector<NormalForm> rhs;
  std::vector<std::string> labels;

  /// Rows that vanish identically are dropped.
  void add(std::vector<NormalForm> row, NormalForm b, std::string label);
};

struct SystemSolution {
  bool consistent = false;
  std::vector<NormalForm> values;         // with free parameters as parameter atoms
  std::vector<std::string> free;          // names of the free unknowns
  std::vector<std::string> side_conditions;
  std::string contradiction;              // label of an inconsistent row
  Evidence evidence = Evidence::Symbolic;
  std::vector<std::string> samples;
};

/// Runs structure checks against one metric. Tensors are computed on demand
/// from names such as "R", "act(R,S)", "Q(S,P)", "d(C)" and cached.
///
/// Base names: g R Rm S Sm C W K G P Pm T T0 D S2 S3 S4. d(X) is the
/// covariant derivative, div(X) the divergence on the last slot, act(D,B)
/// the curvature action and Q(A,B) the Tachibana tensor.
class Classifier {
 public:
  Classifier(std::shared_ptr<const CurvatureBundle> bundle, std::string metric_id, ClassifyOptions options = {});

  const CurvatureBundle& bundle() const { return *bundle_; }
  const SymbolTable& symbols() const { return symbols_; }
  const ClassifyOptions& options() const { return options_; }
  const std::string& metric_id() const { return metric_id_; }

  const Tensor& tensor(const std::string& name);
  /// Parses an expression in the metric's symbols, then applies the
  /// instantiation and any definitions.
  NormalForm parse(const std::string& text);
  void set_instantiation(Binding b) { instantiation_ = std::move(b); }
  /// Names an auxiliary expression usable in later parses.
  void define(const std::string& name, const std::string& text);
  std::string print(const NormalForm& x) const;

  /// Exact randomized samples shared by every check, instantiations x points.
  const std::vector<SamplePoint>& samples();

  /// Pointwise selection of independent rows, then a symbolic solve that is
  /// certified against every row.
  SystemSolution solve(const LinearSystem& system);
  /// Substitutes a candidate solution into every row.
  std::optional<std::string> residual(const LinearSystem& system, const std::vector<NormalForm>& values);

  Verdict zero(const std::string& structure, const std::string& name);
  Verdict nonzero(const std::string& structure, const std::string& name);
  Verdict equal(const std::string& structure, const std::string& a, const std::string& b);
  Verdict scalar_equals(const std::string& structure, const NormalForm& value, const NormalForm& expected);

  Verdict recurrent(const std::string& structure, const std::string& name);
  Verdict pseudosymmetric(const std::string& structure, const std::string& lhs, const std::vector<std::string>& terms);
  Verdict ein(const std::string& structure, int max_k = 4);
  Verdict ein_k(const std::string& structure, int k);
  Verdict quasi_einstein(const std::string& structure);
  /// Decomposes along `eta`, by default the parallel null 1-form.
  Verdict chaki(const std::string& structure, std::vector<std::string> eta = {});
  Verdict parallel_null_form(const std::string& structure);
  Verdict ricci_simple(const std::string& structure);
  Verdict venzi(const std::string& structure, const std::string& name);
  Verdict two_form_recurrent(const std::string& structure, const std::string& name);
  Verdict weak_ricci_symmetric(const std::string& structure, bool cyclic);
  /// Five independent 1-forms; with `chaki` the single 1-form (2A, A, A, A, A).
  Verdict weakly_symmetric(const std::string& structure, const std::string& name, bool chaki = false);
  Verdict roter(const std::string& structure, bool generalized);
  Verdict compatible(const std::string& structure, const std::string& d, const std::string& e);
  Verdict divergence_free(const std::string& structure, const std::string& name);
  Verdict parallel(const std::string& structure, const std::string& name);
  Verdict codazzi(const std::string& structure, const std::string& name);
  Verdict cyclic_parallel(const std::string& structure, const std::string& name);
  Verdict pure_radiation(const std::string& structure);

  /// Builds the system for a named solver so that candidate solutions can be
  /// certified by substitution: recurrent, two-form, weak-ricci,
  /// weak-cyclic-ricci, pseudosymmetric.
  LinearSystem system(const std::string& kind, const std::vector<std::string>& args);

  /// Runs one check described as JSON, e.g. {"zero": "act(R,R)"}.
  Verdict run(const std::string& structure, const nlohmann::json& check);

  nlohmann::json report(const Verdict& v) const;

 private:
  Tensor build(const std::string& name);
  Verdict solved(const std::string& structure, const LinearSystem& system, const SystemSolution& s);
  NormalForm lambda();

  std::shared_ptr<const CurvatureBundle> bundle_;
  std::string metric_id_;
  ClassifyOptions options_;
  SymbolTable symbols_;
  std::map<std::string, Tensor> cache_;
  std::optional<std::vector<SamplePoint>> samples_;
  std::optional<NormalForm> lambda_;
  Binding instantiation_;
  std::map<AtomId, NormalForm> definitions_;
};

/// Component label with 1-based indices, e.g. "1313".
std::string component_label(const Index& idx);

}  // namespace curvkit
