#pragma once

#include "curvkit/atoms.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curvkit {

struct FunctionDecl {
  std::string name;
  std::vector<std::string> depends_on;
};

/// Name resolution for one metric: its ordered coordinates, parameters and
/// opaque functions. Derivative atoms are written as the function name
/// followed by the 1-based positions of the coordinates, sorted, so `h34` is
/// the mixed partial of h by the third and fourth coordinates.
class SymbolTable {
 public:
  SymbolTable() = default;
  SymbolTable(std::vector<std::string> coordinates, std::vector<std::string> parameters,
              std::vector<FunctionDecl> functions);

  void add_parameter(const std::string& name);
  void add_function(const FunctionDecl& decl);

  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const std::vector<AtomId>& coordinate_atoms() const { return coordinate_atoms_; }
  const std::vector<std::string>& parameters() const { return parameters_; }
  const std::vector<FunctionDecl>& functions() const { return functions_; }
  std::size_t dimension() const { return coordinates_.size(); }

  AtomId coordinate_atom(std::size_t index) const { return coordinate_atoms_.at(index); }
  /// 1-based chart position of a coordinate atom, 0 when absent.
  std::size_t position(AtomId coordinate) const;
  std::optional<AtomId> parameter_atom(std::string_view name) const;
  std::optional<AtomId> function_atom(std::string_view name) const;

  struct Resolved {
    AtomId atom = 0;
    bool vanishes = false;  // derivative by a coordinate the function ignores
    bool is_function = false;
  };
  /// Resolves coordinate, parameter, function and derivative names.
  std::optional<Resolved> resolve(std::string_view name) const;

  std::string atom_name(AtomId atom) const;

 private:
  std::vector<std::string> coordinates_;
  std::vector<AtomId> coordinate_atoms_;
  std::vector<std::string> parameters_;
  std::vector<FunctionDecl> functions_;
};

}  // namespace curvkit
