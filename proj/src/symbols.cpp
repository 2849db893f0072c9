#include "curvkit/symbols.hpp"

#include "curvkit/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace curvkit {

SymbolTable::SymbolTable(std::vector<std::string> coordinates, std::vector<std::string> parameters,
                         std::vector<FunctionDecl> functions) {
  std::set<std::string> seen;
  auto& table = AtomTable::instance();
  for (auto& c : coordinates) {
    if (!seen.insert(c).second) throw InputError("duplicate symbol '" + c + "'");
    coordinate_atoms_.push_back(table.coordinate(c));
    coordinates_.push_back(std::move(c));
  }
  for (const auto& p : parameters) add_parameter(p);
  for (const auto& f : functions) add_function(f);
}

void SymbolTable::add_parameter(const std::string& name) {
  if (std::find(parameters_.begin(), parameters_.end(), name) != parameters_.end()) return;
  if (std::find(coordinates_.begin(), coordinates_.end(), name) != coordinates_.end() || function_atom(name))
    throw InputError("duplicate symbol '" + name + "'");
  AtomTable::instance().parameter(name);
  parameters_.push_back(name);
}

void SymbolTable::add_function(const FunctionDecl& decl) {
  if (function_atom(decl.name)) throw InputError("duplicate function '" + decl.name + "'");
  if (std::find(coordinates_.begin(), coordinates_.end(), decl.name) != coordinates_.end() ||
      std::find(parameters_.begin(), parameters_.end(), decl.name) != parameters_.end())
    throw InputError("duplicate symbol '" + decl.name + "'");
  for (const auto& d : decl.depends_on)
    if (std::find(coordinates_.begin(), coordinates_.end(), d) == coordinates_.end())
      throw InputError("function '" + decl.name + "' depends on unknown coordinate '" + d + "'");
  functions_.push_back(decl);
}

std::size_t SymbolTable::position(AtomId coordinate) const {
  auto it = std::find(coordinate_atoms_.begin(), coordinate_atoms_.end(), coordinate);
  return it == coordinate_atoms_.end() ? 0 : static_cast<std::size_t>(it - coordinate_atoms_.begin()) + 1;
}

std::optional<AtomId> SymbolTable::parameter_atom(std::string_view name) const {
  if (std::find(parameters_.begin(), parameters_.end(), name) == parameters_.end()) return std::nullopt;
  return AtomTable::instance().parameter(name);
}

std::optional<AtomId> SymbolTable::function_atom(std::string_view name) const {
  for (const auto& f : functions_) {
    if (f.name != name) continue;
    std::vector<AtomId> deps;
    for (const auto& d : f.depends_on) deps.push_back(coordinate_atoms_.at(position(AtomTable::instance().coordinate(d)) - 1));
    return AtomTable::instance().function(f.name, deps);
  }
  return std::nullopt;
}

std::optional<SymbolTable::Resolved> SymbolTable::resolve(std::string_view name) const {
  for (std::size_t i = 0; i < coordinates_.size(); ++i)
    if (coordinates_[i] == name) return Resolved{coordinate_atoms_[i], false, false};
  if (auto p = parameter_atom(name)) return Resolved{*p, false, false};
  if (auto f = function_atom(name)) return Resolved{*f, false, true};
  // Derivative form: longest function-name prefix followed only by digits.
  std::optional<Resolved> best;
  std::size_t best_len = 0;
  for (const auto& f : functions_) {
    if (name.size() <= f.name.size() || name.substr(0, f.name.size()) != f.name) continue;
    auto digits = name.substr(f.name.size());
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      continue;
    if (f.name.size() <= best_len) continue;
    std::vector<AtomId> coords;
    bool ok = true;
    for (char c : digits) {
      std::size_t pos = static_cast<std::size_t>(c - '0');
      if (pos == 0 || pos > coordinates_.size()) {
        ok = false;
        break;
      }
      coords.push_back(coordinate_atoms_[pos - 1]);
    }
    if (!ok) continue;
    AtomId base = *function_atom(f.name);
    auto d = AtomTable::instance().derivative(base, coords);
    best = d ? Resolved{*d, false, true} : Resolved{base, true, true};
    best_len = f.name.size();
  }
  return best;
}

std::string SymbolTable::atom_name(AtomId atom) const {
  const AtomInfo& info = atom_info(atom);
  if (info.kind != AtomKind::Function || info.derivatives.empty()) return info.name;
  std::vector<std::size_t> positions;
  for (AtomId c : info.derivatives) positions.push_back(position(c));
  bool digits = std::all_of(positions.begin(), positions.end(), [](std::size_t p) { return p >= 1 && p <= 9; });
  std::string out = info.name;
  if (digits) {
    std::sort(positions.begin(), positions.end());
    for (auto p : positions) out += static_cast<char>('0' + p);
    return out;
  }
  out += "_";
  for (AtomId c : info.derivatives) out += atom_info(c).name;
  return out;
}

}  // namespace curvkit
