#include "curvkit/atoms.hpp"

#include "curvkit/error.hpp"

#include <algorithm>
#include <mutex>

namespace curvkit {

AtomTable& AtomTable::instance() {
  static AtomTable table;
  return table;
}

AtomId AtomTable::intern(AtomInfo info) {
  Key key{static_cast<int>(info.kind), info.name, info.dependencies, info.derivatives};
  {
    std::shared_lock lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  auto id = static_cast<AtomId>(atoms_.size());
  if (info.kind == AtomKind::Function && info.derivatives.empty()) info.base = id;
  atoms_.push_back(std::move(info));
  index_.emplace(std::move(key), id);
  return id;
}

AtomId AtomTable::coordinate(std::string_view name) {
  return intern({AtomKind::Coordinate, std::string(name), {}, {}, 0});
}

AtomId AtomTable::parameter(std::string_view name) {
  return intern({AtomKind::Parameter, std::string(name), {}, {}, 0});
}

AtomId AtomTable::function(std::string_view name, std::vector<AtomId> dependencies) {
  std::sort(dependencies.begin(), dependencies.end());
  dependencies.erase(std::unique(dependencies.begin(), dependencies.end()), dependencies.end());
  return intern({AtomKind::Function, std::string(name), std::move(dependencies), {}, 0});
}

std::optional<AtomId> AtomTable::derivative(AtomId function_atom, AtomId coordinate) {
  AtomInfo next = info(function_atom);
  if (next.kind != AtomKind::Function) throw Error("derivative of a non-function atom");
  if (!std::binary_search(next.dependencies.begin(), next.dependencies.end(), coordinate))
    return std::nullopt;
  next.derivatives.insert(std::upper_bound(next.derivatives.begin(), next.derivatives.end(), coordinate),
                          coordinate);
  return intern(std::move(next));
}

std::optional<AtomId> AtomTable::derivative(AtomId base, const std::vector<AtomId>& coordinates) {
  std::optional<AtomId> current = base;
  for (AtomId c : coordinates) {
    current = derivative(*current, c);
    if (!current) return std::nullopt;
  }
  return current;
}

const AtomInfo& AtomTable::info(AtomId id) const {
  std::shared_lock lock(mutex_);
  if (id >= atoms_.size()) throw Error("unknown atom id");
  return atoms_[id];
}

std::optional<AtomId> AtomTable::find_coordinate(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = index_.find(Key{static_cast<int>(AtomKind::Coordinate), std::string(name), {}, {}});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace curvkit
