#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace curvkit {

using AtomId = std::uint32_t;

enum class AtomKind { Coordinate, Parameter, Function };

/// One indeterminate of the expression alphabet.
///
/// Function atoms stand for an opaque scalar function or one of its partial
/// derivatives: `base` is the underived function, `derivatives` the sorted
/// multiset of coordinate atoms it has been differentiated by. Mixed
/// partials commute, so h_34 and h_43 intern to the same atom.
struct AtomInfo {
  AtomKind kind;
  std::string name;
  std::vector<AtomId> dependencies;  // Function only
  std::vector<AtomId> derivatives;   // Function only, sorted ascending
  AtomId base = 0;                   // Function only
};

/// Process-wide interning table. Thread-safe; atoms are never removed.
class AtomTable {
 public:
  static AtomTable& instance();

  AtomId coordinate(std::string_view name);
  AtomId parameter(std::string_view name);
  /// Underived opaque function depending on the given coordinate atoms.
  AtomId function(std::string_view name, std::vector<AtomId> dependencies);
  /// Partial derivative of a function atom; nullopt when it does not depend
  /// on `coordinate` (the derivative vanishes identically).
  std::optional<AtomId> derivative(AtomId function_atom, AtomId coordinate);
  /// Function atom with the given multi-index applied to `base`.
  std::optional<AtomId> derivative(AtomId base, const std::vector<AtomId>& coordinates);

  const AtomInfo& info(AtomId id) const;
  std::optional<AtomId> find_coordinate(std::string_view name) const;

 private:
  AtomTable() = default;
  AtomId intern(AtomInfo info);

  using Key = std::tuple<int, std::string, std::vector<AtomId>, std::vector<AtomId>>;
  mutable std::shared_mutex mutex_;
  std::deque<AtomInfo> atoms_;
  std::map<Key, AtomId> index_;
};

inline const AtomInfo& atom_info(AtomId id) { return AtomTable::instance().info(id); }

}  // namespace curvkit
