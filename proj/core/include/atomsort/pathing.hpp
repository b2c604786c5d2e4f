#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "atomsort/move.hpp"

namespace atomsort {

enum class Connectivity { Eight, Four };

/// Chained unit steps from a source to a destination.
struct Path {
  enum class Kind { Direct, DominoSegment };

  std::vector<SingleMove> steps;
  Kind kind = Kind::Direct;

  Site from() const { return steps.front().from; }
  Site to() const { return steps.back().to; }
  int length() const { return static_cast<int>(steps.size()); }
};

/// Rules for the obstacle-ignoring route used by domino decomposition.
/// Same-species atoms are passable (they become domino obstacles);
/// opposite-species atoms are walls under the dual rule. `frozen` marks
/// additional sites a route may never enter.
struct RouteRules {
  Connectivity connectivity = Connectivity::Eight;
  bool opposite_species_blocks = false;
  std::function<bool(Site)> frozen;
};

/// Minimum-length obstacle-free path (every occupied site except the
/// source is an obstacle). Deterministic tie-break: breadth-first search
/// expanding vertical steps first, then horizontal, then diagonal.
std::optional<Path> shortest_direct_path(const ArrayState& state, Site from,
                                         Site to,
                                         Connectivity connectivity =
                                             Connectivity::Eight);

/// Shortest site sequence from `from` to `to` where atoms of the moving
/// atom's species are passable. Returns std::nullopt when every candidate
/// route is walled off.
std::optional<std::vector<Site>> find_route(const ArrayState& state, Site from,
                                            Site to, const RouteRules& rules);

struct DominoResult {
  enum class Status { Ok, Blocked, NoRoute };

  Status status = Status::NoRoute;
  /// Segments in execution order: the final obstacle moves to the target
  /// first, each preceding obstacle then fills the slot vacated ahead of
  /// it, and the source atom moves last.
  std::vector<Path> segments;

  bool ok() const { return status == Status::Ok; }
};

enum class SpeciesRule { Single, Dual };

/// Decomposes the transport from -> to into domino subpaths around
/// same-species obstacles on the shortest obstacle-ignoring route. With no
/// obstacles the result is a single Direct path. Under the dual rule an
/// opposite-species atom anywhere on every candidate route yields Blocked.
DominoResult domino_decompose(const ArrayState& state, Site from, Site to,
                              SpeciesRule rule,
                              const RouteRules& base_rules = {});

/// True iff every route from `from` to `to` passes through an atom of the
/// species opposite to the one at `from`.
bool detect_blocked(const ArrayState& state, Site from, Site to,
                    Connectivity connectivity = Connectivity::Eight);

}  // namespace atomsort
