#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atomsort/assignment.hpp"
#include "atomsort/pathing.hpp"

namespace atomsort {

struct PlannerConfig {
  Connectivity connectivity = Connectivity::Eight;
  Metric metric = Metric::Euclidean;
};

struct PlanFailure {
  enum class Kind {
    None,
    InsufficientAtoms,
    Blocked,
    NoRoute,
    UnsupportedTarget,
    UnresolvableCollision,
  };

  Kind kind = Kind::None;
  std::string detail;
};

const char* to_string(PlanFailure::Kind kind);

struct PlanResult {
  std::optional<MoveProgram> program;
  PlanFailure failure;

  bool ok() const { return program.has_value(); }

  static PlanResult success(MoveProgram p) {
    PlanResult r;
    r.program = std::move(p);
    return r;
  }
  static PlanResult fail(PlanFailure::Kind kind, std::string detail = {}) {
    PlanResult r;
    r.failure = {kind, std::move(detail)};
    return r;
  }
};

/// Greedy packing of sequentially valid single-atom moves into AodMoves.
/// Each candidate is accepted only when the combined move applied once
/// equals applying the constituents one by one; otherwise the open move is
/// closed and a new one starts. Worst case: one AodMove per SingleMove.
std::vector<AodMove> parallelize(std::span<const SingleMove> moves,
                                 const ArrayState& state);

/// LSAP pairing on the Euclidean cost matrix, each atom then moved
/// sequentially along its path (domino decomposition as needed), one
/// AodMove per SingleMove.
PlanResult hungarian_plan(const ArrayState& state, const TargetPattern& target,
                          const PlannerConfig& config = {});

/// Hungarian pairing plus round-based move queues and greedy
/// parallelization of each round's retained moves.
PlanResult par_hungarian_plan(const ArrayState& state,
                              const TargetPattern& target,
                              const PlannerConfig& config = {});

/// Recursive bisection balancing followed by per-row compaction; supports
/// contiguous rectangular single-species target blocks only. All moves are
/// whole-row or whole-column tone operations.
PlanResult balance_compact_plan(const ArrayState& state,
                                const TargetPattern& target,
                                const PlannerConfig& config = {});

/// Species-selected pairing (one cost matrix and LSAP per species) with
/// dual-species path rules; fails with Blocked when a route is cut off by
/// the opposite species.
PlanResult par_hungarian_dual_plan(const ArrayState& state,
                                   const TargetPattern& target,
                                   const PlannerConfig& config = {});

/// Layer-by-layer dual-species rearrangement: clears misplaced atoms off
/// the current layer with outward parallel pushes, then fills the layer
/// from the outside reservoir, never disturbing completed inner layers.
PlanResult inside_out_plan(const ArrayState& state, const TargetPattern& target,
                           const PlannerConfig& config = {});

/// Sites of the kth concentric rectangular layer around the grid center,
/// ordered top edge left-to-right, right edge, bottom edge right-to-left,
/// left edge. k = 1 is the innermost layer. Throws when the layer does not
/// fit within the grid.
std::vector<Site> layer_coords(int k, int rows, int cols);

/// A registered rearrangement algorithm.
struct Rearranger {
  enum class SpeciesSupport { Single, Dual, Both };

  std::string name;
  SpeciesSupport support = SpeciesSupport::Single;
  std::function<PlanResult(const ArrayState&, const TargetPattern&)> plan;
};

const std::vector<Rearranger>& rearranger_registry();
const Rearranger* find_rearranger(std::string_view name);

}  // namespace atomsort
