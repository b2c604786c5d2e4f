#pragma once

#include <vector>

#include "atomsort/planners.hpp"

namespace atomsort::detail {

/// Sites demanding `sp` that do not currently hold it (a squatting atom of
/// the other species still counts as a vacancy of `sp`).
std::vector<Site> vacancies_of(const ArrayState& state,
                               const TargetPattern& target, Species sp);

/// Atoms of `sp` sitting where `sp` is not demanded.
std::vector<Site> excess_of(const ArrayState& state,
                            const TargetPattern& target, Species sp);

/// Route decomposition like domino_decompose but tolerating an occupied
/// destination (the final move simply stays pending until the squatter
/// leaves). Used by the queued pipeline where pairs execute interleaved.
DominoResult plan_segments(const ArrayState& state, Site from, Site to,
                           SpeciesRule rule, const RouteRules& rules);

/// One planned transport consumed move by move.
struct LivePath {
  std::vector<SingleMove> steps;
  std::size_t next = 0;
  Species species = Species::One;

  bool done() const { return next >= steps.size(); }
  std::size_t remaining() const { return steps.size() - next; }
  const SingleMove& front() const { return steps[next]; }
};

struct PathPlan {
  bool ok = false;
  PlanFailure failure;
  std::vector<LivePath> paths;
};

/// Species-selected pairing (cost matrix + LSAP per species) followed by
/// route search and domino decomposition for every pair, all against
/// `state`. `rule` selects whether opposite-species atoms wall off routes.
PathPlan plan_all_paths(const ArrayState& state, const TargetPattern& target,
                        const PlannerConfig& config, SpeciesRule rule);

/// Executes one transport immediately: route on the current state, domino
/// segments in order, one AodMove per SingleMove pushed into `program`.
/// Returns the verdict; `work` advances only on success.
DominoResult::Status execute_pair(ArrayState& work, MoveProgram& program,
                                  Site from, Site to, SpeciesRule rule,
                                  const RouteRules& rules);

/// The queued-round pipeline shared by the single- and dual-species
/// parallel planners: per-round move queues, collision deferral (longest
/// remaining path retained first), greedy parallelization of the retained
/// moves, and a full replan whenever a round makes no progress.
PlanResult round_pipeline(const ArrayState& initial,
                          const TargetPattern& target,
                          const PlannerConfig& config, SpeciesRule rule);

}  // namespace atomsort::detail
