#pragma once

#include <cstdint>
#include <optional>

#include "atomsort/assignment.hpp"
#include "atomsort/move.hpp"
#include "atomsort/noise.hpp"

namespace atomsort {

struct OracleLimits {
  int max_sites_single = 12;
  int max_sites_dual = 8;
  int max_depth = 64;
  std::size_t max_states = 8'000'000;
};

struct KStarResult {
  enum class Status { Solved, Unreachable, TooLarge, LimitExceeded };

  Status status = Status::Unreachable;
  int kstar = -1;
  MoveProgram witness;
  std::size_t states_expanded = 0;

  bool solved() const { return status == Status::Solved; }
};

/// Exact minimum number of valid AodMoves transforming x0 into a state
/// satisfying the goal, by breadth-first search over the full move set
/// (every structurally valid AodMove whose pickup set is non-empty).
/// Instance size is capped; the search fails loudly on budget overruns
/// instead of truncating silently.
KStarResult bfs_kstar(const ArrayState& x0, const TargetPattern& goal,
                      MatchMode goal_mode, const OracleLimits& limits = {});

/// All structurally valid AodMoves on a rows x cols grid (occupancy is not
/// considered; pickup sets are checked per state). Cached per dimension.
const std::vector<AodMove>& enumerate_all_moves(int rows, int cols);

struct LowerBound {
  double t_lb_s = 0.0;
  double d_minmax = 0.0;
};

/// Bottleneck-assignment lower bound on the rearrangement time:
/// t_LB = spacing * d_minmax / speed, with d_minmax the LBAP optimum over
/// unsatisfied target vacancies vs same-species atoms (the worst species
/// governs). Throws on insufficient atoms.
LowerBound lower_bound_time(const ArrayState& state, const TargetPattern& target,
                            const NoiseParams& params, Metric metric);

}  // namespace atomsort
