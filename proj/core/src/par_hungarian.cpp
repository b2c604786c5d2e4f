#include "planner_common.hpp"

namespace atomsort {

PlanResult par_hungarian_plan(const ArrayState& state,
                              const TargetPattern& target,
                              const PlannerConfig& config) {
  if (state.rows() != target.rows() || state.cols() != target.cols()) {
    return PlanResult::fail(PlanFailure::Kind::UnsupportedTarget,
                            "shape mismatch");
  }
  if (state.atom_count(Species::Two) > 0 ||
      target.demand_count(Species::Two) > 0) {
    return PlanResult::fail(PlanFailure::Kind::UnsupportedTarget,
                            "par_hungarian is single-species");
  }
  return detail::round_pipeline(state, target, config, SpeciesRule::Single);
}

PlanResult par_hungarian_dual_plan(const ArrayState& state,
                                   const TargetPattern& target,
                                   const PlannerConfig& config) {
  if (state.rows() != target.rows() || state.cols() != target.cols()) {
    return PlanResult::fail(PlanFailure::Kind::UnsupportedTarget,
                            "shape mismatch");
  }
  return detail::round_pipeline(state, target, config, SpeciesRule::Dual);
}

}  // namespace atomsort
