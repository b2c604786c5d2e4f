#include "planner_common.hpp"

namespace atomsort {

PlanResult hungarian_plan(const ArrayState& state, const TargetPattern& target,
                          const PlannerConfig& config) {
  if (state.rows() != target.rows() || state.cols() != target.cols()) {
    return PlanResult::fail(PlanFailure::Kind::UnsupportedTarget,
                            "shape mismatch");
  }
  if (state.atom_count(Species::Two) > 0 ||
      target.demand_count(Species::Two) > 0) {
    return PlanResult::fail(PlanFailure::Kind::UnsupportedTarget,
                            "hungarian is single-species");
  }
  if (!sufficient_atoms(state, target)) {
    return PlanResult::fail(PlanFailure::Kind::InsufficientAtoms);
  }

  MoveProgram program;
  ArrayState work = state;
  if (matches_target(work, target, MatchMode::Subset)) {
    return PlanResult::success(std::move(program));
  }

  const std::vector<Site> vacancies =
      detail::vacancies_of(work, target, Species::One);
  const std::vector<Site> excess = detail::excess_of(work, target, Species::One);
  const CostMatrix cost = build_cost_matrix(excess, vacancies, config.metric);
  const Assignment assignment = solve_lsap(cost);

  RouteRules rules;
  rules.connectivity = config.connectivity;
  // Domino chains move occupancy, never net atoms, so every pair's source
  // site still holds an atom when its turn comes.
  for (std::size_t k = 0; k < vacancies.size(); ++k) {
    const Site atom = excess[assignment.atom_for_target[k]];
    const auto status = detail::execute_pair(work, program, atom, vacancies[k],
                                             SpeciesRule::Single, rules);
    if (status != DominoResult::Status::Ok) {
      return PlanResult::fail(PlanFailure::Kind::NoRoute,
                              "no route to a target vacancy");
    }
  }
  if (!matches_target(work, target, MatchMode::Subset)) {
    return PlanResult::fail(PlanFailure::Kind::UnresolvableCollision,
                            "pairing executed but target unmet");
  }
  return PlanResult::success(std::move(program));
}

}  // namespace atomsort
