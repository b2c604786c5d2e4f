#include "atomsort/grid.hpp"

namespace atomsort {

bool matches_target(const ArrayState& state, const TargetPattern& target,
                    MatchMode mode) {
  if (state.rows() != target.rows() || state.cols() != target.cols()) {
    throw std::invalid_argument("matches_target: shape mismatch");
  }
  for (int r = 0; r < state.rows(); ++r) {
    for (int c = 0; c < state.cols(); ++c) {
      const Site s{r, c};
      const Demand d = target.at(s);
      if (d == Demand::DontCare) {
        if (mode == MatchMode::Exact && state.occupied(s)) return false;
      } else if (state.at(s) != demanded_species(d)) {
        return false;
      }
    }
  }
  return true;
}

int unsatisfied_demands(const ArrayState& state, const TargetPattern& target) {
  int n = 0;
  for (int r = 0; r < state.rows(); ++r) {
    for (int c = 0; c < state.cols(); ++c) {
      const Site s{r, c};
      const Demand d = target.at(s);
      if (d != Demand::DontCare && state.at(s) != demanded_species(d)) ++n;
    }
  }
  return n;
}

bool sufficient_atoms(const ArrayState& state, const TargetPattern& target) {
  return state.atom_count(Species::One) >= target.demand_count(Species::One) &&
         state.atom_count(Species::Two) >= target.demand_count(Species::Two);
}

}  // namespace atomsort
