#include "atomsort/planners.hpp"

#include <algorithm>
#include <stdexcept>

#include "planner_common.hpp"

namespace atomsort {

const char* to_string(PlanFailure::Kind kind) {
  switch (kind) {
    case PlanFailure::Kind::None: return "none";
    case PlanFailure::Kind::InsufficientAtoms: return "insufficient_atoms";
    case PlanFailure::Kind::Blocked: return "blocked";
    case PlanFailure::Kind::NoRoute: return "no_route";
    case PlanFailure::Kind::UnsupportedTarget: return "unsupported_target";
    case PlanFailure::Kind::UnresolvableCollision:
      return "unresolvable_collision";
  }
  return "unknown";
}

std::vector<Site> layer_coords(int k, int rows, int cols) {
  if (k < 1) throw std::invalid_argument("layer_coords: k must be >= 1");
  const int m = rows;
  const int n = cols;
  // Parity factors and layer boundaries, evaluated 1-based.
  const int pi = (n + 1) % 2;
  const int pj = (m + 1) % 2;
  const int c_row = n / 2 - pi + 1;
  const int c_col = m / 2 - pj + 1;
  const int top = c_row - (k - 1);
  const int left = c_col - (k - 1);
  const int bottom = c_row + (k - 1) + pi;
  const int right = c_col + (k - 1) + pj;
  if (top < 1 || left < 1 || bottom > m || right > n) {
    throw std::out_of_range("layer_coords: layer does not fit within the grid");
  }
  std::vector<Site> sites;
  for (int jj = left; jj <= right; ++jj) sites.push_back({top - 1, jj - 1});
  for (int ii = top + 1; ii <= bottom; ++ii) sites.push_back({ii - 1, right - 1});
  if (bottom > top) {
    for (int jj = right - 1; jj >= left; --jj) sites.push_back({bottom - 1, jj - 1});
  }
  if (right > left) {
    for (int ii = bottom - 1; ii >= top + 1; --ii) sites.push_back({ii - 1, left - 1});
  }
  return sites;
}

const std::vector<Rearranger>& rearranger_registry() {
  static const std::vector<Rearranger> registry = {
      {"hungarian", Rearranger::SpeciesSupport::Single,
       [](const ArrayState& s, const TargetPattern& t) {
         return hungarian_plan(s, t);
       }},
      {"par_hungarian", Rearranger::SpeciesSupport::Single,
       [](const ArrayState& s, const TargetPattern& t) {
         return par_hungarian_plan(s, t);
       }},
      {"balance_compact", Rearranger::SpeciesSupport::Single,
       [](const ArrayState& s, const TargetPattern& t) {
         return balance_compact_plan(s, t);
       }},
      {"par_hungarian_dual", Rearranger::SpeciesSupport::Dual,
       [](const ArrayState& s, const TargetPattern& t) {
         return par_hungarian_dual_plan(s, t);
       }},
      {"inside_out", Rearranger::SpeciesSupport::Dual,
       [](const ArrayState& s, const TargetPattern& t) {
         return inside_out_plan(s, t);
       }},
  };
  return registry;
}

const Rearranger* find_rearranger(std::string_view name) {
  for (const Rearranger& r : rearranger_registry()) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

namespace detail {

std::vector<Site> vacancies_of(const ArrayState& state,
                               const TargetPattern& target, Species sp) {
  std::vector<Site> out;
  for (int r = 0; r < state.rows(); ++r) {
    for (int c = 0; c < state.cols(); ++c) {
      const Site s{r, c};
      if (demanded_species(target.at(s)) == sp && state.at(s) != sp) {
        out.push_back(s);
      }
    }
  }
  return out;
}

std::vector<Site> excess_of(const ArrayState& state,
                            const TargetPattern& target, Species sp) {
  std::vector<Site> out;
  for (int r = 0; r < state.rows(); ++r) {
    for (int c = 0; c < state.cols(); ++c) {
      const Site s{r, c};
      if (state.at(s) == sp && demanded_species(target.at(s)) != sp) {
        out.push_back(s);
      }
    }
  }
  return out;
}

DominoResult plan_segments(const ArrayState& state, Site from, Site to,
                           SpeciesRule rule, const RouteRules& base_rules) {
  if (!state.occupied(to)) {
    return domino_decompose(state, from, to, rule, base_rules);
  }
  // Occupied target: route as if it were free; the final move waits for
  // the squatter to leave.
  ArrayState probe = state;
  probe.set(to, Species::Empty);
  return domino_decompose(probe, from, to, rule, base_rules);
}

PathPlan plan_all_paths(const ArrayState& state, const TargetPattern& target,
                        const PlannerConfig& config, SpeciesRule rule) {
  PathPlan plan;
  RouteRules rules;
  rules.connectivity = config.connectivity;
  for (const Species sp : {Species::One, Species::Two}) {
    const std::vector<Site> vacancies = vacancies_of(state, target, sp);
    if (vacancies.empty()) continue;
    const std::vector<Site> excess = excess_of(state, target, sp);
    if (excess.size() < vacancies.size()) {
      plan.failure = {PlanFailure::Kind::InsufficientAtoms,
                      "fewer excess atoms than vacancies"};
      return plan;
    }
    const CostMatrix cost = build_cost_matrix(excess, vacancies, config.metric);
    const Assignment assignment = solve_lsap(cost);
    for (std::size_t k = 0; k < vacancies.size(); ++k) {
      const Site atom = excess[assignment.atom_for_target[k]];
      DominoResult dec = plan_segments(state, atom, vacancies[k], rule, rules);
      if (!dec.ok()) {
        plan.failure = {dec.status == DominoResult::Status::Blocked
                            ? PlanFailure::Kind::Blocked
                            : PlanFailure::Kind::NoRoute,
                        "no route to a target vacancy"};
        return plan;
      }
      for (Path& seg : dec.segments) {
        LivePath lp;
        lp.steps = std::move(seg.steps);
        lp.species = sp;
        plan.paths.push_back(std::move(lp));
      }
    }
  }
  plan.ok = true;
  return plan;
}

DominoResult::Status execute_pair(ArrayState& work, MoveProgram& program,
                                  Site from, Site to, SpeciesRule rule,
                                  const RouteRules& rules) {
  DominoResult dec = domino_decompose(work, from, to, rule, rules);
  if (!dec.ok()) return dec.status;
  for (const Path& seg : dec.segments) {
    for (const SingleMove& step : seg.steps) {
      work = program.push(work, to_aod_move(step));
    }
  }
  return DominoResult::Status::Ok;
}

PlanResult round_pipeline(const ArrayState& initial, const TargetPattern& target,
                          const PlannerConfig& config, SpeciesRule rule) {
  if (!sufficient_atoms(initial, target)) {
    return PlanResult::fail(PlanFailure::Kind::InsufficientAtoms);
  }
  MoveProgram program;
  ArrayState work = initial;
  if (matches_target(work, target, MatchMode::Subset)) {
    return PlanResult::success(std::move(program));
  }

  PathPlan plan = plan_all_paths(work, target, config, rule);
  if (!plan.ok) return PlanResult::fail(plan.failure.kind, plan.failure.detail);

  std::size_t planned_steps = 0;
  for (const LivePath& p : plan.paths) planned_steps += p.steps.size();
  const std::size_t round_budget =
      16 * (planned_steps + static_cast<std::size_t>(work.site_count())) + 64;

  int consecutive_stalls = 0;
  std::vector<std::size_t> order;
  for (std::size_t round = 0; round < round_budget; ++round) {
    if (matches_target(work, target, MatchMode::Subset)) {
      return PlanResult::success(std::move(program));
    }
    const bool paths_left =
        std::any_of(plan.paths.begin(), plan.paths.end(),
                    [](const LivePath& p) { return !p.done(); });
    bool progressed = false;
    if (paths_left) {
      // Round queue: the first pending move of every path, colliding moves
      // deferred; on a collision the move of the longest remaining path is
      // kept.
      order.clear();
      for (std::size_t i = 0; i < plan.paths.size(); ++i) {
        if (!plan.paths[i].done()) order.push_back(i);
      }
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return plan.paths[a].remaining() >
                                plan.paths[b].remaining();
                       });
      const ArrayState round_base = work;
      ArrayState probe = work;
      std::vector<SingleMove> retained;
      for (const std::size_t pi : order) {
        LivePath& p = plan.paths[pi];
        const SingleMove& m = p.front();
        if (probe.in_bounds(m.from) && probe.at(m.from) == p.species &&
            is_valid_move(probe, to_aod_move(m)).ok) {
          probe = apply_move(probe, to_aod_move(m)).state;
          retained.push_back(m);
          ++p.next;
        }
      }
      if (!retained.empty()) {
        for (const AodMove& aod : parallelize(retained, round_base)) {
          work = program.push(work, aod);
        }
        progressed = true;
      }
    }
    if (progressed) {
      consecutive_stalls = 0;
      continue;
    }
    // Stalled (or out of paths with the target unmet): replan from the
    // current occupancy.
    if (++consecutive_stalls > 2) {
      return PlanResult::fail(
          rule == SpeciesRule::Dual ? PlanFailure::Kind::Blocked
                                    : PlanFailure::Kind::UnresolvableCollision,
          "no progress after replanning");
    }
    plan = plan_all_paths(work, target, config, rule);
    if (!plan.ok) return PlanResult::fail(plan.failure.kind, plan.failure.detail);
  }
  return PlanResult::fail(PlanFailure::Kind::UnresolvableCollision,
                          "round budget exhausted");
}

}  // namespace detail

}  // namespace atomsort
