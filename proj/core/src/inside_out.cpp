#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>

#include "planner_common.hpp"

namespace atomsort {

namespace {

/// Layer geometry shared by the clearing and filling steps. All values are
/// 1-based like the layer parameterization; sites convert at the edges.
struct LayerFrame {
  int rows, cols;
  int pi, pj, c_row, c_col;

  explicit LayerFrame(const ArrayState& s)
      : rows(s.rows()), cols(s.cols()),
        pi((cols + 1) % 2), pj((rows + 1) % 2),
        c_row(cols / 2 - pi + 1), c_col(rows / 2 - pj + 1) {}

  /// Index of the layer containing `s` (0-based site).
  int ring_of(Site s) const {
    const int r = s.row + 1;
    const int c = s.col + 1;
    int k = std::max({c_row - r + 1, r - c_row - pi + 1, c_col - c + 1,
                      c - c_col - pj + 1});
    return std::max(k, 1);
  }

  bool fits(int k) const {
    const int top = c_row - (k - 1);
    const int left = c_col - (k - 1);
    const int bottom = c_row + (k - 1) + pi;
    const int right = c_col + (k - 1) + pj;
    return top >= 1 && left >= 1 && bottom <= rows && right <= cols;
  }
};

enum class Edge { Top, Right, Bottom, Left };

Site outward_step(Edge e) {
  switch (e) {
    case Edge::Top: return {-1, 0};
    case Edge::Right: return {0, 1};
    case Edge::Bottom: return {1, 0};
    case Edge::Left: return {0, -1};
  }
  return {0, 0};
}

/// Layer sites tagged with the edge that determines their push direction.
std::vector<std::pair<Site, Edge>> labeled_layer(int k, int rows, int cols) {
  const std::vector<Site> sites = layer_coords(k, rows, cols);
  std::vector<std::pair<Site, Edge>> out;
  out.reserve(sites.size());
  if (sites.size() == 1) {
    out.emplace_back(sites[0], Edge::Top);
    return out;
  }
  int top = rows, left = cols, bottom = -1, right = -1;
  for (const Site s : sites) {
    top = std::min(top, s.row);
    bottom = std::max(bottom, s.row);
    left = std::min(left, s.col);
    right = std::max(right, s.col);
  }
  for (const Site s : sites) {
    Edge e;
    if (s.row == top) {
      e = Edge::Top;
    } else if (s.col == right) {
      e = Edge::Right;
    } else if (s.row == bottom) {
      e = Edge::Bottom;
    } else {
      e = Edge::Left;
    }
    out.emplace_back(s, e);
  }
  return out;
}

class InsideOut {
 public:
  InsideOut(const ArrayState& state, const TargetPattern& target,
            const PlannerConfig& config)
      : work_(state), target_(target), config_(config), frame_(state) {}

  PlanResult run() {
    if (!sufficient_atoms(work_, target_)) {
      return PlanResult::fail(PlanFailure::Kind::InsufficientAtoms);
    }
    if (matches_target(work_, target_, MatchMode::Subset)) {
      return PlanResult::success(std::move(program_));
    }
    for (int k = 1; frame_.fits(k); ++k) {
      layer_ = k;
      if (auto fail = clear_layer(k)) return std::move(*fail);
      if (auto fail = fill_layer(k)) return std::move(*fail);
      if (matches_target(work_, target_, MatchMode::Subset)) {
        return PlanResult::success(std::move(program_));
      }
    }
    return PlanResult::fail(PlanFailure::Kind::UnsupportedTarget,
                            "target extends beyond the layer coverage");
  }

 private:
  using MaybeFail = std::optional<PlanResult>;

  bool frozen(Site s) const {
    const int ring = frame_.ring_of(s);
    if (ring < layer_) return true;
    if (ring == layer_) {
      // Satisfied sites on the active layer stay put.
      const Demand d = target_.at(s);
      return d != Demand::DontCare && work_.at(s) == demanded_species(d);
    }
    return false;
  }

  RouteRules fill_rules() const {
    RouteRules rules;
    rules.connectivity = config_.connectivity;
    rules.opposite_species_blocks = true;
    rules.frozen = [this](Site s) { return frozen(s); };
    return rules;
  }

  /// Outward chain push of the atom at `s`: the contiguous occupied run
  /// ahead of it shifts one site toward the boundary. Returns the single
  /// moves in execution order (outermost first), or nullopt when the run
  /// hits the grid edge with no vacancy.
  std::optional<std::vector<SingleMove>> chain_push(Site s, Edge e) const {
    const Site d = outward_step(e);
    std::vector<Site> chain{s};
    Site cur = s;
    while (true) {
      const Site next{cur.row + d.row, cur.col + d.col};
      if (!work_.in_bounds(next)) return std::nullopt;
      if (!work_.occupied(next)) break;
      chain.push_back(next);
      cur = next;
    }
    std::vector<SingleMove> singles;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      singles.push_back({*it, {it->row + d.row, it->col + d.col}});
    }
    return singles;
  }

  /// Misplaced atoms on the layer are pushed off it, one edge at a time,
  /// chains interleaved outermost-first so the pushes parallelize.
  MaybeFail clear_layer(int k) {
    const auto layer = labeled_layer(k, work_.rows(), work_.cols());
    for (const Edge edge : {Edge::Top, Edge::Right, Edge::Bottom, Edge::Left}) {
      std::vector<std::vector<SingleMove>> chains;
      std::vector<Site> unpushable;
      for (const auto& [site, site_edge] : layer) {
        if (site_edge != edge) continue;
        const Demand d = target_.at(site);
        if (d == Demand::DontCare || !work_.occupied(site)) continue;
        if (work_.at(site) == demanded_species(d)) continue;
        if (auto singles = chain_push(site, edge)) {
          chains.push_back(std::move(*singles));
        } else {
          unpushable.push_back(site);
        }
      }
      if (!chains.empty()) {
        // Depth-major interleave: all outermost steps first, then the next
        // ring of steps, so chains of equal height merge into one move.
        std::vector<SingleMove> ordered;
        for (std::size_t depth = 0; true; ++depth) {
          bool any = false;
          for (const auto& chain : chains) {
            if (depth < chain.size()) {
              ordered.push_back(chain[depth]);
              any = true;
            }
          }
          if (!any) break;
        }
        for (const AodMove& aod : parallelize(ordered, work_)) {
          work_ = program_.push(work_, aod);
        }
      }
      for (const Site s : unpushable) {
        if (auto fail = relocate_off_layer(s)) return fail;
      }
    }
    return std::nullopt;
  }

  /// Fallback for a misplaced atom whose outward column is packed to the
  /// boundary: route it to the nearest free site outside the layer.
  MaybeFail relocate_off_layer(Site s) {
    Site best{-1, -1};
    int best_d = -1;
    for (int r = 0; r < work_.rows(); ++r) {
      for (int c = 0; c < work_.cols(); ++c) {
        const Site cand{r, c};
        if (work_.occupied(cand) || frame_.ring_of(cand) <= layer_) continue;
        const int d = chebyshev(s, cand);
        if (best_d == -1 || d < best_d || (d == best_d && cand < best)) {
          best = cand;
          best_d = d;
        }
      }
    }
    if (best_d == -1) {
      return PlanResult::fail(PlanFailure::Kind::NoRoute,
                              "no free site outside the layer");
    }
    const auto status = detail::execute_pair(work_, program_, s, best,
                                             SpeciesRule::Dual, fill_rules());
    if (status != DominoResult::Status::Ok) {
      return PlanResult::fail(PlanFailure::Kind::NoRoute,
                              "cannot clear a misplaced atom off the layer");
    }
    return std::nullopt;
  }

  std::vector<Site> layer_vacancies(int k, Species sp) const {
    std::vector<Site> out;
    for (const Site s : layer_coords(k, work_.rows(), work_.cols())) {
      if (demanded_species(target_.at(s)) == sp && work_.at(s) != sp) {
        out.push_back(s);
      }
    }
    return out;
  }

  /// Reservoir for the active layer: atoms of `sp` on or beyond it that do
  /// not already satisfy a demand.
  std::vector<Site> eligible_sources(Species sp) const {
    std::vector<Site> out;
    for (int r = 0; r < work_.rows(); ++r) {
      for (int c = 0; c < work_.cols(); ++c) {
        const Site s{r, c};
        if (work_.at(s) != sp) continue;
        const int ring = frame_.ring_of(s);
        if (ring < layer_) continue;
        if (demanded_species(target_.at(s)) == sp && ring <= layer_) continue;
        out.push_back(s);
      }
    }
    return out;
  }

  MaybeFail fill_layer(int k) {
    for (const Species sp : {Species::One, Species::Two}) {
      const std::vector<Site> vacancies = layer_vacancies(k, sp);
      if (vacancies.empty()) continue;
      const std::vector<Site> sources = eligible_sources(sp);
      if (sources.size() < vacancies.size()) {
        return PlanResult::fail(PlanFailure::Kind::NoRoute,
                                "reservoir exhausted for the layer");
      }
      const CostMatrix cost =
          build_cost_matrix(sources, vacancies, config_.metric);
      const Assignment assignment = solve_lsap(cost);
      for (std::size_t v = 0; v < vacancies.size(); ++v) {
        const Site atom = sources[assignment.atom_for_target[v]];
        if (auto fail = transport(atom, vacancies[v])) return fail;
      }
    }
    return std::nullopt;
  }

  /// Moves one atom to its layer vacancy, pushing opposite-species
  /// blockers away from the center when the route is walled off.
  MaybeFail transport(Site from, Site to) {
    if (work_.at(to) == work_.at(from)) return std::nullopt;
    int unblock_budget = 4 * (work_.rows() + work_.cols());
    while (true) {
      const auto status =
          detail::execute_pair(work_, program_, from, to, SpeciesRule::Dual,
                               fill_rules());
      if (status == DominoResult::Status::Ok) return std::nullopt;
      if (--unblock_budget < 0 || !push_blocker_away(from, to)) {
        return PlanResult::fail(PlanFailure::Kind::NoRoute,
                                "blocked route could not be cleared");
      }
    }
  }

  /// Finds the route ignoring the opposite species and pushes its first
  /// blocker one site away from the center (chained, never into frozen or
  /// inner sites). Returns false when nothing can be pushed.
  bool push_blocker_away(Site from, Site to) {
    RouteRules permissive = fill_rules();
    permissive.opposite_species_blocks = false;
    const auto route = find_route(work_, from, to, permissive);
    if (!route) return false;
    const Species moving = work_.at(from);
    for (const Site s : *route) {
      if (s == from || s == to) continue;
      if (!work_.occupied(s) || work_.at(s) == moving) continue;
      if (push_outward(s)) return true;
    }
    return false;
  }

  bool push_outward(Site s) {
    // Directions ordered by how much they raise the ring index.
    std::array<std::pair<int, Site>, 4> options;
    int n = 0;
    for (const Edge e : {Edge::Top, Edge::Right, Edge::Bottom, Edge::Left}) {
      const Site d = outward_step(e);
      const Site dest{s.row + d.row, s.col + d.col};
      if (!work_.in_bounds(dest)) continue;
      options[n++] = {frame_.ring_of(dest), d};
    }
    std::stable_sort(options.begin(), options.begin() + n,
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int i = 0; i < n; ++i) {
      const auto& [ring, d] = options[i];
      if (ring <= layer_) continue;
      if (auto singles = chain_push_dir(s, d)) {
        for (const SingleMove& m : *singles) {
          work_ = program_.push(work_, to_aod_move(m));
        }
        return true;
      }
    }
    return false;
  }

  /// Chain push in an arbitrary direction; every displaced atom must land
  /// strictly outside the active layer and off frozen sites.
  std::optional<std::vector<SingleMove>> chain_push_dir(Site s, Site d) const {
    std::vector<Site> chain{s};
    Site cur = s;
    while (true) {
      const Site next{cur.row + d.row, cur.col + d.col};
      if (!work_.in_bounds(next) || frame_.ring_of(next) <= layer_ ||
          frozen(next)) {
        return std::nullopt;
      }
      if (!work_.occupied(next)) break;
      chain.push_back(next);
      cur = next;
    }
    std::vector<SingleMove> singles;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      singles.push_back({*it, {it->row + d.row, it->col + d.col}});
    }
    return singles;
  }

  ArrayState work_;
  const TargetPattern& target_;
  PlannerConfig config_;
  LayerFrame frame_;
  MoveProgram program_;
  int layer_ = 1;
};

}  // namespace

PlanResult inside_out_plan(const ArrayState& state, const TargetPattern& target,
                           const PlannerConfig& config) {
  if (state.rows() != target.rows() || state.cols() != target.cols()) {
    return PlanResult::fail(PlanFailure::Kind::UnsupportedTarget,
                            "shape mismatch");
  }
  InsideOut planner(state, target, config);
  return planner.run();
}

}  // namespace atomsort
