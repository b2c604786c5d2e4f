#include "atomsort/oracle.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace atomsort {

namespace {

void gen_tone_lists(int limit, std::vector<std::vector<Tone>>& out) {
  std::vector<Tone> current;
  // Depth-first over strictly increasing indices with non-crossing posts.
  auto rec = [&](auto&& self, int start, int last_post) -> void {
    for (int i = start; i < limit; ++i) {
      for (int shift = -1; shift <= 1; ++shift) {
        const int post = i + shift;
        if (post < 0 || post >= limit || post <= last_post) continue;
        current.push_back({i, shift});
        out.push_back(current);
        self(self, i + 1, post);
        current.pop_back();
      }
    }
  };
  rec(rec, 0, -2);
}

/// Compiled move: flat-index transport pairs for fast encoded application.
struct CompiledMove {
  std::vector<std::pair<int, int>> hops;  // (from flat index, to flat index)
};

struct MoveTable {
  std::vector<AodMove> moves;
  std::vector<CompiledMove> compiled;
};

const MoveTable& move_table(int rows, int cols) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<MoveTable>> cache;
  std::scoped_lock lock(mutex);
  auto& slot = cache[{rows, cols}];
  if (!slot) {
    slot = std::make_unique<MoveTable>();
    std::vector<std::vector<Tone>> row_cfgs, col_cfgs;
    gen_tone_lists(rows, row_cfgs);
    gen_tone_lists(cols, col_cfgs);
    for (const auto& rt : row_cfgs) {
      for (const auto& ct : col_cfgs) {
        AodMove m{rt, ct};
        CompiledMove cm;
        for (const Tone& r : rt) {
          for (const Tone& c : ct) {
            cm.hops.emplace_back(r.index * cols + c.index,
                                 (r.index + r.shift) * cols + c.index + c.shift);
          }
        }
        slot->moves.push_back(std::move(m));
        slot->compiled.push_back(std::move(cm));
      }
    }
  }
  return *slot;
}

using Code = std::uint32_t;  // 2 bits per site, up to 16 sites

Code encode(const ArrayState& s) {
  Code code = 0;
  for (int r = 0; r < s.rows(); ++r) {
    for (int c = 0; c < s.cols(); ++c) {
      code |= static_cast<Code>(s.at({r, c})) << (2 * (r * s.cols() + c));
    }
  }
  return code;
}

inline unsigned site_of(Code code, int flat) { return (code >> (2 * flat)) & 3u; }

/// Applies a compiled move to an encoded state; returns the successor or
/// nullopt when the move is not valid there (empty pickup or collision
/// with an unpicked atom).
std::optional<Code> apply_encoded(Code code, const CompiledMove& cm) {
  Code picked_mask = 0;
  bool any = false;
  for (const auto& [from, to] : cm.hops) {
    if (site_of(code, from) != 0) {
      picked_mask |= Code{3} << (2 * from);
      any = true;
    }
  }
  if (!any) return std::nullopt;
  Code next = code & ~picked_mask;
  for (const auto& [from, to] : cm.hops) {
    const unsigned sp = site_of(code, from);
    if (sp == 0) continue;
    if (site_of(next, to) != 0) return std::nullopt;  // unpicked occupant
    next |= static_cast<Code>(sp) << (2 * to);
  }
  return next;
}

struct GoalMasks {
  // For each flat site: demanded species (0 = DontCare) and the exactness
  // flag deciding whether DontCare sites must be empty.
  std::vector<unsigned> demand;
  bool exact = false;

  bool satisfied(Code code) const {
    for (std::size_t i = 0; i < demand.size(); ++i) {
      const unsigned sp = (code >> (2 * i)) & 3u;
      if (demand[i] == 0) {
        if (exact && sp != 0) return false;
      } else if (sp != demand[i]) {
        return false;
      }
    }
    return true;
  }
};

}  // namespace

const std::vector<AodMove>& enumerate_all_moves(int rows, int cols) {
  return move_table(rows, cols).moves;
}

KStarResult bfs_kstar(const ArrayState& x0, const TargetPattern& goal,
                      MatchMode goal_mode, const OracleLimits& limits) {
  if (x0.rows() != goal.rows() || x0.cols() != goal.cols()) {
    throw std::invalid_argument("bfs_kstar: shape mismatch");
  }
  const bool dual = x0.atom_count(Species::Two) > 0 ||
                    goal.demand_count(Species::Two) > 0;
  const int sites = x0.site_count();
  const int cap = dual ? limits.max_sites_dual : limits.max_sites_single;
  KStarResult result;
  if (sites > cap || sites > 16) {
    result.status = KStarResult::Status::TooLarge;
    return result;
  }

  GoalMasks masks;
  masks.exact = (goal_mode == MatchMode::Exact);
  masks.demand.resize(static_cast<std::size_t>(sites));
  for (int r = 0; r < goal.rows(); ++r) {
    for (int c = 0; c < goal.cols(); ++c) {
      masks.demand[static_cast<std::size_t>(r) * goal.cols() + c] =
          static_cast<unsigned>(demanded_species(goal.at({r, c})));
    }
  }

  const MoveTable& table = move_table(x0.rows(), x0.cols());
  const Code start = encode(x0);
  if (masks.satisfied(start)) {
    result.status = KStarResult::Status::Solved;
    result.kstar = 0;
    return result;
  }

  // parent code and the move index that produced each visited state.
  std::unordered_map<Code, std::pair<Code, int>> visited;
  visited.reserve(1024);
  visited.emplace(start, std::make_pair(start, -1));
  std::vector<Code> frontier{start};
  std::vector<Code> next_frontier;

  for (int depth = 1; depth <= limits.max_depth; ++depth) {
    next_frontier.clear();
    for (const Code code : frontier) {
      ++result.states_expanded;
      for (std::size_t mi = 0; mi < table.compiled.size(); ++mi) {
        const std::optional<Code> next = apply_encoded(code, table.compiled[mi]);
        if (!next || visited.count(*next)) continue;
        visited.emplace(*next, std::make_pair(code, static_cast<int>(mi)));
        if (visited.size() > limits.max_states) {
          result.status = KStarResult::Status::LimitExceeded;
          return result;
        }
        if (masks.satisfied(*next)) {
          // Reconstruct the witness back to the start.
          std::vector<int> move_indices;
          Code at = *next;
          while (at != start) {
            const auto& [parent, mi2] = visited.at(at);
            move_indices.push_back(mi2);
            at = parent;
          }
          std::reverse(move_indices.begin(), move_indices.end());
          ArrayState replay_state = x0;
          for (const int idx : move_indices) {
            replay_state = result.witness.push(replay_state, table.moves[idx]);
          }
          result.status = KStarResult::Status::Solved;
          result.kstar = depth;
          return result;
        }
        next_frontier.push_back(*next);
      }
    }
    if (next_frontier.empty()) {
      result.status = KStarResult::Status::Unreachable;
      return result;
    }
    std::swap(frontier, next_frontier);
  }
  result.status = KStarResult::Status::LimitExceeded;
  return result;
}

LowerBound lower_bound_time(const ArrayState& state, const TargetPattern& target,
                            const NoiseParams& params, Metric metric) {
  if (!sufficient_atoms(state, target)) {
    throw std::invalid_argument("lower_bound_time: insufficient atoms");
  }
  LowerBound lb;
  for (const Species sp : {Species::One, Species::Two}) {
    std::vector<Site> vacancies;
    for (int r = 0; r < state.rows(); ++r) {
      for (int c = 0; c < state.cols(); ++c) {
        const Site s{r, c};
        if (demanded_species(target.at(s)) == sp && state.at(s) != sp) {
          vacancies.push_back(s);
        }
      }
    }
    if (vacancies.empty()) continue;
    const std::vector<Site> atoms = state.occupied_sites(sp);
    const CostMatrix cost = build_cost_matrix(atoms, vacancies, metric);
    const Assignment a = solve_lbap(cost);
    lb.d_minmax = std::max(lb.d_minmax, a.max_cost);
  }
  lb.t_lb_s = params.site_spacing_m * lb.d_minmax / params.tweezer_speed_mps;
  return lb;
}

}  // namespace atomsort
