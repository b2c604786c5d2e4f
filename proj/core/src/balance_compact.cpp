#include <optional>
#include <stdexcept>

#include "planner_common.hpp"

namespace atomsort {

namespace {

struct Block {
  int row0 = 0, row1 = 0, col0 = 0, col1 = 0;  // inclusive

  int width() const { return col1 - col0 + 1; }
  bool contains_row(int r) const { return r >= row0 && r <= row1; }
};

/// The demands must form one fully filled rectangle of Species1.
std::optional<Block> as_rect_block(const TargetPattern& target) {
  Block b{target.rows(), -1, target.cols(), -1};
  int count = 0;
  for (int r = 0; r < target.rows(); ++r) {
    for (int c = 0; c < target.cols(); ++c) {
      const Demand d = target.at({r, c});
      if (d == Demand::DontCare) continue;
      if (d != Demand::Species1) return std::nullopt;
      b.row0 = std::min(b.row0, r);
      b.row1 = std::max(b.row1, r);
      b.col0 = std::min(b.col0, c);
      b.col1 = std::max(b.col1, c);
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  if (count != (b.row1 - b.row0 + 1) * (b.col1 - b.col0 + 1)) {
    return std::nullopt;
  }
  return b;
}

class BalanceCompact {
 public:
  BalanceCompact(ArrayState work, const Block& block, MoveProgram& program)
      : work_(std::move(work)), block_(block), program_(program) {}

  ArrayState run() {
    balance(0, work_.rows() - 1);
    for (int r = block_.row0; r <= block_.row1; ++r) compact_row(r);
    return work_;
  }

 private:
  int row_demand(int r) const { return block_.contains_row(r) ? block_.width() : 0; }

  int region_demand(int r0, int r1) const {
    int n = 0;
    for (int r = r0; r <= r1; ++r) n += row_demand(r);
    return n;
  }

  int region_supply(int r0, int r1) const {
    int n = 0;
    for (int r = r0; r <= r1; ++r) {
      for (int c = 0; c < work_.cols(); ++c) n += work_.occupied({r, c});
    }
    return n;
  }

  void emit(const AodMove& move) { work_ = program_.push(work_, move); }

  /// One whole-row vertical shift: every listed column's atom in `row`
  /// moves by `dr`.
  void emit_row_shift(int row, int dr, const std::vector<int>& cols) {
    AodMove move;
    move.row_tones.push_back({row, dr});
    for (const int c : cols) move.col_tones.push_back({c, 0});
    emit(move);
  }

  void balance(int r0, int r1) {
    if (r0 >= r1) return;
    const int mid = r0 + (r1 - r0) / 2;
    const int demand_top = region_demand(r0, mid);
    const int demand_bot = region_demand(mid + 1, r1);
    const int supply_top = region_supply(r0, mid);
    const int supply_bot = region_supply(mid + 1, r1);
    if (supply_top < demand_top) {
      transfer(demand_top - supply_top, r0, mid, mid + 1, r1, /*upward=*/true);
    } else if (supply_bot < demand_bot) {
      transfer(demand_bot - supply_bot, mid + 1, r1, r0, mid, /*upward=*/false);
    }
    balance(r0, mid);
    balance(mid + 1, r1);
  }

  /// Moves `deficit` atoms from the donor half into the recipient half
  /// across the cut. Parallel single-row shifts; a domino transport of one
  /// atom is the fallback when no whole-row shift applies.
  void transfer(int deficit, int rec0, int rec1, int don0, int don1,
                bool upward) {
    const int cols = work_.cols();
    const int rec_border = upward ? rec1 : rec0;
    const int don_border = upward ? don0 : don1;
    const int cross_dr = upward ? -1 : +1;
    long guard = static_cast<long>(work_.site_count()) * 8 + 64;

    while (deficit > 0) {
      if (--guard < 0) {
        throw std::logic_error("balance_compact: transfer guard tripped");
      }
      // Cross the cut in every column that is ready, up to the deficit.
      std::vector<int> ready;
      for (int c = 0; c < cols && static_cast<int>(ready.size()) < deficit; ++c) {
        if (work_.occupied({don_border, c}) && !work_.occupied({rec_border, c})) {
          ready.push_back(c);
        }
      }
      if (!ready.empty()) {
        emit_row_shift(don_border, cross_dr, ready);
        deficit -= static_cast<int>(ready.size());
        continue;
      }
      // Pull donor atoms toward the cut, nearest row first.
      bool moved = false;
      for (int step = 1; don_border + (upward ? step : -step) >= std::min(don0, don1) &&
                         don_border + (upward ? step : -step) <= std::max(don0, don1);
           ++step) {
        const int r = don_border + (upward ? step : -step);
        std::vector<int> movable;
        for (int c = 0; c < cols; ++c) {
          if (work_.occupied({r, c}) && !work_.occupied({r + cross_dr, c})) {
            movable.push_back(c);
          }
        }
        if (!movable.empty()) {
          emit_row_shift(r, cross_dr, movable);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      // Open recipient holes: shift recipient atoms away from the cut,
      // nearest row first.
      for (int step = 0; rec_border + (upward ? -step : step) >= std::min(rec0, rec1) &&
                         rec_border + (upward ? -step : step) <= std::max(rec0, rec1);
           ++step) {
        const int r = rec_border + (upward ? -step : step);
        const int away = r + cross_dr;
        if (away < std::min(rec0, rec1) || away > std::max(rec0, rec1)) continue;
        std::vector<int> movable;
        for (int c = 0; c < cols; ++c) {
          if (work_.occupied({r, c}) && !work_.occupied({away, c})) {
            movable.push_back(c);
          }
        }
        if (!movable.empty()) {
          emit_row_shift(r, cross_dr, movable);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      // No aligned column: carry one atom around with a domino transport.
      cross_one_by_domino(rec0, rec1, don0, don1);
      --deficit;
    }
  }

  void cross_one_by_domino(int rec0, int rec1, int don0, int don1) {
    Site hole{-1, -1}, atom{-1, -1};
    int best = -1;
    for (int r = don0; r <= don1; ++r) {
      for (int c = 0; c < work_.cols(); ++c) {
        if (!work_.occupied({r, c})) continue;
        for (int hr = rec0; hr <= rec1; ++hr) {
          for (int hc = 0; hc < work_.cols(); ++hc) {
            if (work_.occupied({hr, hc})) continue;
            const int d = chebyshev({r, c}, {hr, hc});
            if (best == -1 || d < best) {
              best = d;
              atom = {r, c};
              hole = {hr, hc};
            }
          }
        }
      }
    }
    if (best == -1) {
      throw std::logic_error("balance_compact: no atom/hole pair for transfer");
    }
    const auto status = detail::execute_pair(work_, program_, atom, hole,
                                             SpeciesRule::Single, RouteRules{});
    if (status != DominoResult::Status::Ok) {
      throw std::logic_error("balance_compact: transfer transport failed");
    }
  }

  std::optional<int> leftmost_empty(int r) const {
    for (int c = block_.col0; c <= block_.col1; ++c) {
      if (!work_.occupied({r, c})) return c;
    }
    return std::nullopt;
  }

  std::optional<int> rightmost_empty(int r) const {
    for (int c = block_.col1; c >= block_.col0; --c) {
      if (!work_.occupied({r, c})) return c;
    }
    return std::nullopt;
  }

  /// Tones shoving the nearest occupied run one step toward the empty
  /// block cell `e`. Pulls from the left when an atom exists there,
  /// otherwise from the right.
  std::vector<Tone> tones_toward(int r, int e, bool prefer_left) const {
    const auto run_tones = [&](int edge, int dir) {
      std::vector<Tone> tones;
      int c = edge;
      while (c >= 0 && c < work_.cols() && work_.occupied({r, c})) c -= dir;
      for (int cc = c + dir; cc != edge + dir; cc += dir) {
        tones.push_back({cc, dir});
      }
      std::sort(tones.begin(), tones.end(),
                [](const Tone& a, const Tone& b) { return a.index < b.index; });
      return tones;
    };
    int left = -1;
    for (int c = e - 1; c >= 0; --c) {
      if (work_.occupied({r, c})) {
        left = c;
        break;
      }
    }
    int right = -1;
    for (int c = e + 1; c < work_.cols(); ++c) {
      if (work_.occupied({r, c})) {
        right = c;
        break;
      }
    }
    if (left >= 0 && (prefer_left || right < 0)) return run_tones(left, +1);
    if (right >= 0) return run_tones(right, -1);
    return {};
  }

  void compact_row(int r) {
    long guard = static_cast<long>(work_.cols()) * work_.cols() * 4 + 64;
    while (true) {
      const auto eL = leftmost_empty(r);
      if (!eL) break;
      if (--guard < 0) {
        throw std::logic_error("balance_compact: compact guard tripped");
      }
      AodMove move;
      move.row_tones.push_back({r, 0});
      move.col_tones = tones_toward(r, *eL, /*prefer_left=*/true);
      const auto eR = rightmost_empty(r);
      if (eR && *eR != *eL) {
        const std::vector<Tone> extra = tones_toward(r, *eR, /*prefer_left=*/false);
        AodMove merged = move;
        merged.col_tones.insert(merged.col_tones.end(), extra.begin(),
                                extra.end());
        std::sort(merged.col_tones.begin(), merged.col_tones.end(),
                  [](const Tone& a, const Tone& b) { return a.index < b.index; });
        if (is_valid_move(work_, merged).ok) move = merged;
      }
      if (move.col_tones.empty()) {
        throw std::logic_error("balance_compact: row supply exhausted");
      }
      if (!is_valid_move(work_, move).ok) {
        throw std::logic_error("balance_compact: compact move invalid");
      }
      emit(move);
    }
  }

  ArrayState work_;
  Block block_;
  MoveProgram& program_;
};

}  // namespace

PlanResult balance_compact_plan(const ArrayState& state,
                                const TargetPattern& target,
                                const PlannerConfig& /*config*/) {
  if (state.rows() != target.rows() || state.cols() != target.cols()) {
    return PlanResult::fail(PlanFailure::Kind::UnsupportedTarget,
                            "shape mismatch");
  }
  if (state.atom_count(Species::Two) > 0) {
    return PlanResult::fail(PlanFailure::Kind::UnsupportedTarget,
                            "balance_compact is single-species");
  }
  const std::optional<Block> block = as_rect_block(target);
  if (!block) {
    return PlanResult::fail(PlanFailure::Kind::UnsupportedTarget,
                            "target is not a rectangular block");
  }
  if (!sufficient_atoms(state, target)) {
    return PlanResult::fail(PlanFailure::Kind::InsufficientAtoms);
  }
  MoveProgram program;
  if (matches_target(state, target, MatchMode::Subset)) {
    return PlanResult::success(std::move(program));
  }
  BalanceCompact planner(state, *block, program);
  const ArrayState done = planner.run();
  if (!matches_target(done, target, MatchMode::Subset)) {
    return PlanResult::fail(PlanFailure::Kind::UnresolvableCollision,
                            "compaction finished but target unmet");
  }
  return PlanResult::success(std::move(program));
}

}  // namespace atomsort
