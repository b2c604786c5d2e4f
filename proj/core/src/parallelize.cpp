#include <stdexcept>

#include "atomsort/planners.hpp"

namespace atomsort {

namespace {

ArrayState apply_single(const ArrayState& state, const SingleMove& m) {
  return apply_move(state, to_aod_move(m)).state;
}

}  // namespace

std::vector<AodMove> parallelize(std::span<const SingleMove> moves,
                                 const ArrayState& state) {
  std::vector<AodMove> out;
  if (moves.empty()) return out;

  // group_base: state before the open move; group_seq: state after the
  // open move's constituents applied one by one.
  ArrayState group_base = state;
  ArrayState group_seq = state;
  std::vector<SingleMove> group;

  auto close_group = [&]() {
    const CombineResult cr = combine_moves(group);
    if (!cr.ok) {
      throw std::logic_error("parallelize: open group not combinable: " +
                             cr.conflict);
    }
    out.push_back(cr.move);
    group_base = group_seq;
    group.clear();
  };

  for (const SingleMove& m : moves) {
    if (!group.empty()) {
      group.push_back(m);
      const CombineResult cr = combine_moves(group);
      bool accepted = false;
      if (cr.ok && is_valid_move(group_seq, to_aod_move(m)).ok &&
          is_valid_move(group_base, cr.move).ok) {
        // The X'_Par = X'_No-Par test: the combined move must reproduce
        // the sequential result exactly (unintended tone-grid pickups of
        // bystander atoms show up as a mismatch).
        const ArrayState seq_next = apply_single(group_seq, m);
        const ArrayState par_next = apply_move(group_base, cr.move).state;
        if (par_next == seq_next) {
          group_seq = seq_next;
          accepted = true;
        }
      }
      if (accepted) continue;
      group.pop_back();
      close_group();
    }
    if (MoveCheck vc = is_valid_move(group_base, to_aod_move(m)); !vc.ok) {
      throw std::invalid_argument(
          "parallelize: move not sequentially valid: " + vc.reason);
    }
    group_seq = apply_single(group_base, m);
    group.push_back(m);
  }
  if (!group.empty()) close_group();
  return out;
}

}  // namespace atomsort
