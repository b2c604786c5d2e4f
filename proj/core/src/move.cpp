#include "atomsort/move.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace atomsort {

namespace {

std::string tone_str(const char* axis, const Tone& t) {
  return std::string(axis) + " " + std::to_string(t.index) + " (shift " +
         std::to_string(t.shift) + ")";
}

MoveCheck check_tone_list(const std::vector<Tone>& tones, const char* axis,
                          int limit) {
  if (tones.empty()) {
    return {false, std::string("no ") + axis + " tones"};
  }
  int prev_index = -1;
  int prev_post = -1;
  for (const Tone& t : tones) {
    if (t.shift < -1 || t.shift > 1) {
      return {false, "displacement out of {-1,0,+1} at " + tone_str(axis, t)};
    }
    if (t.index <= prev_index) {
      return {false, std::string(axis) + " tone indices not strictly increasing"};
    }
    const int post = t.index + t.shift;
    if (post < 0 || post >= limit) {
      return {false, "post-move position out of bounds at " + tone_str(axis, t)};
    }
    if (post <= prev_post) {
      return {false, std::string(axis) + " tones cross after displacement at " +
                         tone_str(axis, t)};
    }
    if (t.index < 0 || t.index >= limit) {
      return {false, "tone index out of bounds at " + tone_str(axis, t)};
    }
    prev_index = t.index;
    prev_post = post;
  }
  return {true, {}};
}

}  // namespace

bool is_unit_step(const SingleMove& m) {
  const int dr = m.to.row - m.from.row;
  const int dc = m.to.col - m.from.col;
  return dr >= -1 && dr <= 1 && dc >= -1 && dc <= 1 && (dr != 0 || dc != 0);
}

AodMove to_aod_move(const SingleMove& m) {
  if (!is_unit_step(m)) {
    throw std::invalid_argument("to_aod_move: not a unit Chebyshev step");
  }
  AodMove move;
  move.row_tones.push_back({m.from.row, m.to.row - m.from.row});
  move.col_tones.push_back({m.from.col, m.to.col - m.from.col});
  return move;
}

MoveCheck check_move_structure(const AodMove& move, int rows, int cols) {
  if (MoveCheck rc = check_tone_list(move.row_tones, "row", rows); !rc.ok) {
    return rc;
  }
  if (MoveCheck cc = check_tone_list(move.col_tones, "col", cols); !cc.ok) {
    return cc;
  }
  return {true, {}};
}

std::vector<Site> pickup_sites(const ArrayState& state, const AodMove& move) {
  std::vector<Site> picked;
  for (const Tone& rt : move.row_tones) {
    for (const Tone& ct : move.col_tones) {
      const Site s{rt.index, ct.index};
      if (state.in_bounds(s) && state.occupied(s)) picked.push_back(s);
    }
  }
  return picked;
}

Site displaced_site(const AodMove& move, Site picked) {
  int dr = 0;
  int dc = 0;
  for (const Tone& rt : move.row_tones) {
    if (rt.index == picked.row) dr = rt.shift;
  }
  for (const Tone& ct : move.col_tones) {
    if (ct.index == picked.col) dc = ct.shift;
  }
  return {picked.row + dr, picked.col + dc};
}

MoveCheck is_valid_move(const ArrayState& state, const AodMove& move) {
  if (MoveCheck sc = check_move_structure(move, state.rows(), state.cols());
      !sc.ok) {
    return sc;
  }
  const std::vector<Site> picked = pickup_sites(state, move);
  if (picked.empty()) {
    return {false, "empty pickup set"};
  }
  // Tone monotonicity already guarantees in-bounds and pairwise-distinct
  // destinations; both are still asserted here.
  std::vector<Site> dests;
  dests.reserve(picked.size());
  for (const Site p : picked) {
    const Site d = displaced_site(move, p);
    if (!state.in_bounds(d)) {
      return {false, "destination out of bounds"};
    }
    dests.push_back(d);
  }
  {
    std::vector<Site> sorted = dests;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return {false, "two picked atoms share a destination"};
    }
  }
  for (std::size_t i = 0; i < picked.size(); ++i) {
    const Site d = dests[i];
    if (state.occupied(d) &&
        !std::binary_search(picked.begin(), picked.end(), d)) {
      return {false, "destination (" + std::to_string(d.row) + "," +
                         std::to_string(d.col) +
                         ") occupied by an unpicked atom"};
    }
  }
  return {true, {}};
}

AppliedMove apply_move(const ArrayState& state, const AodMove& move) {
  if (MoveCheck vc = is_valid_move(state, move); !vc.ok) {
    throw std::invalid_argument("apply_move: invalid move: " + vc.reason);
  }
  const std::vector<Site> picked = pickup_sites(state, move);
  ArrayState next = state;
  std::vector<std::pair<Site, Species>> landed;
  landed.reserve(picked.size());
  for (const Site p : picked) {
    landed.emplace_back(displaced_site(move, p), state.at(p));
    next.set(p, Species::Empty);
  }
  for (const auto& [dest, sp] : landed) next.set(dest, sp);
  return {std::move(next), picked};
}

CombineResult combine_moves(std::span<const SingleMove> moves) {
  if (moves.empty()) {
    return {false, {}, "no moves to combine"};
  }
  std::map<int, int> row_shift;
  std::map<int, int> col_shift;
  for (const SingleMove& m : moves) {
    if (!is_unit_step(m)) {
      return {false, {}, "not a unit Chebyshev step"};
    }
    const int dr = m.to.row - m.from.row;
    const int dc = m.to.col - m.from.col;
    if (auto [it, inserted] = row_shift.try_emplace(m.from.row, dr);
        !inserted && it->second != dr) {
      return {false, {}, "row " + std::to_string(m.from.row) +
                             " assigned two displacements"};
    }
    if (auto [it, inserted] = col_shift.try_emplace(m.from.col, dc);
        !inserted && it->second != dc) {
      return {false, {}, "col " + std::to_string(m.from.col) +
                             " assigned two displacements"};
    }
  }
  AodMove out;
  int prev_post = -2;
  for (const auto& [index, shift] : row_shift) {
    const int post = index + shift;
    if (post <= prev_post) {
      return {false, {}, "row tones " + std::to_string(index) +
                             " cross after displacement"};
    }
    prev_post = post;
    out.row_tones.push_back({index, shift});
  }
  prev_post = -2;
  for (const auto& [index, shift] : col_shift) {
    const int post = index + shift;
    if (post <= prev_post) {
      return {false, {}, "col tones " + std::to_string(index) +
                             " cross after displacement"};
    }
    prev_post = post;
    out.col_tones.push_back({index, shift});
  }
  return {true, std::move(out), {}};
}

ArrayState MoveProgram::push(const ArrayState& state, const AodMove& move) {
  AppliedMove applied = apply_move(state, move);
  moves.push_back({move, std::move(applied.picked)});
  return std::move(applied.state);
}

ArrayState replay(const ArrayState& initial, const MoveProgram& program) {
  ArrayState state = initial;
  for (const MoveRecord& rec : program.moves) {
    state = apply_move(state, rec.move).state;
  }
  return state;
}

}  // namespace atomsort
