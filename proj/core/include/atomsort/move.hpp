#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atomsort/grid.hpp"

namespace atomsort {

/// One AOD frequency tone: the row (or column) it addresses and its unit
/// displacement in {-1, 0, +1}.
struct Tone {
  int index = 0;
  int shift = 0;

  friend bool operator==(const Tone&, const Tone&) = default;
};

/// One crossed-AOD operation. Every atom sitting at an intersection of a
/// selected row and a selected column is transported by (row shift,
/// column shift). Tones are kept sorted by index and may never cross:
/// both the indices and the post-move positions are strictly increasing.
struct AodMove {
  std::vector<Tone> row_tones;
  std::vector<Tone> col_tones;

  friend bool operator==(const AodMove&, const AodMove&) = default;
};

/// Transport of a single atom by one site (unit Chebyshev displacement).
struct SingleMove {
  Site from;
  Site to;

  friend bool operator==(const SingleMove&, const SingleMove&) = default;
};

bool is_unit_step(const SingleMove& m);

/// AodMove carrying exactly the given single-atom move.
AodMove to_aod_move(const SingleMove& m);

struct MoveCheck {
  bool ok = false;
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Structural invariants only (no occupancy): at least one tone per axis,
/// strictly increasing indices, non-crossing displaced positions, all
/// positions within an rows x cols grid.
MoveCheck check_move_structure(const AodMove& move, int rows, int cols);

/// Occupied intersection sites of the move's tone grid, row-major order.
std::vector<Site> pickup_sites(const ArrayState& state, const AodMove& move);

/// Destination of a picked site under the move's tone shifts.
Site displaced_site(const AodMove& move, Site picked);

/// Full validity against a state: structure holds, the pickup set is
/// non-empty, every destination is in bounds and distinct, and no picked
/// atom lands on an occupied site that is not itself picked up.
MoveCheck is_valid_move(const ArrayState& state, const AodMove& move);

struct AppliedMove {
  ArrayState state;
  std::vector<Site> picked;
};

/// Applies a valid move, returning the new state and the picked sites.
/// Throws std::invalid_argument when is_valid_move rejects the move.
AppliedMove apply_move(const ArrayState& state, const AodMove& move);

struct CombineResult {
  bool ok = false;
  AodMove move;
  std::string conflict;

  explicit operator bool() const { return ok; }
};

/// Minimal AodMove whose tone sets are the unions of the single moves'
/// rows and columns with their displacements. Not combinable when a row
/// (or column) would need two different displacements, or when the merged
/// tones would cross after displacement.
CombineResult combine_moves(std::span<const SingleMove> moves);

/// One executed AodMove together with the sites it picked up.
struct MoveRecord {
  AodMove move;
  std::vector<Site> picked;
};

/// Ordered sequence of applied AodMoves. Every contained move was valid
/// against the state at its application point.
struct MoveProgram {
  std::vector<MoveRecord> moves;

  int size() const { return static_cast<int>(moves.size()); }
  bool empty() const { return moves.empty(); }

  /// Applies `move` to `state`, appends the record, returns the new state.
  ArrayState push(const ArrayState& state, const AodMove& move);
};

/// Replays a program from `initial` through apply_move; throws if any move
/// is invalid at its application point.
ArrayState replay(const ArrayState& initial, const MoveProgram& program);

}  // namespace atomsort
