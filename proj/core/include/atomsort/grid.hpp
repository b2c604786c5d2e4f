#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace atomsort {

/// Occupancy tag for one tweezer site.
enum class Species : std::uint8_t { Empty = 0, One = 1, Two = 2 };

/// What a target pattern demands at one site. Exact matching treats
/// DontCare as must-be-empty; subset matching ignores it.
enum class Demand : std::uint8_t { DontCare = 0, Species1 = 1, Species2 = 2 };

inline Species demanded_species(Demand d) {
  return d == Demand::Species1 ? Species::One
       : d == Demand::Species2 ? Species::Two
                               : Species::Empty;
}

struct Site {
  int row = 0;
  int col = 0;

  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};

inline int chebyshev(Site a, Site b) {
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr > dc ? dr : dc;
}

inline int manhattan(Site a, Site b) {
  const int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  const int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr + dc;
}

/// Occupancy of an m x n tweezer grid. At most one atom per site; a site
/// holds Empty, One or Two. Fixed dimensions for the lifetime of the state.
class ArrayState {
 public:
  ArrayState() = default;
  ArrayState(int rows, int cols)
      : rows_(rows), cols_(cols),
        grid_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
              Species::Empty) {
    if (rows < 1 || cols < 1) {
      throw std::invalid_argument("ArrayState: dimensions must be >= 1");
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int site_count() const { return rows_ * cols_; }

  bool in_bounds(Site s) const {
    return s.row >= 0 && s.row < rows_ && s.col >= 0 && s.col < cols_;
  }

  Species at(Site s) const { return grid_[index(s)]; }
  bool occupied(Site s) const { return at(s) != Species::Empty; }

  void set(Site s, Species sp) { grid_[index(s)] = sp; }

  int atom_count() const {
    int n = 0;
    for (const Species sp : grid_) n += (sp != Species::Empty);
    return n;
  }

  int atom_count(Species which) const {
    int n = 0;
    for (const Species sp : grid_) n += (sp == which);
    return n;
  }

  /// Occupied sites in row-major order.
  std::vector<Site> occupied_sites() const {
    std::vector<Site> out;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        if (occupied({r, c})) out.push_back({r, c});
      }
    }
    return out;
  }

  std::vector<Site> occupied_sites(Species which) const {
    std::vector<Site> out;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        if (at({r, c}) == which) out.push_back({r, c});
      }
    }
    return out;
  }

  friend bool operator==(const ArrayState&, const ArrayState&) = default;

 private:
  std::size_t index(Site s) const {
    if (!in_bounds(s)) throw std::out_of_range("ArrayState: site out of bounds");
    return static_cast<std::size_t>(s.row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(s.col);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Species> grid_;
};

/// Per-site demands evaluated against an ArrayState of the same shape.
class TargetPattern {
 public:
  TargetPattern() = default;
  TargetPattern(int rows, int cols)
      : rows_(rows), cols_(cols),
        cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
               Demand::DontCare) {
    if (rows < 1 || cols < 1) {
      throw std::invalid_argument("TargetPattern: dimensions must be >= 1");
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool in_bounds(Site s) const {
    return s.row >= 0 && s.row < rows_ && s.col >= 0 && s.col < cols_;
  }

  Demand at(Site s) const { return cells_[index(s)]; }
  void set(Site s, Demand d) { cells_[index(s)] = d; }

  int demand_count() const {
    int n = 0;
    for (const Demand d : cells_) n += (d != Demand::DontCare);
    return n;
  }

  int demand_count(Species which) const {
    int n = 0;
    for (const Demand d : cells_) n += (demanded_species(d) == which);
    return n;
  }

  /// Demanded sites in row-major order, optionally filtered by species.
  std::vector<Site> demand_sites() const {
    std::vector<Site> out;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        if (at({r, c}) != Demand::DontCare) out.push_back({r, c});
      }
    }
    return out;
  }

  std::vector<Site> demand_sites(Species which) const {
    std::vector<Site> out;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        if (demanded_species(at({r, c})) == which) out.push_back({r, c});
      }
    }
    return out;
  }

  friend bool operator==(const TargetPattern&, const TargetPattern&) = default;

 private:
  std::size_t index(Site s) const {
    if (!in_bounds(s)) throw std::out_of_range("TargetPattern: site out of bounds");
    return static_cast<std::size_t>(s.row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(s.col);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Demand> cells_;
};

enum class MatchMode { Exact, Subset };

/// Exact: every demanded site holds the demanded species and every other
/// site is empty. Subset: every demanded site holds the demanded species;
/// extra atoms are permitted. Throws on shape mismatch.
bool matches_target(const ArrayState& state, const TargetPattern& target,
                    MatchMode mode);

/// Number of atoms (per species) still missing from their demanded sites.
int unsatisfied_demands(const ArrayState& state, const TargetPattern& target);

/// Sufficient atoms to realize the target: per-species atom counts are at
/// least the per-species demand counts.
bool sufficient_atoms(const ArrayState& state, const TargetPattern& target);

}  // namespace atomsort

template <>
struct std::hash<atomsort::Site> {
  std::size_t operator()(const atomsort::Site& s) const noexcept {
    return (static_cast<std::size_t>(s.row) << 20) ^
           static_cast<std::size_t>(s.col);
  }
};
