#pragma once

#include <span>
#include <vector>

#include "atomsort/grid.hpp"

namespace atomsort {

enum class Metric { Euclidean, Manhattan, Chebyshev };

double site_distance(Site a, Site b, Metric metric);

/// Distance matrix between target vacancies (rows) and excess atoms
/// (columns). Callers guarantee cols >= rows via the sufficiency check.
struct CostMatrix {
  int n_targets = 0;
  int n_atoms = 0;
  Metric metric = Metric::Euclidean;
  std::vector<double> entries;  // row-major, n_targets x n_atoms

  double at(int target, int atom) const {
    return entries[static_cast<std::size_t>(target) *
                       static_cast<std::size_t>(n_atoms) +
                   static_cast<std::size_t>(atom)];
  }
};

/// Entry (k, l) is the metric distance between target k and atom l.
/// Throws std::invalid_argument when either list is empty or there are
/// fewer atoms than targets.
CostMatrix build_cost_matrix(std::span<const Site> atoms,
                             std::span<const Site> targets, Metric metric);

/// Injective mapping target index -> atom index plus its cost summary.
struct Assignment {
  std::vector<int> atom_for_target;
  double total_cost = 0.0;
  double max_cost = 0.0;
};

/// Linear sum assignment: minimizes total_cost over injective assignments
/// of every target to a distinct atom (surplus atoms stay unassigned).
/// Equal-cost ties are canonicalized toward the lowest atom index at the
/// lowest target index.
Assignment solve_lsap(const CostMatrix& c);

/// Linear bottleneck assignment: minimizes max_cost (d_minmax). Binary
/// search over the sorted distinct entries with a maximum-bipartite-
/// matching feasibility check on the thresholded matrix.
Assignment solve_lbap(const CostMatrix& c);

}  // namespace atomsort
