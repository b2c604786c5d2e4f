#pragma once

#include <limits>
#include <vector>

#include "atomsort/move.hpp"
#include "atomsort/rng.hpp"

namespace atomsort {

/// Stochastic-loading and loss-model parameters plus the geometry/speed
/// constants behind the simulated-time model.
struct NoiseParams {
  double p_load = 0.6;
  double vacuum_lifetime_s = std::numeric_limits<double>::infinity();
  double p_handoff = 0.0;
  double site_spacing_m = 5e-6;
  double tweezer_speed_mps = 0.1;
  double settle_time_s = 100e-6;

  void validate() const;
};

struct LossEvent {
  enum class Kind { VacuumLoss, HandoffLoss };

  Kind kind = Kind::VacuumLoss;
  Site site;
  int move_index = -1;
  double time_s = 0.0;
};

/// Probability that all `n` atoms survive for `t` seconds under a vacuum
/// lifetime of `t_v`: exp(-n t / t_v).
double survival_probability(double t_s, double vacuum_lifetime_s, int n_atoms);

enum class SpeciesMode { Single, Dual };

/// Stochastic loading: each site independently holds an atom with
/// probability p_load. Dual mode splits the fill evenly between the two
/// species (p/2 each). Sites are drawn in row-major order, one uniform
/// draw per site, so the result is reproducible from the seed.
ArrayState load_array(int rows, int cols, const NoiseParams& params, Rng& rng,
                      SpeciesMode mode = SpeciesMode::Single);

/// Duration of one AodMove: settle time plus one site traversal, with the
/// sqrt(2) diagonal factor whenever the move has both a shifting row tone
/// and a shifting column tone.
double move_duration(const AodMove& move, const NoiseParams& params);

struct NoiseStep {
  ArrayState state;
  std::vector<LossEvent> losses;
  bool transported = false;  // false when losses emptied the pickup set
};

/// Applies the move and the loss model atomically: the transport happens
/// first (skipped when nothing is left to pick up), then every atom is
/// lost independently with 1 - exp(-elapsed / t_v), and every surviving
/// picked atom additionally with p_handoff. Draw order is row-major over
/// sites, then pickup order, so seeded runs reproduce exactly.
NoiseStep step_noise(const ArrayState& state, const AodMove& move,
                     double elapsed_s, const NoiseParams& params, Rng& rng);

}  // namespace atomsort
