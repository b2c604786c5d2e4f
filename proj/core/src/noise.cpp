#include "atomsort/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace atomsort {

void NoiseParams::validate() const {
  if (p_load < 0.0 || p_load > 1.0) {
    throw std::invalid_argument("NoiseParams: p_load outside [0,1]");
  }
  if (p_handoff < 0.0 || p_handoff > 1.0) {
    throw std::invalid_argument("NoiseParams: p_handoff outside [0,1]");
  }
  if (!(vacuum_lifetime_s > 0.0)) {
    throw std::invalid_argument("NoiseParams: vacuum lifetime must be > 0");
  }
  if (!(site_spacing_m > 0.0) || !(tweezer_speed_mps > 0.0)) {
    throw std::invalid_argument("NoiseParams: spacing and speed must be > 0");
  }
  if (settle_time_s < 0.0) {
    throw std::invalid_argument("NoiseParams: settle time must be >= 0");
  }
}

double survival_probability(double t_s, double vacuum_lifetime_s, int n_atoms) {
  if (t_s < 0.0 || !(vacuum_lifetime_s > 0.0) || n_atoms < 0) {
    throw std::invalid_argument("survival_probability: domain violation");
  }
  return std::exp(-static_cast<double>(n_atoms) * t_s / vacuum_lifetime_s);
}

ArrayState load_array(int rows, int cols, const NoiseParams& params, Rng& rng,
                      SpeciesMode mode) {
  params.validate();
  ArrayState state(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double u = rng.next_unit();
      if (mode == SpeciesMode::Single) {
        if (u < params.p_load) state.set({r, c}, Species::One);
      } else {
        if (u < params.p_load / 2.0) {
          state.set({r, c}, Species::One);
        } else if (u < params.p_load) {
          state.set({r, c}, Species::Two);
        }
      }
    }
  }
  return state;
}

double move_duration(const AodMove& move, const NoiseParams& params) {
  const auto shifting = [](const std::vector<Tone>& tones) {
    return std::any_of(tones.begin(), tones.end(),
                       [](const Tone& t) { return t.shift != 0; });
  };
  const bool diagonal = shifting(move.row_tones) && shifting(move.col_tones);
  const double traverse =
      params.site_spacing_m / params.tweezer_speed_mps * (diagonal ? std::sqrt(2.0) : 1.0);
  return params.settle_time_s + traverse;
}

NoiseStep step_noise(const ArrayState& state, const AodMove& move,
                     double elapsed_s, const NoiseParams& params, Rng& rng) {
  params.validate();
  NoiseStep out{state, {}, false};
  std::vector<Site> landed;

  const std::vector<Site> picked = pickup_sites(state, move);
  if (!picked.empty()) {
    // Losses may have emptied some sites since planning; removals alone
    // can never invalidate a previously valid move.
    if (MoveCheck vc = is_valid_move(state, move); !vc.ok) {
      throw std::invalid_argument("step_noise: invalid move: " + vc.reason);
    }
    AppliedMove applied = apply_move(state, move);
    out.state = std::move(applied.state);
    out.transported = true;
    landed.reserve(applied.picked.size());
    for (const Site p : applied.picked) landed.push_back(displaced_site(move, p));
  }

  const double p_vac =
      std::isinf(params.vacuum_lifetime_s)
          ? 0.0
          : 1.0 - std::exp(-elapsed_s / params.vacuum_lifetime_s);

  if (p_vac > 0.0) {
    for (int r = 0; r < out.state.rows(); ++r) {
      for (int c = 0; c < out.state.cols(); ++c) {
        const Site s{r, c};
        if (out.state.occupied(s) && rng.bernoulli(p_vac)) {
          out.state.set(s, Species::Empty);
          out.losses.push_back({LossEvent::Kind::VacuumLoss, s, -1, 0.0});
        }
      }
    }
  }
  if (params.p_handoff > 0.0) {
    for (const Site s : landed) {
      if (out.state.occupied(s) && rng.bernoulli(params.p_handoff)) {
        out.state.set(s, Species::Empty);
        out.losses.push_back({LossEvent::Kind::HandoffLoss, s, -1, 0.0});
      }
    }
  }
  return out;
}

}  // namespace atomsort
