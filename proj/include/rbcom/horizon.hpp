#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rbcom/scenario.hpp"

namespace rbcom {

// Everything about one transmitted frame that later stages need.
struct FrameState {
  std::uint64_t k = 0;   // frame number, 1-based
  Vec3 q_prev;           // receiver position at the start of the round [m]
  double cos_theta = 0;  // direction cosine at the start of the round
  double f_prev = 0;     // carrier during the round [Hz]
  double delta = 0;      // capture fraction at the end-of-round position
  double t = 0;          // round duration [s]
  double b = 0;          // bandwidth [Hz]
  double a_sq = 0;       // largest sustainable squared channel coefficient [W]
  double capacity = 0;   // rate bound at full modulation depth [bit/s]
};

enum class HorizonTermination {
  capacity_below_threshold,  // the next frame's best rate fell to/below c_th
  max_frames_cap,            // the configured frame cap stopped the scan
};

struct HorizonResult {
  std::uint64_t k0 = 0;            // frames the link can still deliver
  std::vector<FrameState> frames;  // per-frame state, empty if record=false
  double t_up = 0;                 // total link-holding time, sum of t_k [s]
  double moved = 0;                // straight-line distance covered [m]
  HorizonTermination reason = HorizonTermination::capacity_below_threshold;
  double capacity_next = 0;        // the rate that failed the threshold test
  double f_end = 0;                // carrier after the last frame [Hz]
  std::uint64_t n_sym = 0;         // symbols per frame, fixed at the start
  double delta0 = 0;               // capture fraction at the initial range
  double p_t = 0;                  // initial steady-state circulating power [W]
  double p_th = 0;                 // oscillation threshold pump power [W]
  std::uint64_t compensations = 0; // carrier resets performed
};

// Frame-by-frame scan of the degrading link until the capacity bound drops to
// the scenario threshold or the frame cap is reached. Throws
// below_threshold_error if the pump cannot start oscillation at the initial
// range. With record=false only aggregates are kept (O(1) memory).
HorizonResult compute_horizon(const Scenario& scn, const CompensationPolicy& policy,
                              std::uint64_t max_frames, bool record = true);

// Convenience overload using the scenario's own policy and cap.
HorizonResult compute_horizon(const Scenario& scn, bool record = true);

// Straight-line distance between the receiver position after the last
// recorded frame and the initial position.
double moving_distance(std::span<const FrameState> frames, const Vec3& v);

}  // namespace rbcom
