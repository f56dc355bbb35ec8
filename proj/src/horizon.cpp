#include "rbcom/horizon.hpp"

#include <cmath>

#include "rbcom/channel.hpp"
#include "rbcom/kinematics.hpp"

namespace rbcom {

HorizonResult compute_horizon(const Scenario& scn, const CompensationPolicy& policy,
                              std::uint64_t max_frames, bool record) {
  scn.validate();
  const OpticsParams& o = scn.optics;
  const MediumParams& m = scn.medium;
  const double n0 = scn.n0_w_per_hz();
  const double speed = norm(scn.v);

  HorizonResult r;
  r.delta0 = link_loss(scn.q0, o);
  r.p_th = threshold_power(r.delta0, o, m);
  r.p_t = stable_power(r.delta0, o, m);  // throws below_threshold_error if unsustainable
  r.n_sym = symbols_per_frame(scn.b1, scn.q0);

  // Rolling state, indexed relative to the trailing frame count k0:
  // q_at is q_{k0}, q_next is q_{k0+1}, f_at is f_{k0}; a_sq, delta_next,
  // b_next and t_next describe candidate frame k0+1.
  Vec3 q_at = scn.q0;
  Vec3 q_next = advance_position(q_at, scn.v);
  double f_at = m.f0;
  double a_sq = r.p_t;
  double delta_next = link_loss(q_next, o);
  double b_next = frame_bandwidth(r.n_sym, q_at);
  double t_next = round_duration(q_at);

  double t_up = 0.0;
  double t_up_residue = 0.0;  // Kahan compensation

  if (record) {
    r.frames.reserve(4096);
  }

  for (;;) {
    const double peak = peak_power(a_sq, 0.0, delta_next, o.alpha);
    const double cap = capacity_approx(peak, b_next, n0);
    if (cap <= scn.c_th) {
      r.reason = HorizonTermination::capacity_below_threshold;
      r.capacity_next = cap;
      break;
    }
    if (r.k0 == max_frames) {
      r.reason = HorizonTermination::max_frames_cap;
      r.capacity_next = cap;
      break;
    }
    ++r.k0;

    const double cos_theta = speed == 0.0 ? 0.0 : direction_cosine(q_at, scn.v);
    if (record) {
      r.frames.push_back(FrameState{r.k0, q_at, cos_theta, f_at, delta_next, t_next, b_next,
                                    a_sq, cap});
    }
    {
      const double y = t_next - t_up_residue;
      const double s = t_up + y;
      t_up_residue = (s - t_up) - y;
      t_up = s;
    }

    double f_now = next_frequency(f_at, speed, cos_theta);
    if (policy.enabled && std::abs(f_now - m.f0) >= policy.trigger_hz) {
      f_now = m.f0;
      ++r.compensations;
    }
    a_sq = link_gain(a_sq, f_now, delta_next, o, m);

    q_at = q_next;
    q_next = advance_position(q_at, scn.v);
    f_at = f_now;
    delta_next = link_loss(q_next, o);
    b_next = frame_bandwidth(r.n_sym, q_at);
    t_next = round_duration(q_at);
  }

  r.t_up = t_up;
  r.moved = norm(q_at - scn.q0);
  r.f_end = f_at;
  return r;
}

HorizonResult compute_horizon(const Scenario& scn, bool record) {
  return compute_horizon(scn, scn.compensation, scn.max_frames, record);
}

double moving_distance(std::span<const FrameState> frames, const Vec3& v) {
  if (frames.empty()) {
    return 0.0;
  }
  const Vec3 q_end = advance_position(frames.back().q_prev, v);
  return norm(q_end - frames.front().q_prev);
}

}  // namespace rbcom
