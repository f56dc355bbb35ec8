#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "rbcom/gain_medium.hpp"
#include "rbcom/link_budget.hpp"
#include "rbcom/vec3.hpp"

namespace rbcom {

// Thrown for malformed or inconsistent configuration input.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Idealized carrier re-centering: when the accumulated Doppler drift reaches
// trigger_hz, the carrier is reset to line center before the gain update.
struct CompensationPolicy {
  bool enabled = false;
  double trigger_hz = 30e9;  // default: quarter linewidth
};

struct SpcaConfig {
  double beta = -1e3;          // lower box bound for ln-domain variables
  double epsilon = 0.01;       // outer stopping threshold on ||delta z||_2
  int max_outer = 100;         // outer iteration cap
  double gap_tol = 1e-8;       // inner barrier duality-gap tolerance (relative)
  int max_newton = 120;        // Newton iteration cap per barrier stage
  std::uint64_t seed = 0;      // nonzero: randomize the initial point
};

// Full description of one link run. Physics fields default to the reference
// design point; p_r_max has no default and must be set explicitly.
struct Scenario {
  OpticsParams optics;
  MediumParams medium;
  Vec3 q0 = {1000.0, 0.0, 0.0};  // initial transmitter-to-receiver vector [m]
  Vec3 v = {5.0, 0.0, 0.0};      // receiver velocity [m/s]
  double b1 = 1e9;               // first-frame design bandwidth [Hz]
  double n0_dbm_per_hz = -174.0; // receiver noise density [dBm/Hz]
  double c_th = 0.1;             // capacity threshold ending the horizon [bit/s]
  double p_r_max = -1.0;         // receiver power ceiling [W]; required, no default
  CompensationPolicy compensation;
  std::uint64_t max_frames = 10'000'000;
  SpcaConfig spca;

  double n0_w_per_hz() const;
  // Throws config_error when a field is out of its documented domain
  // (notably an unset p_r_max).
  void validate() const;
};

// Place the receiver on the +x axis at the given range with speed at angle
// theta0 (degrees) from the line of sight, in the x-y plane.
void set_polar_geometry(Scenario& scn, double range_m, double speed_m_per_s, double theta0_deg);

// JSON round trip. Unknown keys are rejected; missing keys keep defaults
// except p_r_max, which is mandatory. Geometry may be given either as vectors
// ("q0": [x,y,z], "v": [x,y,z]) or polar ("range_m", "speed_m_per_s",
// "theta0_deg").
Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);
std::string save_scenario(const Scenario& scn);

}  // namespace rbcom
