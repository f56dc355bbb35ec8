#include "rbcom/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace rbcom {

using nlohmann::json;

double Scenario::n0_w_per_hz() const {
  return 1e-3 * std::pow(10.0, n0_dbm_per_hz / 10.0);
}

void Scenario::validate() const {
  const auto demand = [](bool ok, const char* what) {
    if (!ok) {
      throw config_error(std::string("scenario: ") + what);
    }
  };
  demand(optics.lambda > 0, "optics.lambda_m must be > 0");
  demand(optics.phi > 0, "optics.phi_rad must be > 0");
  demand(optics.s_r > 0, "optics.s_r_m2 must be > 0");
  demand(optics.alpha > 0 && optics.alpha < 1, "optics.alpha must be in (0, 1)");
  demand(medium.f0 > 0, "medium.f0_hz must be > 0");
  demand(medium.i_s0 > 0, "medium.i_s0_w_per_m2 must be > 0");
  demand(medium.df_h > 0, "medium.df_h_hz must be > 0");
  demand(medium.s_g > 0, "medium.s_g_m2 must be > 0");
  demand(medium.eta > 0 && medium.eta <= 1, "medium.eta must be in (0, 1]");
  demand(medium.p_in > 0, "medium.p_in_w must be > 0");
  demand(norm(q0) > 0, "q0 must have nonzero range");
  demand(b1 > 0, "b1_hz must be > 0");
  demand(c_th > 0, "c_th_bit_per_s must be > 0");
  demand(p_r_max > 0, "p_r_max_w is required and must be > 0");
  if (compensation.enabled) {
    demand(compensation.trigger_hz > 0, "compensation.trigger_hz must be > 0");
  }
  demand(max_frames >= 1, "max_frames must be >= 1");
  demand(spca.beta < 0, "spca.beta must be < 0");
  demand(spca.epsilon > 0, "spca.epsilon must be > 0");
  demand(spca.max_outer >= 1, "spca.max_outer must be >= 1");
  demand(spca.gap_tol > 0, "spca.gap_tol must be > 0");
  demand(spca.max_newton >= 10, "spca.max_newton must be >= 10");
}

void set_polar_geometry(Scenario& scn, double range_m, double speed_m_per_s, double theta0_deg) {
  if (!(range_m > 0)) {
    throw config_error("scenario: range_m must be > 0");
  }
  if (!(speed_m_per_s >= 0)) {
    throw config_error("scenario: speed_m_per_s must be >= 0");
  }
  const double th = theta0_deg * std::numbers::pi / 180.0;
  scn.q0 = {range_m, 0.0, 0.0};
  scn.v = {speed_m_per_s * std::cos(th), speed_m_per_s * std::sin(th), 0.0};
}

namespace {

double num_field(const json& v, const std::string& key) {
  if (!v.is_number()) {
    throw config_error("scenario: '" + key + "' must be a number");
  }
  return v.get<double>();
}

Vec3 vec_field(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number()) {
    throw config_error("scenario: '" + key + "' must be an array of 3 numbers");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

std::uint64_t uint_field(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw config_error("scenario: '" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

void parse_optics(const json& j, OpticsParams& o) {
  for (const auto& [key, val] : j.items()) {
    if (key == "lambda_m") {
      o.lambda = num_field(val, key);
    } else if (key == "phi_rad") {
      o.phi = num_field(val, key);
    } else if (key == "s_r_m2") {
      o.s_r = num_field(val, key);
    } else if (key == "alpha") {
      o.alpha = num_field(val, key);
    } else {
      throw config_error("scenario: unknown key 'optics." + key + "'");
    }
  }
}

void parse_medium(const json& j, MediumParams& m) {
  for (const auto& [key, val] : j.items()) {
    if (key == "f0_hz") {
      m.f0 = num_field(val, key);
    } else if (key == "i_s0_w_per_m2") {
      m.i_s0 = num_field(val, key);
    } else if (key == "df_h_hz") {
      m.df_h = num_field(val, key);
    } else if (key == "s_g_m2") {
      m.s_g = num_field(val, key);
    } else if (key == "eta") {
      m.eta = num_field(val, key);
    } else if (key == "p_in_w") {
      m.p_in = num_field(val, key);
    } else {
      throw config_error("scenario: unknown key 'medium." + key + "'");
    }
  }
}

void parse_compensation(const json& j, CompensationPolicy& c) {
  for (const auto& [key, val] : j.items()) {
    if (key == "enabled") {
      if (!val.is_boolean()) {
        throw config_error("scenario: 'compensation.enabled' must be a boolean");
      }
      c.enabled = val.get<bool>();
    } else if (key == "trigger_hz") {
      c.trigger_hz = num_field(val, key);
    } else {
      throw config_error("scenario: unknown key 'compensation." + key + "'");
    }
  }
}

void parse_spca(const json& j, SpcaConfig& s) {
  for (const auto& [key, val] : j.items()) {
    if (key == "beta") {
      s.beta = num_field(val, key);
    } else if (key == "epsilon") {
      s.epsilon = num_field(val, key);
    } else if (key == "max_outer") {
      s.max_outer = static_cast<int>(uint_field(val, key));
    } else if (key == "gap_tol") {
      s.gap_tol = num_field(val, key);
    } else if (key == "max_newton") {
      s.max_newton = static_cast<int>(uint_field(val, key));
    } else if (key == "seed") {
      s.seed = uint_field(val, key);
    } else {
      throw config_error("scenario: unknown key 'spca." + key + "'");
    }
  }
}

}  // namespace

Scenario load_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw config_error(std::string("scenario: JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) {
    throw config_error("scenario: top level must be an object");
  }

  Scenario s;
  bool have_q0 = false;
  bool have_v = false;
  bool have_range = false;
  bool have_speed = false;
  bool have_theta = false;
  double range = 0;
  double speed = 0;
  double theta = 0;

  for (const auto& [key, val] : j.items()) {
    if (key == "optics") {
      parse_optics(val, s.optics);
    } else if (key == "medium") {
      parse_medium(val, s.medium);
    } else if (key == "q0") {
      s.q0 = vec_field(val, key);
      have_q0 = true;
    } else if (key == "v") {
      s.v = vec_field(val, key);
      have_v = true;
    } else if (key == "range_m") {
      range = num_field(val, key);
      have_range = true;
    } else if (key == "speed_m_per_s") {
      speed = num_field(val, key);
      have_speed = true;
    } else if (key == "theta0_deg") {
      theta = num_field(val, key);
      have_theta = true;
    } else if (key == "b1_hz") {
      s.b1 = num_field(val, key);
    } else if (key == "n0_dbm_per_hz") {
      s.n0_dbm_per_hz = num_field(val, key);
    } else if (key == "c_th_bit_per_s") {
      s.c_th = num_field(val, key);
    } else if (key == "p_r_max_w") {
      s.p_r_max = num_field(val, key);
    } else if (key == "compensation") {
      parse_compensation(val, s.compensation);
    } else if (key == "max_frames") {
      s.max_frames = uint_field(val, key);
    } else if (key == "spca") {
      parse_spca(val, s.spca);
    } else if (key == "_comment") {
      // Free-form annotation slot; ignored so config files can carry notes.
    } else {
      throw config_error("scenario: unknown key '" + key + "'");
    }
  }

  const bool any_polar = have_range || have_speed || have_theta;
  if (any_polar) {
    if (have_q0 || have_v) {
      throw config_error("scenario: give either q0/v vectors or polar geometry, not both");
    }
    if (!(have_range && have_speed && have_theta)) {
      throw config_error(
          "scenario: polar geometry needs all of range_m, speed_m_per_s, theta0_deg");
    }
    set_polar_geometry(s, range, speed, theta);
  }

  s.validate();
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("scenario: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string save_scenario(const Scenario& scn) {
  json j;
  j["optics"] = {{"lambda_m", scn.optics.lambda},
                 {"phi_rad", scn.optics.phi},
                 {"s_r_m2", scn.optics.s_r},
                 {"alpha", scn.optics.alpha}};
  j["medium"] = {{"f0_hz", scn.medium.f0},
                 {"i_s0_w_per_m2", scn.medium.i_s0},
                 {"df_h_hz", scn.medium.df_h},
                 {"s_g_m2", scn.medium.s_g},
                 {"eta", scn.medium.eta},
                 {"p_in_w", scn.medium.p_in}};
  j["q0"] = {scn.q0.x, scn.q0.y, scn.q0.z};
  j["v"] = {scn.v.x, scn.v.y, scn.v.z};
  j["b1_hz"] = scn.b1;
  j["n0_dbm_per_hz"] = scn.n0_dbm_per_hz;
  j["c_th_bit_per_s"] = scn.c_th;
  j["p_r_max_w"] = scn.p_r_max;
  j["compensation"] = {{"enabled", scn.compensation.enabled},
                       {"trigger_hz", scn.compensation.trigger_hz}};
  j["max_frames"] = scn.max_frames;
  j["spca"] = {{"beta", scn.spca.beta},     {"epsilon", scn.spca.epsilon},
               {"max_outer", scn.spca.max_outer}, {"gap_tol", scn.spca.gap_tol},
               {"max_newton", scn.spca.max_newton}, {"seed", scn.spca.seed}};
  return j.dump(2);
}

}  // namespace rbcom
