#include "rbcom/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"

namespace rbcom {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::theta0_deg:
      return "theta0_deg";
    case SweepAxis::speed:
      return "speed_m_per_s";
    case SweepAxis::p_in:
      return "p_in_w";
    case SweepAxis::range:
      return "range_m";
  }
  return "?";
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "theta0" || name == "theta0_deg") {
    return SweepAxis::theta0_deg;
  }
  if (name == "speed" || name == "speed_m_per_s") {
    return SweepAxis::speed;
  }
  if (name == "p_in" || name == "p_in_w" || name == "pin") {
    return SweepAxis::p_in;
  }
  if (name == "range" || name == "range_m" || name == "q0_norm") {
    return SweepAxis::range;
  }
  throw config_error("sweep: unknown axis '" + name +
                     "' (expected theta0, speed, p_in or range)");
}

Scenario apply_axis(const Scenario& base, SweepAxis axis, double value) {
  Scenario scn = base;
  switch (axis) {
    case SweepAxis::theta0_deg:
      set_polar_geometry(scn, norm(base.q0), norm(base.v), value);
      break;
    case SweepAxis::speed: {
      if (!(value >= 0)) {
        throw config_error("sweep: speed value must be >= 0");
      }
      const double nv = norm(base.v);
      const Vec3 dir = nv > 0 ? (1.0 / nv) * base.v : (1.0 / norm(base.q0)) * base.q0;
      scn.v = value * dir;
      break;
    }
    case SweepAxis::p_in:
      scn.medium.p_in = value;
      break;
    case SweepAxis::range: {
      if (!(value > 0)) {
        throw config_error("sweep: range value must be > 0");
      }
      scn.q0 = (value / norm(base.q0)) * base.q0;
      break;
    }
  }
  return scn;
}

std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec) {
  base.validate();
  std::vector<SweepRow> rows(spec.values.size());

  // Domain failures (no oscillation, optimizer breakdown) stay in the row so
  // the sweep keeps going; configuration errors abort the whole sweep.
  const auto run_point = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.value = spec.values[i];
    try {
      const Scenario scn = apply_axis(base, spec.axis, spec.values[i]);
      const HorizonResult h = compute_horizon(scn, spec.optimize);
      row.k0 = h.k0;
      row.t_up = h.t_up;
      row.moved = h.moved;
      if (spec.optimize) {
        const SpcaSolution sol = spca_optimize(h, scn);
        row.throughput = sol.throughput;
        row.omega = sol.omega;
        row.converged = sol.converged;
        row.optimized = true;
        if (!sol.converged) {
          row.error = "optimizer did not converge within max_outer";
        }
      }
    } catch (const below_threshold_error& e) {
      row.error = e.what();
    } catch (const convergence_error& e) {
      row.error = e.what();
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(std::max<std::size_t>(spec.workers, 1), spec.values.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
      run_point(i);
    }
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= spec.values.size()) {
          return;
        }
        try {
          run_point(i);
        } catch (...) {
          const std::scoped_lock lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows, SweepAxis axis) {
  std::string out = axis_name(axis) +
                    ",k0,t_up_s,moved_m,throughput_bits,omega_bits_per_j,converged,error\n";
  for (const SweepRow& r : rows) {
    out += fmt(r.value);
    out += ',';
    out += r.error.empty() ? std::to_string(r.k0) : "";
    out += ',';
    out += r.error.empty() ? fmt(r.t_up) : "";
    out += ',';
    out += r.error.empty() ? fmt(r.moved) : "";
    out += ',';
    out += r.optimized && r.error.empty() ? fmt(r.throughput) : "";
    out += ',';
    out += r.optimized && r.error.empty() ? fmt(r.omega) : "";
    out += ',';
    out += r.optimized ? (r.converged ? "1" : "0") : "";
    out += ',';
    out += csv_escape(r.error);
    out += '\n';
  }
  return out;
}

std::string sweep_json(std::span<const SweepRow> rows, SweepAxis axis) {
  json j;
  j["axis"] = axis_name(axis);
  json arr = json::array();
  for (const SweepRow& r : rows) {
    json o;
    o["value"] = r.value;
    if (r.error.empty()) {
      o["k0"] = r.k0;
      o["t_up_s"] = r.t_up;
      o["moved_m"] = r.moved;
      if (r.optimized) {
        o["throughput_bits"] = r.throughput;
        o["omega_bits_per_j"] = r.omega;
        o["converged"] = r.converged;
      }
    } else {
      o["error"] = r.error;
    }
    arr.push_back(std::move(o));
  }
  j["rows"] = std::move(arr);
  return j.dump(2);
}

std::string horizon_csv(const HorizonResult& h) {
  std::string out =
      "k,q_prev_x_m,q_prev_y_m,q_prev_z_m,cos_theta,f_prev_hz,delta,t_s,b_hz,a_sq_w,"
      "capacity_bit_per_s\n";
  for (const FrameState& fr : h.frames) {
    out += std::to_string(fr.k);
    out += ',';
    out += fmt(fr.q_prev.x);
    out += ',';
    out += fmt(fr.q_prev.y);
    out += ',';
    out += fmt(fr.q_prev.z);
    out += ',';
    out += fmt(fr.cos_theta);
    out += ',';
    out += fmt(fr.f_prev);
    out += ',';
    out += fmt(fr.delta);
    out += ',';
    out += fmt(fr.t);
    out += ',';
    out += fmt(fr.b);
    out += ',';
    out += fmt(fr.a_sq);
    out += ',';
    out += fmt(fr.capacity);
    out += '\n';
  }
  return out;
}

namespace {

const char* reason_name(HorizonTermination r) {
  return r == HorizonTermination::capacity_below_threshold ? "capacity_below_threshold"
                                                           : "max_frames_cap";
}

}  // namespace

std::string horizon_json(const HorizonResult& h, bool include_frames) {
  json j;
  j["k0"] = h.k0;
  j["t_up_s"] = h.t_up;
  j["moved_m"] = h.moved;
  j["reason"] = reason_name(h.reason);
  j["capacity_next_bit_per_s"] = h.capacity_next;
  j["f_end_hz"] = h.f_end;
  j["n_sym"] = h.n_sym;
  j["delta0"] = h.delta0;
  j["p_t_w"] = h.p_t;
  j["p_th_w"] = h.p_th;
  j["compensations"] = h.compensations;
  if (include_frames) {
    json arr = json::array();
    for (const FrameState& fr : h.frames) {
      arr.push_back({{"k", fr.k},
                     {"q_prev_m", {fr.q_prev.x, fr.q_prev.y, fr.q_prev.z}},
                     {"cos_theta", fr.cos_theta},
                     {"f_prev_hz", fr.f_prev},
                     {"delta", fr.delta},
                     {"t_s", fr.t},
                     {"b_hz", fr.b},
                     {"a_sq_w", fr.a_sq},
                     {"capacity_bit_per_s", fr.capacity}});
    }
    j["frames"] = std::move(arr);
  }
  return j.dump(2);
}

std::string solution_csv(const SpcaSolution& sol) {
  std::string out = "k,mu,a_sq_w,p_w\n";
  for (std::size_t i = 0; i < sol.mu.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += fmt(sol.mu[i]);
    out += ',';
    out += fmt(sol.a_sq[i]);
    out += ',';
    out += fmt(sol.p[i]);
    out += '\n';
  }
  return out;
}

std::string solution_json(const SpcaSolution& sol) {
  json j;
  j["throughput_bits"] = sol.throughput;
  j["omega_bits_per_j"] = sol.omega;
  j["iterations"] = sol.iterations;
  j["converged"] = sol.converged;
  j["max_h_violation_rel"] = sol.max_h_violation_rel;
  j["objective_trace"] = sol.objective_trace;
  j["mu"] = sol.mu;
  j["a_sq_w"] = sol.a_sq;
  j["p_w"] = sol.p;
  return j.dump(2);
}

std::string simulation_csv(const SimulationRun& run) {
  std::string out = "k,mu,a_target_w_sqrt,w_min,w_max,max_rel_error\n";
  for (std::size_t i = 0; i < run.frames.size(); ++i) {
    const FrameSignals& fr = run.frames[i];
    double w_min = 1.0;
    double w_max = 0.0;
    for (double w : fr.w) {
      w_min = std::min(w_min, w);
      w_max = std::max(w_max, w);
    }
    out += std::to_string(i + 1);
    out += ',';
    out += fmt(run.mu[i]);
    out += ',';
    out += fmt(fr.a_target);
    out += ',';
    out += fmt(w_min);
    out += ',';
    out += fmt(w_max);
    out += ',';
    out += fmt(run.report.max_rel_error);
    out += '\n';
  }
  return out;
}

std::string simulation_json(const SimulationRun& run, bool dump_symbols) {
  json j;
  j["max_rel_error"] = run.report.max_rel_error;
  j["ok"] = run.report.ok;
  json arr = json::array();
  for (std::size_t i = 0; i < run.frames.size(); ++i) {
    const FrameSignals& fr = run.frames[i];
    double w_min = 1.0;
    double w_max = 0.0;
    for (double w : fr.w) {
      w_min = std::min(w_min, w);
      w_max = std::max(w_max, w);
    }
    json o = {{"k", i + 1},          {"mu", run.mu[i]}, {"delta", run.deltas[i]},
              {"a_target", fr.a_target}, {"w_min", w_min},  {"w_max", w_max}};
    if (dump_symbols) {
      o["s"] = fr.s;
      o["w"] = fr.w;
      o["x"] = fr.x;
      o["y"] = fr.y;
      o["noise"] = fr.noise;
    }
    arr.push_back(std::move(o));
  }
  j["frames"] = std::move(arr);
  return j.dump(2);
}

}  // namespace rbcom
