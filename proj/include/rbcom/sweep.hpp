#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rbcom/frame_sim.hpp"
#include "rbcom/horizon.hpp"
#include "rbcom/scenario.hpp"
#include "rbcom/spca.hpp"

namespace rbcom {

enum class SweepAxis { theta0_deg, speed, p_in, range };

// Axis name as used in CSV headers and CLI flags; parse accepts unit-suffixed
// aliases too.
std::string axis_name(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);

struct SweepSpec {
  SweepAxis axis = SweepAxis::theta0_deg;
  std::vector<double> values;
  bool optimize = false;      // also run the throughput optimizer per point
  std::size_t workers = 1;
};

struct SweepRow {
  double value = 0;
  std::uint64_t k0 = 0;
  double t_up = 0;
  double moved = 0;
  double throughput = 0;
  double omega = 0;
  bool optimized = false;
  bool converged = false;
  std::string error;  // empty on success; per-point failures do not stop the sweep
};

// Scenario with one axis value applied; exposed for tests and the CLI.
Scenario apply_axis(const Scenario& base, SweepAxis axis, double value);

// Runs the horizon (and optionally the optimizer) at every axis value.
// Per-point domain failures (below threshold, non-convergence) are recorded
// in the row; configuration errors abort. Worker threads only parallelize
// independent points; row order always follows the value order.
std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec);

// Deterministic text renderings (%.12g floats, fixed column order).
std::string sweep_csv(std::span<const SweepRow> rows, SweepAxis axis);
std::string sweep_json(std::span<const SweepRow> rows, SweepAxis axis);

std::string horizon_csv(const HorizonResult& h);
std::string horizon_json(const HorizonResult& h, bool include_frames);

std::string solution_csv(const SpcaSolution& sol);
std::string solution_json(const SpcaSolution& sol);

std::string simulation_csv(const SimulationRun& run);
std::string simulation_json(const SimulationRun& run, bool dump_symbols);

}  // namespace rbcom
