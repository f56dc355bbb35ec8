// Command-line front end: scenario ingestion, horizon scans, throughput
// optimization, symbol-level simulation, parameter sweeps and gain curves,
// emitted as CSV or JSON.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rbcom/gain_medium.hpp"
#include "rbcom/horizon.hpp"
#include "rbcom/link_budget.hpp"
#include "rbcom/scenario.hpp"
#include "rbcom/spca.hpp"
#include "rbcom/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitThreshold = 3;
constexpr int kExitNonConvergence = 4;

struct CommonOpts {
  std::string scenario_path;
  std::string out_path;           // empty: stdout
  std::string format = "csv";     // csv | json
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> max_frames;
  std::string compensate;         // "" (keep scenario), "off", or trigger in Hz
};

void add_common(CLI::App* cmd, CommonOpts& o, bool scenario_required) {
  auto* sc = cmd->add_option("--scenario", o.scenario_path,
                             "Scenario JSON file (defaults apply to omitted fields)");
  if (scenario_required) {
    sc->required();
  }
  cmd->add_option("--out", o.out_path, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Override the scenario's optimizer/simulation seed");
  cmd->add_option("--max-frames", o.max_frames, "Override the scenario's frame cap");
  cmd->add_option("--compensate", o.compensate,
                  "Carrier reset policy: 'off' or the trigger detune in Hz");
}

rbcom::Scenario load_with_overrides(const CommonOpts& o) {
  rbcom::Scenario scn = o.scenario_path.empty() ? rbcom::Scenario{}
                                                : rbcom::load_scenario_file(o.scenario_path);
  if (o.seed) {
    scn.spca.seed = *o.seed;
  }
  if (o.max_frames) {
    scn.max_frames = *o.max_frames;
  }
  if (!o.compensate.empty()) {
    if (o.compensate == "off") {
      scn.compensation.enabled = false;
    } else {
      try {
        scn.compensation.trigger_hz = std::stod(o.compensate);
      } catch (const std::exception&) {
        throw rbcom::config_error("--compensate expects 'off' or a trigger in Hz, got '" +
                                  o.compensate + "'");
      }
      scn.compensation.enabled = true;
    }
  }
  return scn;
}

void write_output(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') {
      std::cout << '\n';
    }
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) {
    throw rbcom::config_error("cannot open output file '" + o.out_path + "'");
  }
  out << text;
  if (!out) {
    throw rbcom::config_error("write failed for output file '" + o.out_path + "'");
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Fixed-point gain curves: gain vs detuning at a handful of input intensities.
struct GainCurve {
  std::vector<double> detune_hz;
  std::vector<double> rel_i;
  std::vector<std::vector<double>> gain;  // gain[j][i]: intensity j, detune i
};

GainCurve make_gain_curve(const rbcom::MediumParams& medium, const std::vector<double>& rel_i,
                          double span_hz, int points) {
  GainCurve c;
  c.rel_i = rel_i;
  c.gain.resize(rel_i.size());
  const double i_s_center = rbcom::saturation_intensity(medium.f0, medium);
  for (int i = 0; i < points; ++i) {
    const double detune = points == 1 ? 0.0 : -span_hz + 2.0 * span_hz * i / (points - 1);
    c.detune_hz.push_back(detune);
    for (std::size_t j = 0; j < rel_i.size(); ++j) {
      c.gain[j].push_back(rbcom::solve_gain(rel_i[j] * i_s_center, medium.f0 + detune, medium));
    }
  }
  return c;
}

std::string gain_curve_csv(const GainCurve& c) {
  std::string out = "detune_hz";
  for (double r : c.rel_i) {
    out += ",g_at_i_rel_" + fmt(r);
  }
  out += '\n';
  for (std::size_t i = 0; i < c.detune_hz.size(); ++i) {
    out += fmt(c.detune_hz[i]);
    for (std::size_t j = 0; j < c.rel_i.size(); ++j) {
      out += ',';
      out += fmt(c.gain[j][i]);
    }
    out += '\n';
  }
  return out;
}

std::string gain_curve_json(const GainCurve& c) {
  nlohmann::json j;
  j["detune_hz"] = c.detune_hz;
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < c.rel_i.size(); ++i) {
    arr.push_back({{"i_rel", c.rel_i[i]}, {"gain", c.gain[i]}});
  }
  j["curves"] = std::move(arr);
  return j.dump(2);
}

int dispatch(const CLI::App& app, const CommonOpts& common, const std::string& sweep_arg,
             bool sweep_optimize, std::size_t workers, std::size_t truncate,
             std::size_t sim_frames, std::size_t sim_symbols, double sim_safety,
             double sim_noise_variance, bool dump_symbols, double curve_span_hz,
             int curve_points, const std::vector<double>& curve_intensities) {
  const bool json = common.format == "json";

  if (app.got_subcommand("horizon")) {
    const rbcom::Scenario scn = load_with_overrides(common);
    const rbcom::HorizonResult h = rbcom::compute_horizon(scn);
    write_output(common, json ? rbcom::horizon_json(h, true) : rbcom::horizon_csv(h));
    return kExitOk;
  }

  if (app.got_subcommand("optimize")) {
    const rbcom::Scenario scn = load_with_overrides(common);
    const rbcom::HorizonResult h = rbcom::compute_horizon(scn);
    const rbcom::SpcaSolution sol = rbcom::spca_optimize(h, scn, truncate);
    write_output(common, json ? rbcom::solution_json(sol) : rbcom::solution_csv(sol));
    return sol.converged ? kExitOk : kExitNonConvergence;
  }

  if (app.got_subcommand("simulate")) {
    const rbcom::Scenario scn = load_with_overrides(common);
    const rbcom::HorizonResult h = rbcom::compute_horizon(scn);
    const rbcom::SimulationRun run =
        rbcom::simulate_link(scn, h, sim_frames, sim_symbols, sim_safety, sim_noise_variance,
                             common.seed.value_or(scn.spca.seed));
    write_output(common,
                 json ? rbcom::simulation_json(run, dump_symbols) : rbcom::simulation_csv(run));
    return kExitOk;
  }

  if (app.got_subcommand("sweep")) {
    const rbcom::Scenario scn = load_with_overrides(common);
    const auto eq = sweep_arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == sweep_arg.size()) {
      throw rbcom::config_error("--sweep expects <axis>=<v1,v2,...>, got '" + sweep_arg + "'");
    }
    rbcom::SweepSpec spec;
    spec.axis = rbcom::parse_axis(sweep_arg.substr(0, eq));
    std::string list = sweep_arg.substr(eq + 1);
    for (std::size_t pos = 0; pos <= list.size();) {
      const std::size_t comma = std::min(list.find(',', pos), list.size());
      const std::string tok = list.substr(pos, comma - pos);
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) {
          throw std::invalid_argument(tok);
        }
        spec.values.push_back(v);
      } catch (const std::exception&) {
        throw rbcom::config_error("--sweep value '" + tok + "' is not a number");
      }
      pos = comma + 1;
    }
    spec.optimize = sweep_optimize;
    spec.workers = workers;
    const std::vector<rbcom::SweepRow> rows = rbcom::run_sweep(scn, spec);
    write_output(common,
                 json ? rbcom::sweep_json(rows, spec.axis) : rbcom::sweep_csv(rows, spec.axis));
    return kExitOk;
  }

  if (app.got_subcommand("gain-curve")) {
    const rbcom::Scenario scn = load_with_overrides(common);
    if (curve_points < 1) {
      throw rbcom::config_error("--points must be >= 1");
    }
    if (!(curve_span_hz > 0)) {
      throw rbcom::config_error("--span-hz must be > 0");
    }
    for (double r : curve_intensities) {
      if (!(r >= 0)) {
        throw rbcom::config_error("--intensities entries must be >= 0");
      }
    }
    const GainCurve c = make_gain_curve(scn.medium, curve_intensities, curve_span_hz, curve_points);
    write_output(common, json ? gain_curve_json(c) : gain_curve_csv(c));
    return kExitOk;
  }

  std::cerr << app.help();
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonant-beam link simulator: Doppler-limited frame horizon, "
               "throughput optimization, and symbol-level channel checks"};
  app.require_subcommand(0, 1);

  CommonOpts common;

  CLI::App* horizon = app.add_subcommand("horizon", "Frame-by-frame link horizon scan");
  CLI::App* optimize = app.add_subcommand("optimize", "Maximize horizon throughput");
  CLI::App* simulate = app.add_subcommand("simulate", "Symbol-level frame simulation");
  CLI::App* sweep = app.add_subcommand("sweep", "Horizon/optimizer runs over one swept axis");
  CLI::App* curve = app.add_subcommand("gain-curve", "Saturated gain vs carrier detuning");

  for (CLI::App* cmd : {horizon, optimize, simulate, sweep}) {
    add_common(cmd, common, /*scenario_required=*/true);
  }
  add_common(curve, common, /*scenario_required=*/false);

  std::size_t truncate = 0;
  optimize->add_option("--truncate", truncate,
                       "Optimize only the first n frames of the horizon (0: all)");

  std::size_t sim_frames = 5;
  std::size_t sim_symbols = 1024;
  double sim_safety = 0.99;
  double sim_noise_variance = 0.0;
  bool dump_symbols = false;
  simulate->add_option("--frames", sim_frames, "Frames to simulate")->capture_default_str();
  simulate->add_option("--symbols", sim_symbols, "Symbols per frame")->capture_default_str();
  simulate->add_option("--safety", sim_safety, "Fraction of the per-frame power bound to use")
      ->capture_default_str();
  simulate->add_option("--noise-variance", sim_noise_variance,
                       "Additive receiver noise variance [W]")
      ->capture_default_str();
  simulate->add_flag("--dump-symbols", dump_symbols,
                     "Include full per-symbol arrays in JSON output");

  std::string sweep_arg;
  bool sweep_optimize = false;
  std::size_t workers = 1;
  sweep->add_option("--sweep", sweep_arg, "Axis and values, e.g. theta0=0,30,60,85")
      ->required();
  sweep->add_flag("--optimize", sweep_optimize, "Also run the throughput optimizer per point");
  sweep->add_option("--workers", workers, "Concurrent sweep points")->capture_default_str();

  double curve_span_hz = 300e9;
  int curve_points = 121;
  std::vector<double> curve_intensities{0.001, 0.1, 1.0};
  curve->add_option("--span-hz", curve_span_hz, "Half-width of the detuning sweep [Hz]")
      ->capture_default_str();
  curve->add_option("--points", curve_points, "Samples across the sweep")->capture_default_str();
  curve->add_option("--intensities", curve_intensities,
                    "Input intensities relative to the line-center saturation intensity")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    return dispatch(app, common, sweep_arg, sweep_optimize, workers, truncate, sim_frames,
                    sim_symbols, sim_safety, sim_noise_variance, dump_symbols, curve_span_hz,
                    curve_points, curve_intensities);
  } catch (const rbcom::below_threshold_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitThreshold;
  } catch (const rbcom::convergence_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const rbcom::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
