#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rbcom/horizon.hpp"
#include "rbcom/scenario.hpp"

namespace rbcom {

// Thrown when an iterative solve exhausts its budget without meeting its
// tolerance.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throughput-maximization program over a computed horizon, in log variables
// nu_k = ln mu_k, a_k = 2 ln A_k, plus the mean received power P_k. Frames
// are 0-based here; entry i describes the (i+1)-th transmitted frame.
struct SpcaProblem {
  std::vector<double> t;           // round durations [s]
  std::vector<double> b;           // bandwidths [Hz]
  std::vector<double> delta;       // capture fraction of the frame itself
  std::vector<double> f_prev;      // carrier feeding the frame's gain pass [Hz]
  std::vector<double> delta_prev;  // capture fraction of the feeding pass
  std::vector<double> c1;          // small-signal coupling bound, unused at i=0
  std::vector<double> a_hi;        // upper box bound on a_k
  double alpha = 0;                // detector power split
  double n0 = 0;                   // noise density [W/Hz]
  double beta = 0;                 // lower box bound for nu_k and a_k
  double p_t = 0;                  // first-frame circulating power cap [W]
  double t_up = 0;                 // sum of round durations [s]
  OpticsParams optics;
  MediumParams medium;

  std::size_t frames() const { return t.size(); }
};

// Truncate = 0 keeps the whole horizon; otherwise only the first `truncate`
// frames enter the program. The horizon must have been computed with
// record=true.
SpcaProblem build_spca_problem(const HorizonResult& h, const Scenario& scn,
                               std::size_t truncate = 0);

struct SpcaVars {
  std::vector<double> nu, a, p;
};

// Tangent overestimator of the concave term -coeff * e^(2 nu + a) around
// (nu_ref, a_ref), and the exact term itself.
double linearize_l1(double nu, double a, double nu_ref, double a_ref, double coeff);
double exact_l1(double nu, double a, double coeff);

// Same for the two-term received-power expression
// -coeff * (e^(2 nu + a) + e^a); the second exponential is linearized in a
// alone.
double linearize_l2(double nu, double a, double nu_ref, double a_ref, double coeff);
double exact_l2(double nu, double a, double coeff);

// Deterministic strictly feasible initial point (seed != 0 randomizes it).
SpcaVars feasible_start(const SpcaProblem& prob, const SpcaConfig& cfg);

// Carries warm-start state across successive subproblem solves.
struct SubproblemScratch {
  double t_barrier = 0;
};

// Maximizes the frame-capacity sum over the convexified feasible set built by
// linearizing the coupling terms at `ref` (which must be feasible for it).
// Log-barrier interior point with banded Newton steps; a vanishing proximal
// term anchors coordinates the objective does not see.
SpcaVars solve_subproblem(const SpcaVars& ref, const SpcaProblem& prob, const SpcaConfig& cfg,
                          SubproblemScratch* scratch = nullptr);

struct SpcaSolution {
  std::vector<double> mu;              // per-frame modulation floor
  std::vector<double> a_sq;            // per-frame squared channel coefficient [W]
  std::vector<double> p;               // per-frame mean received power [W]
  double throughput = 0;               // bits over the whole horizon
  double omega = 0;                    // bits per joule of pump energy
  int iterations = 0;                  // outer relinearization count
  bool converged = false;              // outer step norm fell below epsilon
  double max_h_violation_rel = 0;      // worst surrogate overshoot before repair
  std::vector<double> objective_trace; // exact-throughput after each outer step
};

// Full optimizer: feasible start, successive convex approximation with the
// verbatim step-norm stopping rule, then projection onto the exact
// saturated-gain recursion (reported, never hidden).
SpcaSolution spca_optimize(const HorizonResult& h, const Scenario& scn,
                           std::size_t truncate = 0);

// bits per joule: throughput / (p_in * t_up).
double energy_efficiency(double throughput_bits, double p_in, double t_up);

}  // namespace rbcom
