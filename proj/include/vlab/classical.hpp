#pragma once

#include <string>
#include <vector>

#include "vlab/potential.hpp"

namespace vlab {

// N particles in an external central potential V(|r_i|), applied per particle.
struct ClassicalSystem {
  std::vector<double> masses;
  PotentialSpec potential;
  int dims = 3;           // 1, 2, or 3
  double r_min = 1e-6;    // core guard for singular families
};

struct TrajectoryState {
  std::vector<double> positions;  // length N*dims
  std::vector<double> momenta;
  double time = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryState> samples;  // includes the initial state
  double dt = 0.0;
  int stride = 1;
  std::vector<std::string> warnings;
};

struct TimeAverageReport {
  double mean_T = 0.0;
  double mean_virial = 0.0;  // -(1/2) time average of sum r.F
  double mean_V = 0.0;
  double mean_rF = 0.0;      // time average of sum r.F
  double G_start = 0.0;      // sum r.p at the first sample
  double G_end = 0.0;
  double tau = 0.0;
  double residual = 0.0;     // 2 mean_T + mean_rF - (G_end - G_start)/tau
  double energy_drift = 0.0; // max |E(t) - E(0)| / |E(0)|
};

// Velocity-Verlet integration with fixed step; samples every `stride` steps.
// Throws NonFiniteState on overflow/NaN or a singular-core hit (r < r_min).
// Appends a warning if the relative energy drift exceeds `drift_warn`.
Trajectory integrate(const ClassicalSystem& sys, TrajectoryState state0, double dt,
                     long steps, int stride = 1, double drift_warn = 1e-6);

double total_energy(const ClassicalSystem& sys, const TrajectoryState& s);

// Trapezoidal time averages over the stored samples.
TimeAverageReport time_average_virial(const ClassicalSystem& sys,
                                      const Trajectory& traj);

// mean_T - (lambda_deg / 2) mean_V; near zero for homogeneous potentials.
double homogeneous_check(const TimeAverageReport& report, double lambda_deg);

// Writes samples as CSV: t, positions..., momenta...
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace vlab
