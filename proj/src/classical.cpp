#include "vlab/classical.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace vlab {

namespace {

int particle_count(const ClassicalSystem& sys) {
  return static_cast<int>(sys.masses.size());
}

// Force on every coordinate: F = -V'(|r_i|) r_i / |r_i| per particle.
void forces(const ClassicalSystem& sys, const std::vector<double>& pos,
            std::vector<double>& f) {
  int n = particle_count(sys);
  int d = sys.dims;
  for (int i = 0; i < n; ++i) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += pos[i * d + a] * pos[i * d + a];
    double r = std::sqrt(r2);
    if (sys.potential.singular_at_origin() && r < sys.r_min) {
      throw NonFiniteState("trajectory entered the singular core (r < r_min)");
    }
    double dv = r > 0.0 ? sys.potential.radial_derivative(r) : 0.0;
    double scale = r > 0.0 ? -dv / r : 0.0;
    for (int a = 0; a < d; ++a) f[i * d + a] = scale * pos[i * d + a];
  }
}

double kinetic(const ClassicalSystem& sys, const std::vector<double>& mom) {
  double t = 0.0;
  int d = sys.dims;
  for (std::size_t i = 0; i < sys.masses.size(); ++i) {
    double p2 = 0.0;
    for (int a = 0; a < d; ++a) p2 += mom[i * d + a] * mom[i * d + a];
    t += 0.5 * p2 / sys.masses[i];
  }
  return t;
}

double potential_energy(const ClassicalSystem& sys, const std::vector<double>& pos) {
  double v = 0.0;
  int d = sys.dims;
  for (std::size_t i = 0; i < sys.masses.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += pos[i * d + a] * pos[i * d + a];
    v += sys.potential.value(std::sqrt(r2));
  }
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void check_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw NonFiniteState("non-finite trajectory state (unstable dt?)");
    }
  }
}

}  // namespace

double total_energy(const ClassicalSystem& sys, const TrajectoryState& s) {
  return kinetic(sys, s.momenta) + potential_energy(sys, s.positions);
}

Trajectory integrate(const ClassicalSystem& sys, TrajectoryState state0, double dt,
                     long steps, int stride, double drift_warn) {
  if (dt <= 0.0 || steps < 1 || stride < 1) {
    throw ConfigError("integrate requires dt > 0, steps >= 1, stride >= 1");
  }
  std::size_t ncoord = sys.masses.size() * static_cast<std::size_t>(sys.dims);
  if (state0.positions.size() != ncoord || state0.momenta.size() != ncoord) {
    throw ConfigError("state vector length does not match masses * dims");
  }

  Trajectory traj;
  traj.dt = dt;
  traj.stride = stride;
  traj.samples.reserve(static_cast<std::size_t>(steps / stride) + 2);
  traj.samples.push_back(state0);

  std::vector<double> f(ncoord);
  forces(sys, state0.positions, f);
  double e0 = total_energy(sys, state0);
  double max_drift = 0.0;

  TrajectoryState s = std::move(state0);
  for (long step = 1; step <= steps; ++step) {
    // half kick, drift, half kick
    for (std::size_t k = 0; k < ncoord; ++k) s.momenta[k] += 0.5 * dt * f[k];
    for (std::size_t k = 0; k < ncoord; ++k) {
      s.positions[k] += dt * s.momenta[k] / sys.masses[k / sys.dims];
    }
    forces(sys, s.positions, f);
    for (std::size_t k = 0; k < ncoord; ++k) s.momenta[k] += 0.5 * dt * f[k];
    s.time += dt;

    if (step % stride == 0 || step == steps) {
      check_finite(s.positions);
      check_finite(s.momenta);
      double drift = std::abs(total_energy(sys, s) - e0);
      max_drift = std::max(max_drift, drift);
      traj.samples.push_back(s);
    }
  }
  double scale = std::abs(e0) > 0.0 ? std::abs(e0) : 1.0;
  if (max_drift / scale > drift_warn) {
    traj.warnings.push_back("relative energy drift " +
                            std::to_string(max_drift / scale) + " exceeds " +
                            std::to_string(drift_warn));
  }
  return traj;
}

TimeAverageReport time_average_virial(const ClassicalSystem& sys,
                                      const Trajectory& traj) {
  const auto& samples = traj.samples;
  if (samples.size() < 2) {
    throw ConfigError("time averages need at least two samples");
  }

  TimeAverageReport rep;
  rep.tau = samples.back().time - samples.front().time;
  rep.G_start = dot(samples.front().positions, samples.front().momenta);
  rep.G_end = dot(samples.back().positions, samples.back().momenta);

  double sum_T = 0.0, sum_V = 0.0, sum_rF = 0.0, sum_w = 0.0;
  std::vector<double> f(samples.front().positions.size());
  double e0 = total_energy(sys, samples.front());
  double max_drift = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    double w = (k == 0 || k + 1 == samples.size()) ? 0.5 : 1.0;
    // trapezoid over possibly unequal last interval: use actual time weights
    if (samples.size() > 2) {
      double t_prev = k > 0 ? samples[k - 1].time : samples[0].time;
      double t_next = k + 1 < samples.size() ? samples[k + 1].time : samples.back().time;
      w = 0.5 * (t_next - t_prev);
    } else {
      w *= rep.tau;
    }
    forces(sys, samples[k].positions, f);
    sum_T += w * kinetic(sys, samples[k].momenta);
    sum_V += w * potential_energy(sys, samples[k].positions);
    sum_rF += w * dot(samples[k].positions, f);
    sum_w += w;
    max_drift = std::max(max_drift, std::abs(total_energy(sys, samples[k]) - e0));
  }
  rep.mean_T = sum_T / sum_w;
  rep.mean_V = sum_V / sum_w;
  rep.mean_rF = sum_rF / sum_w;
  rep.mean_virial = -0.5 * rep.mean_rF;
  rep.residual = 2.0 * rep.mean_T + rep.mean_rF - (rep.G_end - rep.G_start) / rep.tau;
  rep.energy_drift = max_drift / (std::abs(e0) > 0.0 ? std::abs(e0) : 1.0);
  return rep;
}

double homogeneous_check(const TimeAverageReport& report, double lambda_deg) {
  return report.mean_T - 0.5 * lambda_deg * report.mean_V;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open CSV output path: " + path);
  std::size_t ncoord = traj.samples.empty() ? 0 : traj.samples.front().positions.size();
  out << "t";
  for (std::size_t k = 0; k < ncoord; ++k) out << ",q" << k;
  for (std::size_t k = 0; k < ncoord; ++k) out << ",p" << k;
  out << "\n";
  char buf[32];
  for (const auto& s : traj.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g", s.time);
    out << buf;
    for (double q : s.positions) {
      std::snprintf(buf, sizeof(buf), "%.17g", q);
      out << ',' << buf;
    }
    for (double p : s.momenta) {
      std::snprintf(buf, sizeof(buf), "%.17g", p);
      out << ',' << buf;
    }
    out << "\n";
  }
}

}  // namespace vlab
