#pragma once

#include <string>
#include <vector>

#include "vlab/report.hpp"
#include "vlab/spectral.hpp"

namespace vlab {

// Default parameters below are the ones the default suite and the acceptance
// run use; tolerances are part of the checked statements.

struct SymbolicSuiteConfig {
  unsigned seed = 20260809;
  int cases = 200;
  int max_degree = 6;
  int max_particles = 3;
  int dims = 3;
  int max_terms = 4;
  int momentum_monomial_max_power = 4;
};

struct ClassicalSuiteConfig {
  double periods = 100.0;
  int steps_per_period_harmonic = 2000;
  int steps_per_period_kepler = 20000;
  double kepler_eccentricity = 0.5;
  double tol_balance = 1e-3;          // time-average virial balance
  double pathwise_dt2_factor = 3.0;   // per-trajectory identity bound, times dt^2
  double halving_slack = 3.0;         // boundedness diagnostic noise factor
  std::string trajectory_csv;         // optional dump path
  std::string averages_json;          // optional TimeAverageReport dump path
};

// One user-defined radial scenario in the module schema:
// {grid:{n,r_max}, kinetic:{...}, potential:{...}, ell, k}.
struct SpectralScenario {
  std::string name;
  SpectralProblem problem;
  int k = 3;
  double dilation_step = 1e-3;
};

struct SpectralSuiteConfig {
  std::vector<SpectralScenario> scenarios;  // extra user scenarios
  std::string states_json;                  // per-state report dump path

  int hydrogen_n_points = 2000;
  double hydrogen_r_max = 30.0;
  double tol_hydrogen_energy = 1e-4;
  double tol_hydrogen_virial = 1e-3;

  int harmonic_n_points = 1400;
  double harmonic_r_max = 12.0;
  int harmonic_states = 5;
  double tol_harmonic_virial = 1e-6;
  double tol_harmonic_energy = 1e-6;

  int salpeter_n_points = 400;
  double salpeter_r_max = 20.0;
  int salpeter_states = 3;
  double tol_salpeter_virial = 1e-3;
  double tol_salpeter_dilation = 1e-4;
  double dilation_step = 1e-3;
};

struct LatticeSuiteConfig {
  int n_sites = 64;
  double spacing = 0.5;  // the physical ring length M * spacing stays fixed
                         // when the refinement doubles the site count
  double mass1 = 1.0;
  double mass2 = 1.0;
  bool salpeter = false;
  double salpeter_c = 1.0;
  std::string interaction_family = "square_well";  // contact|square_well|gaussian|none
  double well_depth = -8.0;
  double well_width = 2.0;
  std::vector<int> sectors;    // sector detail dump selection (empty = all)
  std::string sectors_json;    // optional per-sector energy dump path

  double tol_exact = 1e-12;
  double tol_series = 1e-10;
  double tol_translation = 1e-10;
  double tol_gaussian = 1e-10;
  double tol_cross_parity = 1e-10;
  double gaussian_width = 0.5;

  int refine_sites = 128;       // theorem refinement target at fixed length
  double refine_factor = 2.0;   // required decrease of |<n|[G,H]|m>|
};

std::vector<CheckRecord> run_symbolic_suite(const SymbolicSuiteConfig& cfg);
std::vector<CheckRecord> run_classical_suite(const ClassicalSuiteConfig& cfg);
std::vector<CheckRecord> run_spectral_suite(const SpectralSuiteConfig& cfg);
std::vector<CheckRecord> run_lattice_suite(const LatticeSuiteConfig& cfg);

// Thread cap: min(VIRIAL_LAB_THREADS, hardware), at least 1.
int thread_cap();

}  // namespace vlab
