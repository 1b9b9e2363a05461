#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "vlab/errors.hpp"
#include "vlab/spectral.hpp"  // KineticForm

namespace vlab {

// Pair interaction over the signed minimal ring distance; all families are
// symmetric in the distance, which keeps the model parity invariant.
struct InteractionSpec {
  enum class Family { None, Contact, SquareWell, Gaussian, Table };
  Family family = Family::None;
  double v0 = 0.0;     // well depth (negative values attract)
  double width = 1.0;  // physical half-width (SquareWell) or sigma (Gaussian)
  std::vector<double> table;  // value per |site offset|, Table family

  double value(double distance) const;
};

// Two particles on a periodic 1-D ring of M sites.
struct LatticeSystem {
  int n_sites = 64;      // M, even, 8..4096
  double spacing = 0.5;  // physical site spacing
  double hbar = 1.0;
  KineticForm kinetic1 = KineticForm::nonrelativistic(1.0);
  KineticForm kinetic2 = KineticForm::nonrelativistic(1.0);
  InteractionSpec interaction;

  void validate() const;
};

// The assembled ring Hamiltonian (dimension M^2), kept in kernel form.
// States are M x M complex matrices Psi(r1, r2).
class LatticeModel {
 public:
  using State = Eigen::MatrixXcd;

  explicit LatticeModel(const LatticeSystem& sys);

  const LatticeSystem& system() const { return sys_; }
  int sites() const { return sys_.n_sites; }

  // Centered single-particle momentum for Fourier index q in 0..M-1,
  // p = 2 pi hbar q~ / (M delta) with q~ in [-M/2, M/2).
  double momentum_value(int q) const;
  // Centered sawtooth coordinate for a site index, values in [-M delta/2, ...).
  double sawtooth(int r) const;
  double interaction_at(int d) const { return v_[mod(d)]; }
  double kinetic_kernel1(int s) const { return t1_[mod(s)]; }
  double kinetic_kernel2(int s) const { return t2_[mod(s)]; }

  State apply_hamiltonian(const State& psi) const;
  State apply_translation(const State& psi, int d) const;
  State apply_inversion(const State& psi) const;
  // f(P) for the total momentum P, applied through the center-of-mass
  // Fourier transform.
  State apply_momentum_function(
      const State& psi, const std::function<std::complex<double>(double)>& f) const;
  // Lattice dilation generator (1/2) sum_i (x~_i p_i + p_i x~_i).
  State apply_generator(const State& psi) const;

  // Frobenius norms of [H, T1] and [H, Pi] over the full basis; both are
  // exactly zero by construction and verified in tests.
  double translation_commutator_norm() const;
  double inversion_commutator_norm() const;

  // Dense M^2 x M^2 matrix for small-M oracle tests.
  Eigen::MatrixXd dense_hamiltonian() const;

  int mod(int v) const {
    int m = sys_.n_sites;
    return ((v % m) + m) % m;
  }

 private:
  LatticeSystem sys_;
  Eigen::VectorXd t1_, t2_;    // kinetic position kernels, symmetric
  Eigen::VectorXd v_;          // interaction per site offset
  Eigen::MatrixXcd fourier_;   // F(q, r) = exp(-2 pi i q r / M) / sqrt(M)
  Eigen::MatrixXcd gen1_;      // single-particle generator block
  Eigen::MatrixXd k1_, k2_;    // kernel matrices t(r' - r)
};

struct SectorLabel {
  int q_index = 0;      // Fourier index of the total momentum
  double K = 0.0;       // total momentum value
  int parity = 0;       // +1 / -1 in the K = 0 and edge blocks, else 0
  int energy_index = 0; // position within the (K, parity) sector
};

struct Sector {
  int q_index = 0;
  double K = 0.0;
  int parity = 0;
  Eigen::VectorXd energies;   // ascending
  Eigen::MatrixXcd vectors;   // M x n_states, relative-coordinate components
};

// Reference to one eigenvector: sector position in `sectors` + column.
struct StateRef {
  int sector = 0;
  int index = 0;
};

class SectorEigenbasis {
 public:
  LatticeModel model;
  std::vector<Sector> sectors;

  SectorLabel label(const StateRef& ref) const;
  double energy(const StateRef& ref) const;
  // Full-space embedding Psi(r1, r1+d) = exp(2 pi i Q r1 / M) u(d) / sqrt(M).
  LatticeModel::State embed(const StateRef& ref) const;
  // All states of one (q_index, parity) sector.
  std::vector<StateRef> sector_states(int q_index, int parity = 0) const;
  std::size_t total_states() const;
};

// Exact momentum-sector block diagonalization; `q_only` restricts the solve
// to selected Fourier indices (the full set when empty).
SectorEigenbasis block_diagonalize(const LatticeModel& model,
                                   const std::vector<int>& q_only = {});

std::complex<double> inner(const LatticeModel::State& a, const LatticeModel::State& b);

// <a| U(d) |b> for the listed states.
Eigen::MatrixXcd translation_matrix_elements(const SectorEigenbasis& basis,
                                             const std::vector<StateRef>& refs, int d);

// <a| P^r |b>.
Eigen::MatrixXcd momentum_power_elements(const SectorEigenbasis& basis,
                                         const std::vector<StateRef>& refs, int r);

// <a| f(P) |b> for f(P) = sum_k coeffs[k] P^k.
Eigen::MatrixXcd power_series_elements(const SectorEigenbasis& basis,
                                       const std::vector<StateRef>& refs,
                                       const std::vector<double>& coeffs);

struct GaussianFilter {
  double a = 1.0;  // width, > 0
  double K = 0.0;  // target total momentum
  double value(double p) const;
};

Eigen::MatrixXcd gaussian_filter_elements(const SectorEigenbasis& basis,
                                          const std::vector<StateRef>& refs,
                                          const GaussianFilter& filter);

struct GeneratorElements {
  Eigen::MatrixXcd g;        // <a| G |b>
  Eigen::MatrixXcd gh_comm;  // <a| [G, H] |b>
  bool seam_warning = false; // relative amplitude at the ring seam > threshold
  double seam_amplitude = 0.0;
};

// Matrix elements of the lattice G and [G, H] between the listed states.
// States should sit in the K = 0 sector with interaction-bound amplitudes
// away from the sawtooth seam; a SeamContamination-style warning flag is set
// otherwise (threshold = relative amplitude 1e-6 at the seam).
GeneratorElements generator_elements(const SectorEigenbasis& basis,
                                     const std::vector<StateRef>& refs,
                                     double seam_threshold = 1e-6);

// Max-norm difference between the total-momentum projector built spectrally
// in the momentum basis and by the position-basis phase/Kronecker formula.
double delta_representation_residual(const LatticeModel& model, int q_index);

// Max-norm residual of sum_K Pi_K = identity (spectral route).
double delta_completeness_residual(const LatticeModel& model);

}  // namespace vlab
