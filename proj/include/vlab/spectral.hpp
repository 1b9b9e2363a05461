#pragma once

#include <Eigen/Dense>

#include "vlab/potential.hpp"

namespace vlab {

// Uniform radial grid r_j = j h, j = 1..n_points, h = r_max/(n_points+1),
// with Dirichlet ends at r = 0 and r = r_max.
struct RadialGrid {
  int n_points = 256;
  double r_max = 20.0;

  double h() const { return r_max / (n_points + 1); }
  double r(int j) const { return (j + 1) * h(); }  // j is 0-based
};

struct KineticForm {
  enum class Variant { NonRelativistic, Salpeter };
  Variant variant = Variant::NonRelativistic;
  double mass = 1.0;
  double c = 1.0;  // Salpeter only

  static KineticForm nonrelativistic(double mass) {
    return {Variant::NonRelativistic, mass, 1.0};
  }
  static KineticForm salpeter(double mass, double c) {
    return {Variant::Salpeter, mass, c};
  }

  // Kinetic symbol and its Euler derivative p T'(p) on a momentum value.
  double symbol(double p) const;
  double euler_symbol(double p) const;
};

struct SpectralProblem {
  RadialGrid grid;
  KineticForm kinetic;
  PotentialSpec potential;
  int ell = 0;
  double hbar = 1.0;
  double dynamic_range_bound = 1e10;  // GridTooCoarse guard on |V(r_1)|
};

// Kinetic operator applied as a diagonal symbol in the sine-transform basis,
// plus the diagonal potential and centrifugal terms. Real symmetric.
Eigen::MatrixXd build_hamiltonian(const SpectralProblem& problem);

class SpectralSolution {
 public:
  SpectralProblem problem;
  Eigen::VectorXd eigenvalues;             // k lowest, ascending
  Eigen::MatrixXd eigenvectors;            // n x k, sum_j psi_j^2 h = 1
  Eigen::MatrixXd eigenvectors_sine;       // sine-basis images, same normalization
  Eigen::VectorXd momenta;                 // sine-mode momenta p_k
  Eigen::VectorXd v_diag;                  // V(r_j)
  Eigen::VectorXd centrifugal_diag;        // hbar^2 l(l+1) / (2 m r_j^2)

  int states() const { return static_cast<int>(eigenvalues.size()); }
};

// k lowest eigenpairs; deterministic ordering and sign convention (first
// significant component positive). Throws ConvergenceFailure on solver
// failure and GridTooCoarse when |V(r_1)| exceeds the dynamic-range bound.
SpectralSolution solve(const SpectralProblem& problem, int k);

enum class Observable {
  Kinetic,               // T, including the centrifugal term
  Potential,             // V only
  MomentumDirectional,   // p . dT/dp
  PositionDirectional,   // r . dV/dr
};

// Expectation in eigenstate n. The centrifugal term follows the kinetic side
// for the nonrelativistic form (it descends from the 3-D p^2) and the
// potential side for the Salpeter form (1-D reduced model).
double expectation(const SpectralSolution& sol, int n, Observable obs);

// <p.dT/dp> - <r.dV/dr> for eigenstate n.
double virial_residual(const SpectralSolution& sol, int n);

// Same combination between different states n, m of one solve.
double offdiag_virial(const SpectralSolution& sol, int n, int m);

// Central difference of E(lambda) = <psi_n| H(p/lambda, lambda r) |psi_n>
// at lambda = 1; equals <r.dV/dr> - <p.dT/dp> up to O(dlambda^2).
double dilated_energy_derivative(const SpectralSolution& sol, int n,
                                 double dlambda = 1e-3, bool richardson = false);

// E(lambda) for an arbitrary grid-normalized state vector.
double dilated_energy(const SpectralSolution& sol, const Eigen::VectorXd& state,
                      double lambda);

}  // namespace vlab
