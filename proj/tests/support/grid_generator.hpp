#pragma once

// Test-side dilation generator on the radial grid: (1/2)(r p + p r) with
// p = -i hbar D and D the antisymmetrized sine-spectral derivative. Used as
// the independent route to off-diagonal virial elements through
// <n|[G,H]|m> = (E_m - E_n) <n|G|m>.

#include <Eigen/Dense>
#include <cmath>

#include "vlab/spectral.hpp"

namespace vlab::testing {

// Real antisymmetric Gtilde with G = -i hbar Gtilde.
inline Eigen::MatrixXd grid_dilation_generator(const SpectralProblem& pb) {
  int n = pb.grid.n_points;
  double norm = std::sqrt(2.0 / (n + 1));
  constexpr double pi = 3.14159265358979323846;
  Eigen::MatrixXd sine(n, n), cosine(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      sine(j, k) = norm * std::sin((j + 1.0) * (k + 1.0) * pi / (n + 1));
      cosine(j, k) = norm * std::cos((j + 1.0) * (k + 1.0) * pi / (n + 1));
    }
  }
  Eigen::VectorXd wavenumber(n);
  for (int k = 0; k < n; ++k) wavenumber(k) = (k + 1) * pi / pb.grid.r_max;
  Eigen::MatrixXd deriv = cosine * wavenumber.asDiagonal() * sine;
  Eigen::MatrixXd antisym = 0.5 * (deriv - deriv.transpose());
  Eigen::VectorXd r(n);
  for (int j = 0; j < n; ++j) r(j) = pb.grid.r(j);
  return 0.5 * (r.asDiagonal() * antisym + antisym * r.asDiagonal());
}

// (E_n - E_m) <n| Gtilde |m> in the grid inner product; per the commutator
// identity this equals <n| p.dT/dp - r.dV/dr |m> for exact eigenvectors.
inline double offdiag_virial_oracle(const SpectralSolution& sol,
                                    const Eigen::MatrixXd& gen, int n, int m) {
  double h = sol.problem.grid.h();
  double g_nm = sol.eigenvectors.col(n).dot(gen * sol.eigenvectors.col(m)) * h;
  return (sol.eigenvalues(n) - sol.eigenvalues(m)) * g_nm;
}

}  // namespace vlab::testing
