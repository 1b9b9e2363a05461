#include <doctest.h>

#include <cmath>

#include "support/grid_generator.hpp"
#include "vlab/spectral.hpp"

using namespace vlab;

namespace {

SpectralProblem harmonic_problem(int ell, int n = 360, double r_max = 14.0) {
  SpectralProblem pb;
  pb.grid = {n, r_max};
  pb.kinetic = KineticForm::nonrelativistic(1.0);
  pb.potential = PotentialSpec::harmonic(1.0);
  pb.ell = ell;
  return pb;
}

SpectralProblem hydrogen_problem(int n = 2000, double r_max = 30.0) {
  SpectralProblem pb;
  pb.grid = {n, r_max};
  pb.kinetic = KineticForm::nonrelativistic(1.0);
  pb.potential = PotentialSpec::coulomb(-1.0);
  pb.ell = 0;
  return pb;
}

}  // namespace

TEST_CASE("free box eigenvalues are the exact sine-mode energies") {
  SpectralProblem pb;
  pb.grid = {64, 3.14159265358979323846};
  pb.kinetic = KineticForm::nonrelativistic(1.0);
  pb.potential = PotentialSpec::power_law(0.0, 2.0);
  pb.ell = 0;
  SpectralSolution sol = solve(pb, 6);
  for (int k = 0; k < 6; ++k) {
    double expected = 0.5 * (k + 1.0) * (k + 1.0);
    CHECK(std::abs(sol.eigenvalues(k) - expected) < 1e-10);
  }
}

TEST_CASE("eigenvectors are orthonormal in the grid inner product") {
  SpectralSolution sol = solve(harmonic_problem(1), 5);
  double h = sol.problem.grid.h();
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      double ip = sol.eigenvectors.col(a).dot(sol.eigenvectors.col(b)) * h;
      if (a == b) {
        CHECK(std::abs(ip - 1.0) < 1e-12);
      } else {
        CHECK(std::abs(ip) < 1e-10);
      }
    }
  }
}

TEST_CASE("harmonic oscillator levels and equipartition") {
  for (int ell : {0, 1, 2}) {
    SpectralSolution sol = solve(harmonic_problem(ell, 1400, 12.0), 5);
    for (int n = 0; n < 5; ++n) {
      double expected = 2.0 * n + ell + 1.5;
      CHECK(std::abs(sol.eigenvalues(n) - expected) < 1e-6);
      double t = expectation(sol, n, Observable::Kinetic);
      double v = expectation(sol, n, Observable::Potential);
      CHECK(std::abs(t - v) / expected < 1e-6);
      CHECK(std::abs(virial_residual(sol, n)) / expected < 1e-6);
    }
  }
  // ground state expectation values
  SpectralSolution sol = solve(harmonic_problem(0), 1);
  CHECK(std::abs(expectation(sol, 0, Observable::Kinetic) - 0.75) < 1e-6);
  CHECK(std::abs(expectation(sol, 0, Observable::Potential) - 0.75) < 1e-6);
}

TEST_CASE("nonrelativistic euler identity is exact on the grid") {
  SpectralSolution sol = solve(harmonic_problem(2), 3);
  for (int n = 0; n < 3; ++n) {
    double t = expectation(sol, n, Observable::Kinetic);
    double pdt = expectation(sol, n, Observable::MomentumDirectional);
    CHECK(std::abs(pdt - 2.0 * t) < 1e-12);
  }
}

TEST_CASE("hydrogen ground state energy and virial balance") {
  SpectralSolution sol = solve(hydrogen_problem(), 2);
  CHECK(std::abs(sol.eigenvalues(0) + 0.5) < 1e-4);
  double t = expectation(sol, 0, Observable::Kinetic);
  double v = expectation(sol, 0, Observable::Potential);
  CHECK(std::abs(t - 0.5) < 1e-3);
  CHECK(std::abs(v + 1.0) < 1e-3);
  CHECK(std::abs(2.0 * t + v) < 1e-3);
  CHECK(std::abs(virial_residual(sol, 0)) < 1e-3);
}

TEST_CASE("hydrogen energy error is second order in the grid spacing") {
  // the exact-doubling ratio approaches 4 from below: h scales by
  // (n1+1)/(n2+1) and the cusp correction is slightly sub-quadratic
  double e_coarse = solve(hydrogen_problem(500, 30.0), 1).eigenvalues(0);
  double e_fine = solve(hydrogen_problem(1000, 30.0), 1).eigenvalues(0);
  double err_coarse = std::abs(e_coarse + 0.5);
  double err_fine = std::abs(e_fine + 0.5);
  CHECK(err_coarse / err_fine >= 3.5);
  CHECK(err_coarse / err_fine <= 4.5);
}

TEST_CASE("off-diagonal virial elements match the generator-commutator route") {
  SpectralProblem pb = harmonic_problem(0, 500, 14.0);
  SpectralSolution sol = solve(pb, 4);
  Eigen::MatrixXd gen = testing::grid_dilation_generator(pb);
  Eigen::MatrixXd direct(4, 4), oracle(4, 4);
  double scale = 0.0;
  for (int n = 0; n < 4; ++n) {
    for (int m = 0; m < 4; ++m) {
      direct(n, m) = offdiag_virial(sol, n, m);
      oracle(n, m) = testing::offdiag_virial_oracle(sol, gen, n, m);
      if (n != m) {
        scale = std::max({scale, std::abs(direct(n, m)), std::abs(oracle(n, m))});
      }
    }
  }
  for (int n = 0; n < 4; ++n) {
    for (int m = 0; m < 4; ++m) {
      if (n == m) {
        CHECK(direct(n, n) == virial_residual(sol, n));
      } else {
        CHECK(std::abs(direct(n, m) - oracle(n, m)) / scale < 1e-8);
      }
    }
  }
}

TEST_CASE("hydrogen off-diagonal virial against the same oracle") {
  SpectralProblem pb = hydrogen_problem(1600, 40.0);
  SpectralSolution sol = solve(pb, 2);
  Eigen::MatrixXd gen = testing::grid_dilation_generator(pb);
  double direct = offdiag_virial(sol, 0, 1);
  double oracle = testing::offdiag_virial_oracle(sol, gen, 0, 1);
  double scale = std::max({std::abs(direct), std::abs(oracle), 1e-6});
  CHECK(std::abs(direct - oracle) / scale < 1e-3);
}

TEST_CASE("dilated energy derivative vanishes on eigenstates") {
  SpectralSolution sol = solve(harmonic_problem(0), 2);
  CHECK(std::abs(dilated_energy_derivative(sol, 0, 1e-4)) < 1e-6);
  // the derivative equals minus the virial residual for any state
  for (int n = 0; n < 2; ++n) {
    double d = dilated_energy_derivative(sol, n, 1e-4);
    CHECK(std::abs(d + virial_residual(sol, n)) < 1e-7);  // O(dlambda^2)
  }
}

TEST_CASE("dilated energy grows away from the stationary point") {
  SpectralSolution sol = solve(harmonic_problem(0), 1);
  Eigen::VectorXd psi = sol.eigenvectors.col(0);
  double e1 = dilated_energy(sol, psi, 1.0);
  double e_up = dilated_energy(sol, psi, 1.1);
  double e_down = dilated_energy(sol, psi, 0.9);
  CHECK(e_up > e1);
  CHECK(e_down > e1);
  // slope at lambda = 1.1 points back toward balance
  double slope = (dilated_energy(sol, psi, 1.1 + 1e-4) -
                  dilated_energy(sol, psi, 1.1 - 1e-4)) / 2e-4;
  CHECK(slope > 0.0);
}

TEST_CASE("pure kinetic scaling gives dE/dlambda = -2<T>") {
  SpectralProblem pb;
  pb.grid = {64, 3.14159265358979323846};
  pb.kinetic = KineticForm::nonrelativistic(1.0);
  pb.potential = PotentialSpec::power_law(0.0, 2.0);
  SpectralSolution sol = solve(pb, 2);
  for (int n = 0; n < 2; ++n) {
    double t = expectation(sol, n, Observable::Kinetic);
    double d = dilated_energy_derivative(sol, n, 1e-4);
    CHECK(std::abs(d + 2.0 * t) / t < 1e-6);
  }
}

TEST_CASE("salpeter harmonic states satisfy the generalized virial") {
  SpectralProblem pb;
  pb.grid = {400, 20.0};
  pb.kinetic = KineticForm::salpeter(1.0, 1.0);
  pb.potential = PotentialSpec::harmonic(1.0);
  SpectralSolution sol = solve(pb, 3);
  for (int n = 0; n < 3; ++n) {
    double e = sol.eigenvalues(n);
    CHECK(std::abs(virial_residual(sol, n)) / e < 1e-3);
    CHECK(std::abs(dilated_energy_derivative(sol, n)) < 1e-4);
    // the two routes agree on any state
    double d = dilated_energy_derivative(sol, n, 1e-4);
    CHECK(std::abs(d + virial_residual(sol, n)) < 1e-7);
  }
}

TEST_CASE("massless salpeter kinetic symbol is |p| c") {
  KineticForm kin = KineticForm::salpeter(0.0, 2.0);
  CHECK(kin.symbol(3.0) == doctest::Approx(6.0));
  CHECK(kin.euler_symbol(3.0) == doctest::Approx(6.0));
}

TEST_CASE("grid guards") {
  SpectralProblem pb;
  pb.grid = {100, 10.0};
  pb.kinetic = KineticForm::nonrelativistic(1.0);
  pb.potential = PotentialSpec::power_law(1.0, -5.0);
  pb.dynamic_range_bound = 1e3;
  CHECK_THROWS_AS(build_hamiltonian(pb), GridTooCoarse);

  SpectralProblem small;
  small.grid = {8, 10.0};
  CHECK_THROWS_AS(build_hamiltonian(small), ConfigError);

  SpectralProblem salpeter_l;
  salpeter_l.grid = {64, 10.0};
  salpeter_l.kinetic = KineticForm::salpeter(0.0, 1.0);
  salpeter_l.potential = PotentialSpec::harmonic(1.0);
  salpeter_l.ell = 1;
  CHECK_THROWS_AS(build_hamiltonian(salpeter_l), ConfigError);
}

TEST_CASE("hamiltonian is symmetric to machine precision") {
  Eigen::MatrixXd h = build_hamiltonian(harmonic_problem(1, 128, 12.0));
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
}
