#include "vlab/spectral.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>
#include <vector>

namespace vlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Orthonormal DST-I matrix, S_jk = sqrt(2/(n+1)) sin((j+1)(k+1) pi / (n+1)).
// Symmetric and involutive: S * S = I.
Eigen::MatrixXd sine_matrix(int n) {
  Eigen::MatrixXd s(n, n);
  double norm = std::sqrt(2.0 / (n + 1));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      s(j, k) = norm * std::sin((j + 1.0) * (k + 1.0) * kPi / (n + 1));
    }
  }
  return s;
}

Eigen::VectorXd momentum_grid(const SpectralProblem& pb) {
  int n = pb.grid.n_points;
  Eigen::VectorXd p(n);
  for (int k = 0; k < n; ++k) p(k) = pb.hbar * (k + 1) * kPi / pb.grid.r_max;
  return p;
}

Eigen::VectorXd potential_diag(const SpectralProblem& pb) {
  int n = pb.grid.n_points;
  Eigen::VectorXd v(n);
  for (int j = 0; j < n; ++j) v(j) = pb.potential.value(pb.grid.r(j));
  return v;
}

Eigen::VectorXd centrifugal(const SpectralProblem& pb) {
  int n = pb.grid.n_points;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  if (pb.ell == 0) return c;
  if (pb.kinetic.mass <= 0.0) {
    throw ConfigError("ell > 0 needs a positive mass for the centrifugal term");
  }
  double pref = pb.hbar * pb.hbar * pb.ell * (pb.ell + 1.0) / (2.0 * pb.kinetic.mass);
  for (int j = 0; j < n; ++j) {
    double r = pb.grid.r(j);
    c(j) = pref / (r * r);
  }
  return c;
}

}  // namespace

double KineticForm::symbol(double p) const {
  if (variant == Variant::NonRelativistic) return 0.5 * p * p / mass;
  double e = std::sqrt(p * p * c * c + mass * mass * c * c * c * c);
  return e - mass * c * c;
}

double KineticForm::euler_symbol(double p) const {
  if (variant == Variant::NonRelativistic) return p * p / mass;
  double e = std::sqrt(p * p * c * c + mass * mass * c * c * c * c);
  return e > 0.0 ? p * p * c * c / e : 0.0;
}

Eigen::MatrixXd build_hamiltonian(const SpectralProblem& pb) {
  if (pb.grid.n_points < 16) throw ConfigError("n_points must be >= 16");
  if (pb.ell < 0) throw ConfigError("ell must be >= 0");
  if (std::abs(pb.potential.value(pb.grid.r(0))) > pb.dynamic_range_bound) {
    throw GridTooCoarse("|V(r_1)| exceeds the dynamic-range bound");
  }
  int n = pb.grid.n_points;
  Eigen::MatrixXd s = sine_matrix(n);
  Eigen::VectorXd p = momentum_grid(pb);
  Eigen::VectorXd t(n);
  for (int k = 0; k < n; ++k) t(k) = pb.kinetic.symbol(p(k));

  Eigen::MatrixXd h = s * t.asDiagonal() * s;
  Eigen::VectorXd diag = potential_diag(pb) + centrifugal(pb);
  h.diagonal() += diag;
  // force exact symmetry against rounding in the two matrix products
  h = 0.5 * (h + h.transpose()).eval();
  return h;
}

SpectralSolution solve(const SpectralProblem& pb, int k) {
  int n = pb.grid.n_points;
  if (k < 1 || k > n) throw ConfigError("requested eigenpair count out of range");

  Eigen::MatrixXd h = build_hamiltonian(pb);
  Eigen::MatrixXd h_work = h;

  std::vector<double> w(n);
  Eigen::MatrixXd z(n, k);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max(1, k)));
  lapack_int found = 0;
  lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', n, h_work.data(), n, 0.0, 0.0, 1, k, 0.0,
      &found, w.data(), z.data(), n, isuppz.data());
  if (info != 0 || found != k) {
    throw ConvergenceFailure("dsyevr failed: info=" + std::to_string(info) +
                             " found=" + std::to_string(found) + "/" +
                             std::to_string(k));
  }

  SpectralSolution sol;
  sol.problem = pb;
  sol.eigenvalues = Eigen::Map<Eigen::VectorXd>(w.data(), k);
  sol.momenta = momentum_grid(pb);
  sol.v_diag = potential_diag(pb);
  sol.centrifugal_diag = centrifugal(pb);

  double h_norm = h.cwiseAbs().colwise().sum().maxCoeff();
  double sqrt_h = std::sqrt(pb.grid.h());
  for (int c = 0; c < k; ++c) {
    double residual = (h * z.col(c) - w[c] * z.col(c)).norm();
    if (residual > 1e-8 * h_norm) {
      throw ConvergenceFailure("eigenpair residual " + std::to_string(residual) +
                               " exceeds 1e-8 * ||H||");
    }
    double peak = z.col(c).cwiseAbs().maxCoeff();
    for (int j = 0; j < n; ++j) {
      if (std::abs(z(j, c)) > 1e-8 * peak) {
        if (z(j, c) < 0.0) z.col(c) = -z.col(c);
        break;
      }
    }
  }
  sol.eigenvectors = z / sqrt_h;
  sol.eigenvectors_sine = sine_matrix(n) * sol.eigenvectors;
  return sol;
}

namespace {

double bilinear(const Eigen::VectorXd& a, const Eigen::VectorXd& diag,
                const Eigen::VectorXd& b, double h) {
  return (a.array() * diag.array() * b.array()).sum() * h;
}

// The two virial-side diagonals; `centrifugal side` differs by kinetic form.
struct VirialSides {
  Eigen::VectorXd momentum_sine;   // applied to sine images
  Eigen::VectorXd momentum_pos;    // applied to position images
  Eigen::VectorXd position_pos;
};

VirialSides virial_sides(const SpectralSolution& sol) {
  const SpectralProblem& pb = sol.problem;
  int n = pb.grid.n_points;
  VirialSides sides;
  sides.momentum_sine.resize(n);
  for (int k = 0; k < n; ++k) {
    sides.momentum_sine(k) = pb.kinetic.euler_symbol(sol.momenta(k));
  }
  sides.position_pos.resize(n);
  for (int j = 0; j < n; ++j) {
    double r = pb.grid.r(j);
    sides.position_pos(j) = r * pb.potential.radial_derivative(r);
  }
  if (pb.kinetic.variant == KineticForm::Variant::NonRelativistic) {
    sides.momentum_pos = 2.0 * sol.centrifugal_diag;
  } else {
    sides.momentum_pos = Eigen::VectorXd::Zero(n);
    sides.position_pos -= 2.0 * sol.centrifugal_diag;
  }
  return sides;
}

}  // namespace

double expectation(const SpectralSolution& sol, int n, Observable obs) {
  if (n < 0 || n >= sol.states()) throw ConfigError("state index out of range");
  const SpectralProblem& pb = sol.problem;
  double h = pb.grid.h();
  Eigen::VectorXd psi = sol.eigenvectors.col(n);
  Eigen::VectorXd psik = sol.eigenvectors_sine.col(n);
  switch (obs) {
    case Observable::Kinetic: {
      Eigen::VectorXd t(psik.size());
      for (int k = 0; k < t.size(); ++k) t(k) = pb.kinetic.symbol(sol.momenta(k));
      return bilinear(psik, t, psik, h) + bilinear(psi, sol.centrifugal_diag, psi, h);
    }
    case Observable::Potential:
      return bilinear(psi, sol.v_diag, psi, h);
    case Observable::MomentumDirectional: {
      VirialSides sides = virial_sides(sol);
      return bilinear(psik, sides.momentum_sine, psik, h) +
             bilinear(psi, sides.momentum_pos, psi, h);
    }
    case Observable::PositionDirectional: {
      VirialSides sides = virial_sides(sol);
      return bilinear(psi, sides.position_pos, psi, h);
    }
  }
  throw UnknownObservable("unknown observable");
}

double virial_residual(const SpectralSolution& sol, int n) {
  return expectation(sol, n, Observable::MomentumDirectional) -
         expectation(sol, n, Observable::PositionDirectional);
}

double offdiag_virial(const SpectralSolution& sol, int n, int m) {
  if (n < 0 || n >= sol.states() || m < 0 || m >= sol.states()) {
    throw ConfigError("state index out of range");
  }
  double h = sol.problem.grid.h();
  VirialSides sides = virial_sides(sol);
  double value =
      bilinear(sol.eigenvectors_sine.col(n), sides.momentum_sine,
               sol.eigenvectors_sine.col(m), h) +
      bilinear(sol.eigenvectors.col(n), sides.momentum_pos, sol.eigenvectors.col(m),
               h) -
      bilinear(sol.eigenvectors.col(n), sides.position_pos, sol.eigenvectors.col(m),
               h);
  return value;
}

double dilated_energy(const SpectralSolution& sol, const Eigen::VectorXd& state,
                      double lambda) {
  const SpectralProblem& pb = sol.problem;
  int n = pb.grid.n_points;
  double h = pb.grid.h();
  static thread_local Eigen::MatrixXd s_cache;
  if (s_cache.rows() != n) s_cache = sine_matrix(n);
  Eigen::VectorXd psik = s_cache * state;

  double e = 0.0;
  for (int k = 0; k < n; ++k) {
    e += pb.kinetic.symbol(sol.momenta(k) / lambda) * psik(k) * psik(k) * h;
  }
  for (int j = 0; j < n; ++j) {
    double r = pb.grid.r(j);
    double w = pb.potential.value(lambda * r) +
               sol.centrifugal_diag(j) / (lambda * lambda);
    e += w * state(j) * state(j) * h;
  }
  return e;
}

double dilated_energy_derivative(const SpectralSolution& sol, int n, double dlambda,
                                 bool richardson) {
  if (dlambda <= 0.0 || dlambda > 1e-2) {
    throw ConfigError("dlambda must be in (0, 1e-2]");
  }
  Eigen::VectorXd psi = sol.eigenvectors.col(n);
  auto central = [&](double d) {
    return (dilated_energy(sol, psi, 1.0 + d) - dilated_energy(sol, psi, 1.0 - d)) /
           (2.0 * d);
  };
  if (!richardson) return central(dlambda);
  double d1 = central(dlambda);
  double d2 = central(0.5 * dlambda);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace vlab
