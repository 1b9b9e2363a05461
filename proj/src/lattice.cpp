#include "vlab/lattice.hpp"

#include <cmath>
#include <string>

namespace vlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
using Complex = std::complex<double>;
}  // namespace

double InteractionSpec::value(double distance) const {
  double d = std::abs(distance);
  switch (family) {
    case Family::None:
      return 0.0;
    case Family::Contact:
      return d == 0.0 ? v0 : 0.0;
    case Family::SquareWell:
      return d <= width ? v0 : 0.0;
    case Family::Gaussian:
      return v0 * std::exp(-0.5 * d * d / (width * width));
    case Family::Table: {
      auto k = static_cast<std::size_t>(std::lround(d));
      return k < table.size() ? table[k] : 0.0;
    }
  }
  return 0.0;
}

void LatticeSystem::validate() const {
  if (n_sites < 8 || n_sites > 4096 || n_sites % 2 != 0) {
    throw ConfigError("n_sites must be even and within 8..4096");
  }
  if (spacing <= 0.0) throw ConfigError("spacing must be positive");
  if (kinetic1.mass < 0.0 || kinetic2.mass < 0.0) {
    throw ConfigError("masses must be nonnegative");
  }
}

LatticeModel::LatticeModel(const LatticeSystem& sys) : sys_(sys) {
  sys_.validate();
  int m = sys_.n_sites;

  fourier_.resize(m, m);
  double norm = 1.0 / std::sqrt(double(m));
  for (int q = 0; q < m; ++q) {
    for (int r = 0; r < m; ++r) {
      double arg = -2.0 * kPi * q * r / m;
      fourier_(q, r) = norm * Complex(std::cos(arg), std::sin(arg));
    }
  }

  // Position kernels of the single-particle dispersions; the cosine sum is
  // real by evenness, symmetrized afterwards so lookups are bitwise symmetric.
  auto kernel = [&](const KineticForm& kin) {
    Eigen::VectorXd t(m);
    for (int s = 0; s < m; ++s) {
      double acc = 0.0;
      for (int q = 0; q < m; ++q) {
        acc += kin.symbol(momentum_value(q)) * std::cos(2.0 * kPi * q * s / m);
      }
      t(s) = acc / m;
    }
    for (int s = 1; s < m / 2; ++s) {
      double avg = 0.5 * (t(s) + t(m - s));
      t(s) = avg;
      t(m - s) = avg;
    }
    return t;
  };
  t1_ = kernel(sys_.kinetic1);
  t2_ = kernel(sys_.kinetic2);

  v_.resize(m);
  for (int d = 0; d < m; ++d) {
    int centered = d < m / 2 ? d : d - m;  // signed minimal ring offset
    v_(d) = sys_.interaction.value(centered * sys_.spacing);
  }
  for (int d = 1; d < m / 2; ++d) {
    double avg = 0.5 * (v_(d) + v_(m - d));
    v_(d) = avg;
    v_(m - d) = avg;
  }

  k1_.resize(m, m);
  k2_.resize(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      k1_(a, b) = t1_(mod(a - b));
      k2_(a, b) = t2_(mod(a - b));
    }
  }

  // Single-particle momentum operator in position space, then the
  // symmetrized sawtooth generator block.
  Eigen::VectorXcd pdiag(m);
  for (int q = 0; q < m; ++q) pdiag(q) = momentum_value(q);
  Eigen::MatrixXcd pmat = fourier_.adjoint() * pdiag.asDiagonal() * fourier_;
  Eigen::VectorXd xdiag(m);
  for (int r = 0; r < m; ++r) xdiag(r) = sawtooth(r);
  gen1_ = 0.5 * (xdiag.asDiagonal() * pmat + pmat * xdiag.asDiagonal());
}

double LatticeModel::momentum_value(int q) const {
  int m = sys_.n_sites;
  int centered = mod(q);
  if (centered >= m / 2) centered -= m;
  return 2.0 * kPi * sys_.hbar * centered / (m * sys_.spacing);
}

double LatticeModel::sawtooth(int r) const {
  int m = sys_.n_sites;
  int centered = mod(r);
  if (centered >= m / 2) centered -= m;
  return centered * sys_.spacing;
}

LatticeModel::State LatticeModel::apply_hamiltonian(const State& psi) const {
  State out = k1_ * psi + psi * k2_;
  int m = sys_.n_sites;
  for (int r1 = 0; r1 < m; ++r1) {
    for (int r2 = 0; r2 < m; ++r2) {
      out(r1, r2) += v_(mod(r2 - r1)) * psi(r1, r2);
    }
  }
  return out;
}

LatticeModel::State LatticeModel::apply_translation(const State& psi, int d) const {
  int m = sys_.n_sites;
  State out(m, m);
  for (int r1 = 0; r1 < m; ++r1) {
    for (int r2 = 0; r2 < m; ++r2) {
      out(r1, r2) = psi(mod(r1 - d), mod(r2 - d));
    }
  }
  return out;
}

LatticeModel::State LatticeModel::apply_inversion(const State& psi) const {
  int m = sys_.n_sites;
  State out(m, m);
  for (int r1 = 0; r1 < m; ++r1) {
    for (int r2 = 0; r2 < m; ++r2) {
      out(r1, r2) = psi(mod(-r1), mod(-r2));
    }
  }
  return out;
}

LatticeModel::State LatticeModel::apply_momentum_function(
    const State& psi, const std::function<Complex(double)>& f) const {
  int m = sys_.n_sites;
  // gather to (r1, relative offset) layout
  State rel(m, m);
  for (int r1 = 0; r1 < m; ++r1) {
    for (int d = 0; d < m; ++d) rel(r1, d) = psi(r1, mod(r1 + d));
  }
  State chi = fourier_ * rel;  // rows indexed by Q
  for (int q = 0; q < m; ++q) chi.row(q) *= f(momentum_value(q));
  rel = fourier_.adjoint() * chi;
  State out(m, m);
  for (int r1 = 0; r1 < m; ++r1) {
    for (int d = 0; d < m; ++d) out(r1, mod(r1 + d)) = rel(r1, d);
  }
  return out;
}

LatticeModel::State LatticeModel::apply_generator(const State& psi) const {
  return gen1_ * psi + psi * gen1_.transpose();
}

namespace {

double commutator_norm(const LatticeModel& model,
                       const std::function<LatticeModel::State(
                           const LatticeModel::State&)>& op) {
  int m = model.sites();
  double acc = 0.0;
  LatticeModel::State basis = LatticeModel::State::Zero(m, m);
  for (int r1 = 0; r1 < m; ++r1) {
    for (int r2 = 0; r2 < m; ++r2) {
      basis(r1, r2) = 1.0;
      LatticeModel::State diff =
          model.apply_hamiltonian(op(basis)) - op(model.apply_hamiltonian(basis));
      acc += diff.squaredNorm();
      basis(r1, r2) = 0.0;
    }
  }
  return std::sqrt(acc);
}

}  // namespace

double LatticeModel::translation_commutator_norm() const {
  return commutator_norm(*this,
                         [&](const State& s) { return apply_translation(s, 1); });
}

double LatticeModel::inversion_commutator_norm() const {
  return commutator_norm(*this, [&](const State& s) { return apply_inversion(s); });
}

Eigen::MatrixXd LatticeModel::dense_hamiltonian() const {
  int m = sys_.n_sites;
  if (m > 32) throw ConfigError("dense Hamiltonian is limited to n_sites <= 32");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m * m, m * m);
  auto idx = [m](int r1, int r2) { return r1 * m + r2; };
  for (int r1 = 0; r1 < m; ++r1) {
    for (int r2 = 0; r2 < m; ++r2) {
      int col = idx(r1, r2);
      for (int a = 0; a < m; ++a) {
        h(idx(a, r2), col) += t1_(mod(a - r1));
        h(idx(r1, a), col) += t2_(mod(a - r2));
      }
      h(col, col) += v_(mod(r2 - r1));
    }
  }
  return h;
}

// --- sector machinery -------------------------------------------------------

namespace {

// Deterministic sign/phase convention: first significant component of each
// column made positive real.
void fix_phase(Eigen::MatrixXcd& vectors) {
  for (int c = 0; c < vectors.cols(); ++c) {
    double peak = vectors.col(c).cwiseAbs().maxCoeff();
    for (int j = 0; j < vectors.rows(); ++j) {
      Complex z = vectors(j, c);
      if (std::abs(z) > 1e-8 * peak) {
        vectors.col(c) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
}

}  // namespace

SectorEigenbasis block_diagonalize(const LatticeModel& model,
                                   const std::vector<int>& q_only) {
  const LatticeSystem& sys = model.system();
  int m = sys.n_sites;

  std::vector<int> qs = q_only;
  if (qs.empty()) {
    qs.resize(m);
    for (int q = 0; q < m; ++q) qs[q] = q;
  }

  SectorEigenbasis basis{model, {}};
  for (int q : qs) {
    // H_q(d', d) = exp(-2 pi i q (d-d')/M) t1(d-d') + t2(d-d') + v(d) delta
    Eigen::MatrixXcd hq(m, m);
    for (int dp = 0; dp < m; ++dp) {
      for (int d = 0; d < m; ++d) {
        int s = model.mod(d - dp);
        double arg = -2.0 * kPi * q * s / m;
        hq(dp, d) = Complex(std::cos(arg), std::sin(arg)) * model.kinetic_kernel1(s) +
                    model.kinetic_kernel2(s);
      }
      hq(dp, dp) += model.interaction_at(dp);
    }

    bool parity_block = (q == 0) || (2 * q == m);
    if (parity_block) {
      // real symmetric here; split by the relative-coordinate inversion
      Eigen::MatrixXd hr = hq.real();
      int n_even = m / 2 + 1;
      int n_odd = m / 2 - 1;
      Eigen::MatrixXd be = Eigen::MatrixXd::Zero(m, n_even);
      Eigen::MatrixXd bo = Eigen::MatrixXd::Zero(m, n_odd);
      be(0, 0) = 1.0;
      be(m / 2, n_even - 1) = 1.0;
      double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      for (int d = 1; d < m / 2; ++d) {
        be(d, d) = inv_sqrt2;
        be(m - d, d) = inv_sqrt2;
        bo(d, d - 1) = inv_sqrt2;
        bo(m - d, d - 1) = -inv_sqrt2;
      }
      for (int parity : {+1, -1}) {
        const Eigen::MatrixXd& b = parity > 0 ? be : bo;
        Eigen::MatrixXd hp = b.transpose() * hr * b;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hp);
        if (es.info() != Eigen::Success) {
          throw ConvergenceFailure("sector eigensolve failed (q=" +
                                   std::to_string(q) + ")");
        }
        Sector sector;
        sector.q_index = q;
        sector.K = model.momentum_value(q);
        sector.parity = parity;
        sector.energies = es.eigenvalues();
        Eigen::MatrixXd full = b * es.eigenvectors();
        sector.vectors = full.cast<Complex>();
        fix_phase(sector.vectors);
        basis.sectors.push_back(std::move(sector));
      }
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hq);
      if (es.info() != Eigen::Success) {
        throw ConvergenceFailure("sector eigensolve failed (q=" + std::to_string(q) +
                                 ")");
      }
      Sector sector;
      sector.q_index = q;
      sector.K = model.momentum_value(q);
      sector.parity = 0;
      sector.energies = es.eigenvalues();
      sector.vectors = es.eigenvectors();
      fix_phase(sector.vectors);
      basis.sectors.push_back(std::move(sector));
    }
  }
  return basis;
}

SectorLabel SectorEigenbasis::label(const StateRef& ref) const {
  const Sector& s = sectors.at(ref.sector);
  return {s.q_index, s.K, s.parity, ref.index};
}

double SectorEigenbasis::energy(const StateRef& ref) const {
  return sectors.at(ref.sector).energies(ref.index);
}

LatticeModel::State SectorEigenbasis::embed(const StateRef& ref) const {
  const Sector& s = sectors.at(ref.sector);
  int m = model.sites();
  LatticeModel::State psi = LatticeModel::State::Zero(m, m);
  double norm = 1.0 / std::sqrt(double(m));
  for (int r1 = 0; r1 < m; ++r1) {
    double arg = 2.0 * kPi * s.q_index * r1 / m;
    Complex phase = norm * Complex(std::cos(arg), std::sin(arg));
    for (int d = 0; d < m; ++d) {
      psi(r1, model.mod(r1 + d)) += phase * s.vectors(d, ref.index);
    }
  }
  return psi;
}

std::vector<StateRef> SectorEigenbasis::sector_states(int q_index, int parity) const {
  std::vector<StateRef> refs;
  for (int s = 0; s < static_cast<int>(sectors.size()); ++s) {
    if (sectors[s].q_index != q_index) continue;
    if (parity != 0 && sectors[s].parity != parity) continue;
    for (int k = 0; k < sectors[s].energies.size(); ++k) refs.push_back({s, k});
  }
  return refs;
}

std::size_t SectorEigenbasis::total_states() const {
  std::size_t n = 0;
  for (const auto& s : sectors) n += static_cast<std::size_t>(s.energies.size());
  return n;
}

std::complex<double> inner(const LatticeModel::State& a, const LatticeModel::State& b) {
  return (a.conjugate().cwiseProduct(b)).sum();
}

namespace {

Eigen::MatrixXcd pair_elements(
    const SectorEigenbasis& basis, const std::vector<StateRef>& refs,
    const std::function<LatticeModel::State(const LatticeModel::State&)>& op) {
  std::size_t n = refs.size();
  std::vector<LatticeModel::State> embedded(n), applied(n);
  for (std::size_t k = 0; k < n; ++k) {
    embedded[k] = basis.embed(refs[k]);
    applied[k] = op(embedded[k]);
  }
  Eigen::MatrixXcd out(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out(a, b) = inner(embedded[a], applied[b]);
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd translation_matrix_elements(const SectorEigenbasis& basis,
                                             const std::vector<StateRef>& refs,
                                             int d) {
  return pair_elements(basis, refs, [&](const LatticeModel::State& s) {
    return basis.model.apply_translation(s, d);
  });
}

Eigen::MatrixXcd momentum_power_elements(const SectorEigenbasis& basis,
                                         const std::vector<StateRef>& refs, int r) {
  if (r < 0) throw ConfigError("momentum power must be >= 0");
  return pair_elements(basis, refs, [&](const LatticeModel::State& s) {
    return basis.model.apply_momentum_function(
        s, [r](double p) { return Complex(std::pow(p, r), 0.0); });
  });
}

Eigen::MatrixXcd power_series_elements(const SectorEigenbasis& basis,
                                       const std::vector<StateRef>& refs,
                                       const std::vector<double>& coeffs) {
  return pair_elements(basis, refs, [&](const LatticeModel::State& s) {
    return basis.model.apply_momentum_function(s, [&coeffs](double p) {
      double acc = 0.0;
      double pk = 1.0;
      for (double c : coeffs) {
        acc += c * pk;
        pk *= p;
      }
      return Complex(acc, 0.0);
    });
  });
}

double GaussianFilter::value(double p) const {
  double d = p - K;
  return std::exp(-d * d / (4.0 * a * a)) / (2.0 * a * std::sqrt(kPi));
}

Eigen::MatrixXcd gaussian_filter_elements(const SectorEigenbasis& basis,
                                          const std::vector<StateRef>& refs,
                                          const GaussianFilter& filter) {
  if (filter.a <= 0.0) throw ConfigError("gaussian width must be positive");
  return pair_elements(basis, refs, [&](const LatticeModel::State& s) {
    return basis.model.apply_momentum_function(
        s, [&filter](double p) { return Complex(filter.value(p), 0.0); });
  });
}

GeneratorElements generator_elements(const SectorEigenbasis& basis,
                                     const std::vector<StateRef>& refs,
                                     double seam_threshold) {
  std::size_t n = refs.size();
  GeneratorElements out;
  out.g.resize(n, n);
  out.gh_comm.resize(n, n);

  int m = basis.model.sites();
  std::vector<LatticeModel::State> psi(n), gpsi(n), hpsi(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Sector& sector = basis.sectors.at(refs[k].sector);
    // seam diagnostic on the relative-coordinate amplitude; the neighborhood
    // is included because odd-parity vectors vanish at the seam site itself
    double peak = sector.vectors.col(refs[k].index).cwiseAbs().maxCoeff();
    double seam = 0.0;
    for (int d : {m / 2 - 1, m / 2, m / 2 + 1}) {
      seam = std::max(seam, std::abs(sector.vectors(basis.model.mod(d),
                                                    refs[k].index)));
    }
    out.seam_amplitude = std::max(out.seam_amplitude, seam / peak);
    psi[k] = basis.embed(refs[k]);
    gpsi[k] = basis.model.apply_generator(psi[k]);
    hpsi[k] = basis.model.apply_hamiltonian(psi[k]);
  }
  out.seam_warning = out.seam_amplitude > seam_threshold;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out.g(a, b) = inner(psi[a], gpsi[b]);
      // G and H are hermitian: <a|[G,H]|b> = <G a|H b> - <H a|G b>
      out.gh_comm(a, b) = inner(gpsi[a], hpsi[b]) - inner(hpsi[a], gpsi[b]);
    }
  }
  return out;
}

namespace {

std::vector<Complex> unit_phases(int m) {
  std::vector<Complex> e(m);
  for (int k = 0; k < m; ++k) {
    double arg = 2.0 * kPi * k / m;
    e[k] = Complex(std::cos(arg), std::sin(arg));
  }
  return e;
}

// Projector onto total momentum index q as a (dr1, dr2) difference kernel,
// summed over the constrained two-particle momentum basis.
Eigen::MatrixXcd spectral_projector_kernel(const LatticeModel& model, int q_index) {
  int m = model.sites();
  auto e = unit_phases(m);
  Eigen::MatrixXcd kernel = Eigen::MatrixXcd::Zero(m, m);
  double w = 1.0 / (double(m) * double(m));
  for (int q1 = 0; q1 < m; ++q1) {
    int q2 = model.mod(q_index - q1);
    for (int d1 = 0; d1 < m; ++d1) {
      Complex e1 = e[(q1 * d1) % m] * w;
      for (int d2 = 0; d2 < m; ++d2) {
        kernel(d1, d2) += e1 * e[(q2 * d2) % m];
      }
    }
  }
  return kernel;
}

}  // namespace

double delta_representation_residual(const LatticeModel& model, int q_index) {
  int m = model.sites();
  double delta = model.system().spacing;
  double hbar = model.system().hbar;
  double target_k = model.momentum_value(q_index);

  Eigen::MatrixXcd spectral = spectral_projector_kernel(model, q_index);

  // position route: ring analogue of the phase times Kronecker-delta formula,
  // prefactor 1/M, anchored on particle 1
  double residual = 0.0;
  for (int d1 = 0; d1 < m; ++d1) {
    double arg = target_k * (d1 * delta) / hbar;
    Complex formula_phase(std::cos(arg), std::sin(arg));
    for (int d2 = 0; d2 < m; ++d2) {
      Complex formula = d2 == d1 ? formula_phase / double(m) : Complex(0.0, 0.0);
      residual = std::max(residual, std::abs(spectral(d1, d2) - formula));
    }
  }
  return residual;
}

double delta_completeness_residual(const LatticeModel& model) {
  int m = model.sites();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(m, m);
  for (int q = 0; q < m; ++q) sum += spectral_projector_kernel(model, q);
  double residual = 0.0;
  for (int d1 = 0; d1 < m; ++d1) {
    for (int d2 = 0; d2 < m; ++d2) {
      Complex expected = (d1 == 0 && d2 == 0) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      residual = std::max(residual, std::abs(sum(d1, d2) - expected));
    }
  }
  return residual;
}

}  // namespace vlab
