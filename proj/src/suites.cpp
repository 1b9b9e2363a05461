#include "vlab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vlab/classical.hpp"
#include "vlab/dilation.hpp"
#include "vlab/lattice.hpp"
#include "vlab/opalg.hpp"
#include "vlab/spectral.hpp"

namespace vlab {

int thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VIRIAL_LAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v < static_cast<long>(hw)) return static_cast<int>(v);
  }
  return static_cast<int>(hw);
}

namespace {

void parallel_run(std::vector<std::function<void()>> tasks) {
  int n_threads = std::min<int>(thread_cap(), static_cast<int>(tasks.size()));
  if (n_threads <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int k = 0; k < n_threads; ++k) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        try {
          tasks[i]();
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string digest_of(const std::string& s) { return fnv1a_digest(s); }

// --- symbolic ----------------------------------------------------------------

class ExprGen {
 public:
  explicit ExprGen(unsigned seed) : rng_(seed) {}

  int pick(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  Coeff coefficient() {
    int num = pick(-9, 9);
    if (num == 0) num = 1;
    int den = pick(1, 4);
    return Coeff::rational(num, den);
  }

  // Random polynomial in a single factor kind.
  OperatorExpr polynomial(FactorKind kind, int n_particles, int dims, int max_degree,
                          int max_terms) {
    OperatorExpr e;
    int terms = pick(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      int degree = pick(0, max_degree);
      FactorSeq fs;
      for (int d = 0; d < degree; ++d) {
        fs.push_back({kind, static_cast<std::uint16_t>(pick(1, n_particles)),
                      static_cast<std::uint8_t>(pick(1, dims))});
      }
      e += normal_order(coefficient(), std::move(fs));
    }
    return e;
  }

  // Rotationally invariant position polynomial built from dot products
  // r_i . r_j, so it commutes with every total angular momentum component.
  OperatorExpr rotation_invariant(int n_particles, int max_terms) {
    OperatorExpr e;
    int terms = pick(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      OperatorExpr term = OperatorExpr::identity(coefficient());
      int dots = pick(1, 2);
      for (int d = 0; d < dots; ++d) {
        int i = pick(1, n_particles);
        int j = pick(1, n_particles);
        OperatorExpr dot;
        for (int a = 1; a <= 3; ++a) {
          dot += normal_order(Coeff::one(), {position(i, a), position(j, a)});
        }
        term = mul(term, dot);
      }
      e += term;
    }
    return e;
  }

  std::mt19937 rng_;
};

double mismatch_count(const OperatorExpr& a, const OperatorExpr& b) {
  return static_cast<double>((a - b).size());
}

}  // namespace

std::vector<CheckRecord> run_symbolic_suite(const SymbolicSuiteConfig& cfg) {
  std::ostringstream cfg_str;
  cfg_str << "symbolic seed=" << cfg.seed << " cases=" << cfg.cases
          << " deg=" << cfg.max_degree << " N=" << cfg.max_particles
          << " dims=" << cfg.dims;
  std::string digest = digest_of(cfg_str.str());

  std::vector<CheckRecord> out;
  ExprGen gen(cfg.seed);

  // canonical commutation relations over every (particle, axis) pair
  {
    double bad = 0;
    for (int i = 1; i <= cfg.max_particles; ++i) {
      for (int a = 1; a <= cfg.dims; ++a) {
        for (int j = 1; j <= cfg.max_particles; ++j) {
          for (int b = 1; b <= cfg.dims; ++b) {
            OperatorExpr c = commutator(OperatorExpr::factor(position(i, a)),
                                        OperatorExpr::factor(momentum(j, b)));
            OperatorExpr expected = (i == j && a == b)
                                        ? OperatorExpr::identity(Coeff::i_hbar())
                                        : OperatorExpr::zero();
            bad += mismatch_count(c, expected);
            bad += mismatch_count(commutator(OperatorExpr::factor(position(i, a)),
                                             OperatorExpr::factor(position(j, b))),
                                  OperatorExpr::zero());
            bad += mismatch_count(commutator(OperatorExpr::factor(momentum(i, a)),
                                             OperatorExpr::factor(momentum(j, b))),
                                  OperatorExpr::zero());
          }
        }
      }
    }
    out.push_back(make_check("symbolic.ccr",
                             "[x_k, p_l] = i*hbar*delta_kl, [x,x] = [p,p] = 0",
                             digest, bad, 0.0));
  }

  // commutator(G, f(p)) = i hbar p . df/dp, term-exact
  {
    double bad = 0;
    for (int c = 0; c < cfg.cases; ++c) {
      int n = gen.pick(1, cfg.max_particles);
      int dims = cfg.dims == 3 ? (gen.pick(0, 1) ? 3 : 1) : cfg.dims;
      GeneratorSpec spec{n, dims};
      OperatorExpr f =
          gen.polynomial(FactorKind::Momentum, n, dims, cfg.max_degree, cfg.max_terms);
      OperatorExpr lhs = commutator(dilation_generator(spec), f);
      OperatorExpr rhs =
          scale(Coeff::i_hbar(), directional_derivative(f, FactorKind::Momentum));
      bad += mismatch_count(lhs, rhs);
    }
    out.push_back(make_check("symbolic.momentum_polynomials",
                             "commutator(G, f(p)) = i*hbar * p.df/dp", digest, bad,
                             0.0));
  }

  // commutator(G, f(r)) = -i hbar r . df/dr
  {
    double bad = 0;
    for (int c = 0; c < cfg.cases; ++c) {
      int n = gen.pick(1, cfg.max_particles);
      int dims = cfg.dims == 3 ? (gen.pick(0, 1) ? 3 : 1) : cfg.dims;
      GeneratorSpec spec{n, dims};
      OperatorExpr f =
          gen.polynomial(FactorKind::Position, n, dims, cfg.max_degree, cfg.max_terms);
      OperatorExpr lhs = commutator(dilation_generator(spec), f);
      OperatorExpr rhs = scale(Coeff::i_hbar().negated(),
                               directional_derivative(f, FactorKind::Position));
      bad += mismatch_count(lhs, rhs);
    }
    out.push_back(make_check("symbolic.position_polynomials",
                             "commutator(G, f(r)) = -i*hbar * r.df/dr", digest, bad,
                             0.0));
  }

  // [G, P_i P_j ... P_n] = i hbar r P_i P_j ... P_n
  {
    double bad = 0;
    for (int r = 1; r <= cfg.momentum_monomial_max_power; ++r) {
      for (int c = 0; c < cfg.cases / cfg.momentum_monomial_max_power; ++c) {
        int n = gen.pick(1, cfg.max_particles);
        GeneratorSpec spec{n, 3};
        std::vector<int> axes;
        for (int k = 0; k < r; ++k) axes.push_back(gen.pick(1, 3));
        OperatorExpr mono = OperatorExpr::identity();
        for (int a : axes) mono = mul(mono, total_momentum(spec, a));
        OperatorExpr lhs = momentum_monomial_commutator(spec, axes);
        OperatorExpr rhs = scale(Coeff::i_hbar() * Coeff::integer(r), mono);
        bad += mismatch_count(lhs, rhs);
      }
    }
    out.push_back(make_check("symbolic.momentum_monomials",
                             "commutator(G, P_i...P_n) = i*hbar*r * P_i...P_n",
                             digest, bad, 0.0));
  }

  // [G, Lz] = 0 and rotational invariance of dot-product potentials
  {
    double bad = 0;
    for (int n = 1; n <= cfg.max_particles; ++n) {
      GeneratorSpec spec{n, 3};
      OperatorExpr lz = angular_momentum_z(spec);
      bad += mismatch_count(commutator(dilation_generator(spec), lz),
                            OperatorExpr::zero());
      for (int c = 0; c < 8; ++c) {
        OperatorExpr v = gen.rotation_invariant(n, 2);
        bad += mismatch_count(commutator(lz, v), OperatorExpr::zero());
      }
    }
    out.push_back(make_check("symbolic.angular_momentum",
                             "[G, Lz] = 0 and [Lz, V(r_i.r_j)] = 0", digest, bad,
                             0.0));
  }

  // virial_commutator(h) = commutator(G, T + V + K)
  {
    double bad = 0;
    for (int c = 0; c < cfg.cases; ++c) {
      int n = gen.pick(1, cfg.max_particles);
      int dims = cfg.dims == 3 ? (gen.pick(0, 1) ? 3 : 1) : cfg.dims;
      GeneratorSpec spec{n, dims};
      HamiltonianSpec h;
      h.kinetic =
          gen.polynomial(FactorKind::Momentum, n, dims, cfg.max_degree, cfg.max_terms);
      h.potential =
          gen.polynomial(FactorKind::Position, n, dims, cfg.max_degree, cfg.max_terms);
      h.constant = gen.coefficient();
      OperatorExpr full = add(add(h.kinetic, h.potential),
                              OperatorExpr::identity(h.constant));
      bad += mismatch_count(virial_commutator(h),
                            commutator(dilation_generator(spec), full));
    }
    out.push_back(make_check("symbolic.virial_commutator",
                             "virial_commutator(H) = commutator(G, T + V + K)",
                             digest, bad, 0.0));
  }

  // dilation exponents: T quadratic scales as lam^-2, V of degree d as lam^d
  {
    double bad = 0;
    for (int c = 0; c < 32; ++c) {
      int n = gen.pick(1, cfg.max_particles);
      OperatorExpr t;
      for (int k = 1; k <= n; ++k) {
        for (int a = 1; a <= 3; ++a) {
          t += normal_order(Coeff::rational(1, 2), {momentum(k, a), momentum(k, a)});
        }
      }
      bad += mismatch_count(dilate(t), scale(Coeff::lam(-2), t));
      int deg = gen.pick(1, cfg.max_degree);
      OperatorExpr v;
      FactorSeq fs;
      for (int d = 0; d < deg; ++d) {
        fs.push_back(position(gen.pick(1, n), gen.pick(1, 3)));
      }
      v = normal_order(gen.coefficient(), fs);
      bad += mismatch_count(dilate(v), scale(Coeff::lam(deg), v));
      auto e_deg = euler_degree(v);
      if (!e_deg || *e_deg != deg) bad += 1;
    }
    out.push_back(make_check("symbolic.dilation_homogeneity",
                             "dilate scales T by lam^-2 and degree-d V by lam^d",
                             digest, bad, 0.0));
  }

  return out;
}

// --- classical ----------------------------------------------------------------

namespace {

struct ClassicalScenario {
  std::string name;
  ClassicalSystem system;
  TrajectoryState start;
  double period;
  double lambda_deg;
  double energy;
};

ClassicalScenario harmonic_scenario() {
  ClassicalScenario s;
  s.name = "harmonic";
  s.system = {{1.0}, PotentialSpec::harmonic(1.0), 1};
  s.start = {{1.3}, {0.4}, 0.0};
  s.period = 2.0 * 3.14159265358979323846;
  s.lambda_deg = 2.0;
  s.energy = 0.5 * 0.4 * 0.4 + 0.5 * 1.3 * 1.3;
  return s;
}

ClassicalScenario kepler_scenario(double eccentricity) {
  // unit semi-major axis: perihelion start, v_p = sqrt((1+e)/(1-e)), E = -1/2
  ClassicalScenario s;
  s.name = "kepler";
  s.system = {{1.0}, PotentialSpec::coulomb(-1.0), 2};
  double rp = 1.0 - eccentricity;
  double vp = std::sqrt((1.0 + eccentricity) / (1.0 - eccentricity));
  s.start = {{rp, 0.0}, {0.0, vp}, 0.0};
  s.period = 2.0 * 3.14159265358979323846;
  s.lambda_deg = -1.0;
  s.energy = -0.5;
  return s;
}

}  // namespace

std::vector<CheckRecord> run_classical_suite(const ClassicalSuiteConfig& cfg) {
  std::ostringstream cfg_str;
  cfg_str << "classical periods=" << cfg.periods << " spp_h="
          << cfg.steps_per_period_harmonic << " spp_k=" << cfg.steps_per_period_kepler
          << " e=" << cfg.kepler_eccentricity;
  std::string digest = digest_of(cfg_str.str());

  std::vector<CheckRecord> out;
  std::vector<std::pair<std::string, TimeAverageReport>> averages;

  auto run_balance = [&](const ClassicalScenario& sc, int steps_per_period,
                         double balance_value(const TimeAverageReport&),
                         const std::string& balance_statement) {
    double dt = sc.period / steps_per_period;
    long steps = static_cast<long>(std::llround(cfg.periods * steps_per_period));
    Trajectory traj = integrate(sc.system, sc.start, dt, steps, /*stride=*/4, 1e-4);
    if (!cfg.trajectory_csv.empty()) {
      write_trajectory_csv(traj, cfg.trajectory_csv + "." + sc.name + ".csv");
    }
    TimeAverageReport rep = time_average_virial(sc.system, traj);
    averages.emplace_back(sc.name, rep);
    out.push_back(make_check("classical." + sc.name + ".balance", balance_statement,
                             digest, balance_value(rep) / std::abs(sc.energy),
                             cfg.tol_balance));
    out.push_back(make_check(
        "classical." + sc.name + ".pathwise",
        "2*mean_T + mean(sum r.F) - [G(tau)-G(0)]/tau = 0 up to O(dt^2) quadrature",
        digest, rep.residual / std::abs(sc.energy),
        cfg.pathwise_dt2_factor * dt * dt));
    out.push_back(make_check("classical." + sc.name + ".energy_drift",
                             "relative energy drift stays within 1e-5", digest,
                             rep.energy_drift, 1e-5));
    out.push_back(make_check(
        "classical." + sc.name + ".homogeneous",
        "mean_T = (lambda/2) mean_V for the homogeneous potential", digest,
        homogeneous_check(rep, sc.lambda_deg) / std::abs(sc.energy),
        cfg.tol_balance));
  };

  {
    ClassicalScenario sc = harmonic_scenario();
    run_balance(
        sc, cfg.steps_per_period_harmonic,
        [](const TimeAverageReport& r) { return std::abs(r.mean_T - r.mean_V); },
        "harmonic oscillator: |mean_T - mean_V| / E <= tol over long averages");
  }
  {
    ClassicalScenario sc = kepler_scenario(cfg.kepler_eccentricity);
    run_balance(
        sc, cfg.steps_per_period_kepler,
        [](const TimeAverageReport& r) { return std::abs(2.0 * r.mean_T + r.mean_V); },
        "Kepler ellipse: |2 mean_T + mean_V| / |E| <= tol over long averages");
  }

  // bounded-motion diagnostic: doubling tau at least halves [G(tau)-G(0)]/tau,
  // within the configured noise slack
  auto halving = [&](const ClassicalScenario& sc, int steps_per_period) {
    double tau1 = 150.5;
    double dt = sc.period / steps_per_period;
    long steps1 = static_cast<long>(std::llround(tau1 / dt));
    long steps2 = 2 * steps1;
    Trajectory t1 = integrate(sc.system, sc.start, dt, steps1, 16, 1e-4);
    Trajectory t2 = integrate(sc.system, sc.start, dt, steps2, 16, 1e-4);
    TimeAverageReport r1 = time_average_virial(sc.system, t1);
    TimeAverageReport r2 = time_average_virial(sc.system, t2);
    double d1 = std::abs((r1.G_end - r1.G_start) / r1.tau);
    double d2 = std::abs((r2.G_end - r2.G_start) / r2.tau);
    out.push_back(make_check(
        "classical." + sc.name + ".bounded_decay",
        "bounded motion: |[G(2tau)-G(0)]/(2tau)| <= slack/2 * |[G(tau)-G(0)]/tau|",
        digest, d2 / (0.5 * cfg.halving_slack * d1), 1.0));
  };
  halving(harmonic_scenario(), cfg.steps_per_period_harmonic);
  halving(kepler_scenario(cfg.kepler_eccentricity), cfg.steps_per_period_kepler);

  if (!cfg.averages_json.empty()) {
    nlohmann::json artifact = nlohmann::json::object();
    for (const auto& [name, rep] : averages) {
      artifact[name] = {{"mean_T", rep.mean_T},
                        {"mean_virial", rep.mean_virial},
                        {"mean_V", rep.mean_V},
                        {"mean_rF", rep.mean_rF},
                        {"G_start", rep.G_start},
                        {"G_end", rep.G_end},
                        {"tau", rep.tau},
                        {"residual", rep.residual},
                        {"energy_drift", rep.energy_drift}};
    }
    std::ofstream out(cfg.averages_json);
    if (!out) throw ConfigError("cannot open averages path: " + cfg.averages_json);
    out << artifact.dump(2) << "\n";
  }

  // free particle: p exactly constant, virial term zero, [G]/tau = 2 mean_T
  {
    ClassicalSystem sys{{1.0}, PotentialSpec::power_law(0.0, 2.0), 1};
    TrajectoryState start{{0.2}, {0.7}, 0.0};
    Trajectory traj = integrate(sys, start, 1e-2, 2000, 4, 1e-9);
    TimeAverageReport rep = time_average_virial(sys, traj);
    double p_change = 0.0;
    for (const auto& s : traj.samples) p_change = std::max(p_change, std::abs(s.momenta[0] - 0.7));
    double gap = std::abs((rep.G_end - rep.G_start) / rep.tau - 2.0 * rep.mean_T);
    out.push_back(make_check("classical.free.momentum_constant",
                             "zero potential: momentum is exactly constant", digest,
                             p_change, 0.0));
    out.push_back(make_check("classical.free.unbounded_G",
                             "zero potential: [G(tau)-G(0)]/tau = 2 mean_T, virial "
                             "term = 0",
                             digest, gap + std::abs(rep.mean_virial), 1e-12));
  }

  return out;
}

// --- spectral -------------------------------------------------------------

std::vector<CheckRecord> run_spectral_suite(const SpectralSuiteConfig& cfg) {
  std::ostringstream cfg_str;
  cfg_str << "spectral hyd=" << cfg.hydrogen_n_points << "/" << cfg.hydrogen_r_max
          << " harm=" << cfg.harmonic_n_points << "/" << cfg.harmonic_r_max
          << " sal=" << cfg.salpeter_n_points << "/" << cfg.salpeter_r_max;
  std::string digest = digest_of(cfg_str.str());

  std::vector<CheckRecord> out;

  SpectralSolution hydrogen, salpeter;
  SpectralSolution harmonic[3];

  std::vector<std::function<void()>> tasks;
  tasks.push_back([&] {
    SpectralProblem pb;
    pb.grid = {cfg.hydrogen_n_points, cfg.hydrogen_r_max};
    pb.kinetic = KineticForm::nonrelativistic(1.0);
    pb.potential = PotentialSpec::coulomb(-1.0);
    pb.ell = 0;
    hydrogen = solve(pb, 3);
  });
  for (int l = 0; l < 3; ++l) {
    tasks.push_back([&, l] {
      SpectralProblem pb;
      pb.grid = {cfg.harmonic_n_points, cfg.harmonic_r_max};
      pb.kinetic = KineticForm::nonrelativistic(1.0);
      pb.potential = PotentialSpec::harmonic(1.0);
      pb.ell = l;
      harmonic[l] = solve(pb, cfg.harmonic_states);
    });
  }
  tasks.push_back([&] {
    SpectralProblem pb;
    pb.grid = {cfg.salpeter_n_points, cfg.salpeter_r_max};
    pb.kinetic = KineticForm::salpeter(1.0, 1.0);
    pb.potential = PotentialSpec::harmonic(1.0);
    pb.ell = 0;
    salpeter = solve(pb, cfg.salpeter_states);
  });
  parallel_run(std::move(tasks));

  // hydrogen ground level and virial balance
  out.push_back(make_check("spectral.hydrogen.energy1",
                           "hydrogen l=0 ground energy = -1/2", digest,
                           hydrogen.eigenvalues(0) + 0.5, cfg.tol_hydrogen_energy));
  {
    double t = expectation(hydrogen, 0, Observable::Kinetic);
    double v = expectation(hydrogen, 0, Observable::Potential);
    out.push_back(make_check("spectral.hydrogen.virial",
                             "hydrogen ground state: 2<T> + <V> = 0", digest,
                             (2.0 * t + v) / 0.5, cfg.tol_hydrogen_virial));
  }

  // 3-D harmonic oscillator: energies (2n+l+3/2) and <T> = <V>
  {
    double worst_e = 0.0, worst_virial = 0.0, worst_euler = 0.0;
    for (int l = 0; l < 3; ++l) {
      for (int n = 0; n < cfg.harmonic_states; ++n) {
        double e = harmonic[l].eigenvalues(n);
        double expected = 2.0 * n + l + 1.5;
        worst_e = std::max(worst_e, std::abs(e - expected));
        double t = expectation(harmonic[l], n, Observable::Kinetic);
        double v = expectation(harmonic[l], n, Observable::Potential);
        worst_virial = std::max(worst_virial, std::abs(t - v) / e);
        double pdt = expectation(harmonic[l], n, Observable::MomentumDirectional);
        worst_euler = std::max(worst_euler, std::abs(pdt - 2.0 * t));
      }
    }
    out.push_back(make_check("spectral.harmonic.energies",
                             "3-D oscillator levels are 2n + l + 3/2", digest,
                             worst_e, cfg.tol_harmonic_energy));
    out.push_back(make_check("spectral.harmonic.virial",
                             "oscillator eigenstates: |<T> - <V>| / E", digest,
                             worst_virial, cfg.tol_harmonic_virial));
    out.push_back(make_check("spectral.harmonic.euler_identity",
                             "nonrelativistic identity <p.dT/dp> = 2<T>", digest,
                             worst_euler, 1e-10));
  }

  // Salpeter virial balance cross-checked by dilation stationarity
  {
    double worst_virial = 0.0, worst_dilation = 0.0;
    for (int n = 0; n < cfg.salpeter_states; ++n) {
      double e = salpeter.eigenvalues(n);
      worst_virial = std::max(worst_virial, std::abs(virial_residual(salpeter, n)) / e);
      worst_dilation = std::max(
          worst_dilation,
          std::abs(dilated_energy_derivative(salpeter, n, cfg.dilation_step)));
    }
    out.push_back(make_check("spectral.salpeter.virial",
                             "Salpeter eigenstates: |<p.dT/dp> - <r.dV/dr>| / E",
                             digest, worst_virial, cfg.tol_salpeter_virial));
    out.push_back(make_check("spectral.salpeter.dilation",
                             "Salpeter eigenstates: |dE/dlambda| at lambda = 1",
                             digest, worst_dilation, cfg.tol_salpeter_dilation));
  }

  // user scenarios in the module schema, reported per state
  nlohmann::json states_artifact = nlohmann::json::array();
  auto state_rows = [](const SpectralSolution& sol, double dilation_step) {
    nlohmann::json rows = nlohmann::json::array();
    for (int n = 0; n < sol.states(); ++n) {
      rows.push_back(
          {{"E", sol.eigenvalues(n)},
           {"T", expectation(sol, n, Observable::Kinetic)},
           {"V", expectation(sol, n, Observable::Potential)},
           {"p_dT", expectation(sol, n, Observable::MomentumDirectional)},
           {"r_dV", expectation(sol, n, Observable::PositionDirectional)},
           {"residual", virial_residual(sol, n)},
           {"dilation_derivative", dilated_energy_derivative(sol, n, dilation_step)}});
    }
    return rows;
  };
  if (!cfg.states_json.empty()) {
    states_artifact.push_back(
        {{"scenario", "hydrogen"}, {"states", state_rows(hydrogen, 1e-3)}});
    for (int l = 0; l < 3; ++l) {
      states_artifact.push_back({{"scenario", "harmonic_l" + std::to_string(l)},
                                 {"states", state_rows(harmonic[l], 1e-3)}});
    }
    states_artifact.push_back(
        {{"scenario", "salpeter_harmonic"}, {"states", state_rows(salpeter, 1e-3)}});
  }
  for (const auto& scenario : cfg.scenarios) {
    SpectralSolution sol = solve(scenario.problem, scenario.k);
    std::ostringstream sd;
    sd << "scenario " << scenario.name << " n=" << scenario.problem.grid.n_points
       << " r_max=" << scenario.problem.grid.r_max << " ell=" << scenario.problem.ell
       << " k=" << scenario.k;
    // eigenstate stationarity is the per-scenario pass condition
    double worst = 0.0;
    for (int n = 0; n < sol.states(); ++n) {
      worst = std::max(worst, std::abs(dilated_energy_derivative(
                                  sol, n, scenario.dilation_step)) /
                                  std::max(1.0, std::abs(sol.eigenvalues(n))));
    }
    out.push_back(make_check("spectral.scenario." + scenario.name,
                             "eigenstates are stationary under dilation "
                             "(|dE/dlambda| / max(1, |E|))",
                             digest_of(sd.str()), worst, 1e-3));
    if (!cfg.states_json.empty()) {
      states_artifact.push_back({{"scenario", scenario.name},
                                 {"states", state_rows(sol, scenario.dilation_step)}});
    }
  }
  if (!cfg.states_json.empty()) {
    std::ofstream artifact_out(cfg.states_json);
    if (!artifact_out) {
      throw ConfigError("cannot open spectral states path: " + cfg.states_json);
    }
    artifact_out << states_artifact.dump(2) << "\n";
  }

  return out;
}

// --- lattice ----------------------------------------------------------------

namespace {

InteractionSpec::Family interaction_family_from(const std::string& name) {
  if (name == "contact") return InteractionSpec::Family::Contact;
  if (name == "square_well") return InteractionSpec::Family::SquareWell;
  if (name == "gaussian") return InteractionSpec::Family::Gaussian;
  if (name == "none") return InteractionSpec::Family::None;
  throw ConfigError("unknown interaction family: " + name);
}

LatticeSystem lattice_system(const LatticeSuiteConfig& cfg, int sites) {
  LatticeSystem sys;
  sys.n_sites = sites;
  // the physical ring length is pinned by the configured (n_sites, spacing)
  sys.spacing = cfg.spacing * cfg.n_sites / sites;
  sys.kinetic1 = cfg.salpeter ? KineticForm::salpeter(cfg.mass1, cfg.salpeter_c)
                              : KineticForm::nonrelativistic(cfg.mass1);
  sys.kinetic2 = cfg.salpeter ? KineticForm::salpeter(cfg.mass2, cfg.salpeter_c)
                              : KineticForm::nonrelativistic(cfg.mass2);
  sys.interaction.family = interaction_family_from(cfg.interaction_family);
  sys.interaction.v0 = cfg.well_depth;
  sys.interaction.width = cfg.well_width;
  return sys;
}

// Two lowest even-parity bound states in the K = 0 sector.
std::vector<StateRef> even_bound_pair(const SectorEigenbasis& basis) {
  std::vector<StateRef> refs;
  for (int s = 0; s < static_cast<int>(basis.sectors.size()); ++s) {
    const Sector& sector = basis.sectors[s];
    if (sector.q_index != 0 || sector.parity != 1) continue;
    for (int k = 0; k < sector.energies.size() && refs.size() < 2; ++k) {
      if (sector.energies(k) < 0.0) refs.push_back({s, k});
    }
  }
  return refs;
}

}  // namespace

std::vector<CheckRecord> run_lattice_suite(const LatticeSuiteConfig& cfg) {
  std::ostringstream cfg_str;
  cfg_str << "lattice M=" << cfg.n_sites << " delta=" << cfg.spacing
          << " family=" << cfg.interaction_family << " v0=" << cfg.well_depth
          << " w=" << cfg.well_width << " salpeter=" << cfg.salpeter;
  std::string digest = digest_of(cfg_str.str());

  std::vector<CheckRecord> out;
  LatticeModel model(lattice_system(cfg, cfg.n_sites));
  int m = model.sites();

  out.push_back(make_check("lattice.commutator.translation",
                           "[H, T1] = 0 on the ring by construction", digest,
                           model.translation_commutator_norm(), cfg.tol_exact));
  out.push_back(make_check("lattice.commutator.inversion",
                           "[H, Pi] = 0 for the symmetric interaction", digest,
                           model.inversion_commutator_norm(), cfg.tol_exact));

  SectorEigenbasis basis = block_diagonalize(model);
  out.push_back(make_check("lattice.block_dimensions",
                           "sector dimensions sum to M^2", digest,
                           static_cast<double>(basis.total_states()) - m * m, 0.0));

  std::vector<StateRef> zero_sector = basis.sector_states(0);
  std::vector<StateRef> probe = zero_sector;
  std::vector<StateRef> other = basis.sector_states(3);
  probe.insert(probe.end(), other.begin(), other.end());

  // eigenvalue relations and cross-sector orthogonality on the embeddings
  {
    double worst_residual = 0.0;
    double h_norm = 0.0;
    for (int s = 0; s < m; ++s) {
      h_norm = std::max(h_norm, std::abs(model.kinetic_kernel1(s)) +
                                    std::abs(model.kinetic_kernel2(s)));
    }
    h_norm = h_norm * m + std::abs(cfg.well_depth);
    for (const auto& ref : probe) {
      auto psi = basis.embed(ref);
      double r = (model.apply_hamiltonian(psi) - basis.energy(ref) * psi).norm();
      worst_residual = std::max(worst_residual, r);
    }
    out.push_back(make_check("lattice.block_residual",
                             "embedded sector vectors satisfy H psi = E psi", digest,
                             worst_residual / h_norm, 1e-10));

    double worst_ortho = 0.0;
    for (std::size_t a = 0; a < probe.size(); a += 7) {
      for (std::size_t b = a + 1; b < probe.size(); b += 5) {
        std::complex<double> ip = inner(basis.embed(probe[a]), basis.embed(probe[b]));
        worst_ortho = std::max(worst_ortho, std::abs(ip));
      }
    }
    out.push_back(make_check("lattice.sector_orthogonality",
                             "distinct eigenvectors are orthogonal across sectors",
                             digest, worst_ortho, 1e-12));
  }

  // parity expectation on K=0 eigenvectors
  {
    double worst = 0.0;
    for (const auto& ref : zero_sector) {
      auto psi = basis.embed(ref);
      std::complex<double> pexp = inner(psi, model.apply_inversion(psi));
      worst = std::max(worst, std::abs(pexp - double(basis.label(ref).parity)));
    }
    out.push_back(make_check("lattice.parity_labels",
                             "K=0 eigenvectors carry parity expectation +-1", digest,
                             worst, cfg.tol_exact));
  }

  // <n| P^r |m> vanishes on the K = 0 sector
  for (int r = 1; r <= 3; ++r) {
    double worst =
        momentum_power_elements(basis, zero_sector, r).cwiseAbs().maxCoeff();
    out.push_back(make_check("lattice.momentum_power.r" + std::to_string(r),
                             "K=0 sector: <n| P^" + std::to_string(r) +
                                 " |m> = 0 exactly",
                             digest, worst, cfg.tol_exact));
  }

  // <n| f(P) |m> = f(0) delta_nm on the K = 0 sector
  {
    std::vector<double> cosine = {1.0, 0.0, -0.5 * 0.3 * 0.3, 0.0,
                                  std::pow(0.3, 4) / 24.0, 0.0,
                                  -std::pow(0.3, 6) / 720.0};
    Eigen::MatrixXcd f = power_series_elements(basis, zero_sector, cosine);
    Eigen::MatrixXcd expected =
        cosine[0] * Eigen::MatrixXcd::Identity(f.rows(), f.cols());
    out.push_back(make_check("lattice.power_series.delta",
                             "K=0 sector: <n| f(P) |m> = f(0) delta_nm", digest,
                             (f - expected).cwiseAbs().maxCoeff(), cfg.tol_series));

    std::vector<double> no_constant = {0.0, 0.0, 0.7, -0.3};
    double worst =
        power_series_elements(basis, zero_sector, no_constant).cwiseAbs().maxCoeff();
    out.push_back(make_check("lattice.power_series.zero_constant",
                             "K=0 sector: f(0) = 0 makes <n| f(P) |m> vanish",
                             digest, worst, cfg.tol_series));
  }

  // translation invariance of the K = 0 states; phases elsewhere
  {
    double worst = 0.0;
    for (int d : {1, 5, m}) {
      Eigen::MatrixXcd u = translation_matrix_elements(basis, zero_sector, d);
      worst = std::max(worst,
                       (u - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
                           .cwiseAbs()
                           .maxCoeff());
    }
    out.push_back(make_check("lattice.translation.invariance",
                             "U(d) acts as the identity on the K=0 sector", digest,
                             worst, cfg.tol_translation));

    int d = 3;
    Eigen::MatrixXcd u = translation_matrix_elements(basis, probe, d);
    double worst_phase = 0.0;
    for (Eigen::Index a = 0; a < u.rows(); ++a) {
      for (Eigen::Index b = 0; b < u.cols(); ++b) {
        std::complex<double> expected(0.0, 0.0);
        if (a == b) {
          double arg = -basis.label(probe[a]).K * d * model.system().spacing /
                       model.system().hbar;
          expected = std::complex<double>(std::cos(arg), std::sin(arg));
        }
        worst_phase = std::max(worst_phase, std::abs(u(a, b) - expected));
      }
    }
    out.push_back(make_check("lattice.translation.phases",
                             "<n| U(d) |m> = exp(-i K d Delta / hbar) delta_nm",
                             digest, worst_phase, cfg.tol_translation));
  }

  // Gaussian filter of the total momentum
  {
    double a = cfg.gaussian_width;
    double norm_1d = 1.0 / (2.0 * a * std::sqrt(3.14159265358979323846));
    for (double target : {0.0, model.momentum_value(m / 2)}) {
      GaussianFilter filter{a, target};
      Eigen::MatrixXcd g = gaussian_filter_elements(basis, zero_sector, filter);
      double expected = norm_1d * std::exp(-target * target / (4.0 * a * a));
      Eigen::MatrixXcd want =
          expected * Eigen::MatrixXcd::Identity(g.rows(), g.cols());
      std::string which = target == 0.0 ? "zero" : "edge";
      out.push_back(make_check(
          "lattice.gaussian.diagonal." + which,
          "K=0 sector: <n| phi_a(P,K) |m> = (2 a sqrt(pi))^-1 exp(-K^2/4a^2) "
          "delta_nm",
          digest, (g - want).cwiseAbs().maxCoeff(), cfg.tol_gaussian));
    }

    double worst_scaling = 0.0;
    for (double aa : {0.5, 0.25, 0.125}) {
      GaussianFilter filter{aa, 0.0};
      Eigen::MatrixXcd g = gaussian_filter_elements(
          basis, {zero_sector[0], zero_sector[1]}, filter);
      double scaled = std::abs(g(0, 0)) * aa;
      worst_scaling = std::max(
          worst_scaling,
          std::abs(scaled - 1.0 / (2.0 * std::sqrt(3.14159265358979323846))));
    }
    out.push_back(make_check("lattice.gaussian.scaling",
                             "diagonal element times a is constant as a -> 0",
                             digest, worst_scaling, cfg.tol_gaussian));
  }

  // two routes to the total-momentum projector
  {
    double worst = 0.0;
    for (int q = 0; q < m; ++q) {
      worst = std::max(worst, delta_representation_residual(model, q));
    }
    out.push_back(make_check("lattice.delta_representation",
                             "spectral and position-formula projectors agree for "
                             "every K",
                             digest, worst, cfg.tol_exact));
    out.push_back(make_check("lattice.delta_completeness",
                             "sum over K of the projectors is the identity", digest,
                             delta_completeness_residual(model), cfg.tol_exact));
  }

  // lattice G: cross-parity elements vanish; [G,H] consistency; refinement law
  {
    std::vector<StateRef> even = even_bound_pair(basis);
    std::vector<StateRef> odd;
    for (int s = 0; s < static_cast<int>(basis.sectors.size()); ++s) {
      const Sector& sector = basis.sectors[s];
      if (sector.q_index != 0 || sector.parity != -1) continue;
      for (int k = 0; k < std::min<Eigen::Index>(2, sector.energies.size()); ++k) {
        odd.push_back({s, k});
      }
    }
    std::vector<StateRef> mixed = even;
    mixed.insert(mixed.end(), odd.begin(), odd.end());
    GeneratorElements ge = generator_elements(basis, mixed);

    double worst_cross = 0.0;
    for (std::size_t a = 0; a < mixed.size(); ++a) {
      for (std::size_t b = 0; b < mixed.size(); ++b) {
        if (basis.label(mixed[a]).parity == basis.label(mixed[b]).parity) continue;
        worst_cross = std::max(worst_cross, std::abs(ge.g(a, b)));
      }
    }
    out.push_back(make_check("lattice.generator.cross_parity",
                             "<n| G |m> = 0 between opposite-parity K=0 states",
                             digest, worst_cross, cfg.tol_cross_parity));

    double worst_gate = 0.0;
    for (std::size_t a = 0; a < mixed.size(); ++a) {
      for (std::size_t b = 0; b < mixed.size(); ++b) {
        std::complex<double> rhs =
            (basis.energy(mixed[b]) - basis.energy(mixed[a])) * ge.g(a, b);
        worst_gate = std::max(worst_gate, std::abs(ge.gh_comm(a, b) - rhs));
      }
    }
    out.push_back(make_check("lattice.generator.commutator_identity",
                             "<n|[G,H]|m> = (E_m - E_n) <n|G|m> on eigenvectors",
                             digest, worst_gate, 1e-10));

    double worst_diag = 0.0;
    for (std::size_t a = 0; a < mixed.size(); ++a) {
      worst_diag = std::max(worst_diag, std::abs(ge.gh_comm(a, a)));
    }
    out.push_back(make_check("lattice.generator.diagonal",
                             "<n|[G,H]|n> = 0 on eigenvectors", digest, worst_diag,
                             1e-8));
    // the nonlocal kinetic kernels decay algebraically, so bound states keep
    // a small tail at the seam; recorded against a loose sanity bound, with
    // the 1e-6 warning threshold carried by GeneratorElements::seam_warning
    out.push_back(make_check("lattice.generator.seam_amplitude",
                             "relative bound-state amplitude at the sawtooth seam "
                             "stays small (warning fires above 1e-6)",
                             digest, ge.seam_amplitude, 1e-3));

    // refinement toward the continuum statement: within-sector bound pair
    LatticeModel fine(lattice_system(cfg, cfg.refine_sites));
    SectorEigenbasis fine_basis = block_diagonalize(fine, {0});
    std::vector<StateRef> fine_even = even_bound_pair(fine_basis);
    if (even.size() == 2 && fine_even.size() == 2) {
      double coarse = std::abs(
          generator_elements(basis, even).gh_comm(0, 1));
      double refined = std::abs(
          generator_elements(fine_basis, fine_even).gh_comm(0, 1));
      out.push_back(make_check(
          "lattice.generator.refinement",
          "within-sector |<n|[G,H]|m>| drops by the required factor under M "
          "doubling at fixed ring length",
          digest, refined / (coarse / cfg.refine_factor), 1.0));
    } else {
      out.push_back(make_check("lattice.generator.refinement",
                               "needs two even-parity bound states", digest, 1.0,
                               0.0));
    }
  }

  if (!cfg.sectors_json.empty()) {
    nlohmann::json artifact = nlohmann::json::array();
    for (const auto& sector : basis.sectors) {
      if (!cfg.sectors.empty() &&
          std::find(cfg.sectors.begin(), cfg.sectors.end(), sector.q_index) ==
              cfg.sectors.end()) {
        continue;
      }
      nlohmann::json energies = nlohmann::json::array();
      for (int k = 0; k < sector.energies.size(); ++k) {
        energies.push_back(sector.energies(k));
      }
      artifact.push_back({{"q_index", sector.q_index},
                          {"K", sector.K},
                          {"parity", sector.parity},
                          {"energies", energies}});
    }
    std::ofstream artifact_out(cfg.sectors_json);
    if (!artifact_out) {
      throw ConfigError("cannot open lattice sectors path: " + cfg.sectors_json);
    }
    artifact_out << artifact.dump(2) << "\n";
  }

  return out;
}

}  // namespace vlab
