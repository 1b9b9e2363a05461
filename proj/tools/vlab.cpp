// Command-line front end: suite orchestration, report emission, and the
// symbolic commutator/dilation helpers.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "vlab/dilation.hpp"
#include "vlab/opalg.hpp"
#include "vlab/report.hpp"
#include "vlab/suites.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInternalError = 3;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& context) {
  if (!obj.is_object()) {
    throw vlab::ConfigError(context + " must be a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw vlab::ConfigError("unknown key '" + key + "' in " + context);
    }
  }
}

template <typename T>
void load(const json& obj, const char* key, T& into) {
  if (obj.contains(key)) into = obj.at(key).get<T>();
}

struct RunConfig {
  std::string suite = "all";
  std::string report_path = "report.json";
  std::string trajectory_csv;
  vlab::SymbolicSuiteConfig symbolic;
  vlab::ClassicalSuiteConfig classical;
  vlab::SpectralSuiteConfig spectral;
  vlab::LatticeSuiteConfig lattice;
};

RunConfig parse_config(const json& j) {
  require_keys(j, {"suite", "output", "symbolic", "classical", "spectral", "lattice"},
               "config");
  RunConfig cfg;
  load(j, "suite", cfg.suite);
  const std::set<std::string> suites = {"symbolic", "classical", "spectral",
                                        "lattice", "all"};
  if (!suites.count(cfg.suite)) {
    throw vlab::ConfigError("suite must be one of symbolic|classical|spectral|lattice|all");
  }
  if (j.contains("output")) {
    require_keys(j.at("output"),
                 {"report", "trajectory_csv", "averages_json", "spectral_states_json",
                  "lattice_sectors_json"},
                 "output");
    load(j.at("output"), "report", cfg.report_path);
    load(j.at("output"), "trajectory_csv", cfg.trajectory_csv);
    load(j.at("output"), "averages_json", cfg.classical.averages_json);
    load(j.at("output"), "spectral_states_json", cfg.spectral.states_json);
    load(j.at("output"), "lattice_sectors_json", cfg.lattice.sectors_json);
  }
  if (j.contains("symbolic")) {
    const json& s = j.at("symbolic");
    require_keys(s,
                 {"seed", "cases", "max_degree", "max_particles", "dims", "max_terms",
                  "momentum_monomial_max_power"},
                 "symbolic");
    load(s, "seed", cfg.symbolic.seed);
    load(s, "cases", cfg.symbolic.cases);
    load(s, "max_degree", cfg.symbolic.max_degree);
    load(s, "max_particles", cfg.symbolic.max_particles);
    load(s, "dims", cfg.symbolic.dims);
    load(s, "max_terms", cfg.symbolic.max_terms);
    load(s, "momentum_monomial_max_power", cfg.symbolic.momentum_monomial_max_power);
  }
  if (j.contains("classical")) {
    const json& s = j.at("classical");
    require_keys(s,
                 {"periods", "steps_per_period_harmonic", "steps_per_period_kepler",
                  "kepler_eccentricity", "tol_balance", "pathwise_dt2_factor",
                  "halving_slack"},
                 "classical");
    load(s, "periods", cfg.classical.periods);
    load(s, "steps_per_period_harmonic", cfg.classical.steps_per_period_harmonic);
    load(s, "steps_per_period_kepler", cfg.classical.steps_per_period_kepler);
    load(s, "kepler_eccentricity", cfg.classical.kepler_eccentricity);
    load(s, "tol_balance", cfg.classical.tol_balance);
    load(s, "pathwise_dt2_factor", cfg.classical.pathwise_dt2_factor);
    load(s, "halving_slack", cfg.classical.halving_slack);
  }
  if (j.contains("spectral")) {
    const json& s = j.at("spectral");
    require_keys(
        s, {"hydrogen_n_points", "hydrogen_r_max", "tol_hydrogen_energy",
            "tol_hydrogen_virial", "harmonic_n_points", "harmonic_r_max",
            "harmonic_states", "tol_harmonic_virial", "tol_harmonic_energy",
            "salpeter_n_points", "salpeter_r_max", "salpeter_states",
            "tol_salpeter_virial", "tol_salpeter_dilation", "dilation_step",
            "scenarios"},
        "spectral");
    if (s.contains("scenarios")) {
      for (const json& sc : s.at("scenarios")) {
        require_keys(sc, {"name", "grid", "kinetic", "potential", "ell", "k",
                          "dilation_step"},
                     "spectral scenario");
        vlab::SpectralScenario scenario;
        load(sc, "name", scenario.name);
        if (scenario.name.empty()) {
          throw vlab::ConfigError("spectral scenario needs a name");
        }
        require_keys(sc.at("grid"), {"n", "r_max"}, "scenario grid");
        load(sc.at("grid"), "n", scenario.problem.grid.n_points);
        load(sc.at("grid"), "r_max", scenario.problem.grid.r_max);
        if (sc.contains("kinetic")) {
          const json& kin = sc.at("kinetic");
          require_keys(kin, {"variant", "mass", "c"}, "scenario kinetic");
          std::string variant = kin.value("variant", "nonrelativistic");
          double mass = kin.value("mass", 1.0);
          double c = kin.value("c", 1.0);
          if (variant == "nonrelativistic") {
            scenario.problem.kinetic = vlab::KineticForm::nonrelativistic(mass);
          } else if (variant == "salpeter") {
            scenario.problem.kinetic = vlab::KineticForm::salpeter(mass, c);
          } else {
            throw vlab::ConfigError("unknown kinetic variant: " + variant);
          }
        }
        if (sc.contains("potential")) {
          const json& pot = sc.at("potential");
          require_keys(pot, {"family", "strength", "degree", "r", "v"},
                       "scenario potential");
          std::string family = pot.value("family", "harmonic");
          double strength = pot.value("strength", 1.0);
          if (family == "harmonic") {
            scenario.problem.potential = vlab::PotentialSpec::harmonic(strength);
          } else if (family == "coulomb") {
            scenario.problem.potential = vlab::PotentialSpec::coulomb(strength);
          } else if (family == "power_law") {
            scenario.problem.potential =
                vlab::PotentialSpec::power_law(strength, pot.value("degree", 2.0));
          } else if (family == "table") {
            scenario.problem.potential = vlab::PotentialSpec::table(
                pot.at("r").get<std::vector<double>>(),
                pot.at("v").get<std::vector<double>>());
          } else {
            throw vlab::ConfigError("unknown potential family: " + family);
          }
        }
        load(sc, "ell", scenario.problem.ell);
        load(sc, "k", scenario.k);
        load(sc, "dilation_step", scenario.dilation_step);
        cfg.spectral.scenarios.push_back(std::move(scenario));
      }
    }
    load(s, "hydrogen_n_points", cfg.spectral.hydrogen_n_points);
    load(s, "hydrogen_r_max", cfg.spectral.hydrogen_r_max);
    load(s, "tol_hydrogen_energy", cfg.spectral.tol_hydrogen_energy);
    load(s, "tol_hydrogen_virial", cfg.spectral.tol_hydrogen_virial);
    load(s, "harmonic_n_points", cfg.spectral.harmonic_n_points);
    load(s, "harmonic_r_max", cfg.spectral.harmonic_r_max);
    load(s, "harmonic_states", cfg.spectral.harmonic_states);
    load(s, "tol_harmonic_virial", cfg.spectral.tol_harmonic_virial);
    load(s, "tol_harmonic_energy", cfg.spectral.tol_harmonic_energy);
    load(s, "salpeter_n_points", cfg.spectral.salpeter_n_points);
    load(s, "salpeter_r_max", cfg.spectral.salpeter_r_max);
    load(s, "salpeter_states", cfg.spectral.salpeter_states);
    load(s, "tol_salpeter_virial", cfg.spectral.tol_salpeter_virial);
    load(s, "tol_salpeter_dilation", cfg.spectral.tol_salpeter_dilation);
    load(s, "dilation_step", cfg.spectral.dilation_step);
  }
  if (j.contains("lattice")) {
    const json& s = j.at("lattice");
    require_keys(s,
                 {"n_sites", "spacing", "masses", "dispersion", "interaction",
                  "sectors", "tol_exact", "tol_series",
                  "tol_translation", "tol_gaussian", "tol_cross_parity",
                  "gaussian_width", "refine_sites", "refine_factor"},
                 "lattice");
    load(s, "n_sites", cfg.lattice.n_sites);
    load(s, "spacing", cfg.lattice.spacing);
    if (s.contains("masses")) {
      auto masses = s.at("masses").get<std::vector<double>>();
      if (masses.size() != 2) throw vlab::ConfigError("lattice needs two masses");
      cfg.lattice.mass1 = masses[0];
      cfg.lattice.mass2 = masses[1];
    }
    if (s.contains("dispersion")) {
      const json& disp = s.at("dispersion");
      require_keys(disp, {"variant", "c"}, "lattice dispersion");
      std::string variant = disp.value("variant", "quadratic");
      if (variant == "salpeter") {
        cfg.lattice.salpeter = true;
      } else if (variant != "quadratic") {
        throw vlab::ConfigError("unknown dispersion variant: " + variant);
      }
      load(disp, "c", cfg.lattice.salpeter_c);
    }
    if (s.contains("interaction")) {
      const json& inter = s.at("interaction");
      require_keys(inter, {"family", "v0", "width"}, "lattice interaction");
      load(inter, "family", cfg.lattice.interaction_family);
      load(inter, "v0", cfg.lattice.well_depth);
      load(inter, "width", cfg.lattice.well_width);
    }
    if (s.contains("sectors")) {
      cfg.lattice.sectors = s.at("sectors").get<std::vector<int>>();
    }
    load(s, "tol_exact", cfg.lattice.tol_exact);
    load(s, "tol_series", cfg.lattice.tol_series);
    load(s, "tol_translation", cfg.lattice.tol_translation);
    load(s, "tol_gaussian", cfg.lattice.tol_gaussian);
    load(s, "tol_cross_parity", cfg.lattice.tol_cross_parity);
    load(s, "gaussian_width", cfg.lattice.gaussian_width);
    load(s, "refine_sites", cfg.lattice.refine_sites);
    load(s, "refine_factor", cfg.lattice.refine_factor);
  }
  return cfg;
}

int run_command(const std::string& config_path, const std::string& out_override) {
  json config_json;
  {
    std::ifstream in(config_path);
    if (!in) throw vlab::ConfigError("cannot open config file: " + config_path);
    try {
      in >> config_json;
    } catch (const json::exception& e) {
      throw vlab::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  RunConfig cfg = parse_config(config_json);
  if (!out_override.empty()) cfg.report_path = out_override;
  cfg.classical.trajectory_csv = cfg.trajectory_csv;

  vlab::VerificationReport report;
  report.config_digest = vlab::fnv1a_digest(config_json.dump());
  report.timestamp = vlab::utc_timestamp();

  auto append = [&report](std::vector<vlab::CheckRecord> checks) {
    for (auto& c : checks) report.checks.push_back(std::move(c));
  };
  if (cfg.suite == "symbolic" || cfg.suite == "all") {
    append(vlab::run_symbolic_suite(cfg.symbolic));
  }
  if (cfg.suite == "classical" || cfg.suite == "all") {
    append(vlab::run_classical_suite(cfg.classical));
  }
  if (cfg.suite == "spectral" || cfg.suite == "all") {
    append(vlab::run_spectral_suite(cfg.spectral));
  }
  if (cfg.suite == "lattice" || cfg.suite == "all") {
    append(vlab::run_lattice_suite(cfg.lattice));
  }
  report.sort_by_id();

  std::ofstream out(cfg.report_path);
  if (!out) throw vlab::ConfigError("cannot open report path: " + cfg.report_path);
  out << vlab::report_to_json(report).dump(2) << "\n";

  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.check_id
              << "  value=" << c.value << " tol=" << c.tolerance << "\n";
  }
  std::cout << report.passed() << "/" << report.checks.size() << " checks passed; report written to "
            << cfg.report_path << "\n";
  return report.failed() == 0 ? kExitPass : kExitCheckFailure;
}

// The commute/dilate helpers accept the macros G and Lz for the generator and
// the z angular momentum at the given particle count.
vlab::OperatorExpr parse_with_macros(const std::string& text, int particles, int dims) {
  if (text == "G") return vlab::dilation_generator({particles, dims});
  if (text == "Lz") return vlab::angular_momentum_z({particles, dims});
  return vlab::parse(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virial-lab: exact and numerical checks of the dilation-generator "
               "commutator identities"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a verification suite from a JSON config");
  std::string config_path, out_override;
  run->add_option("config", config_path, "config JSON path")->required();
  run->add_option("--out", out_override, "override the report output path");

  auto* commute = app.add_subcommand("commute", "print the commutator of two expressions");
  std::string expr_a, expr_b, expr_d;
  int particles = 1, dims = 3;
  commute->add_option("a", expr_a)->required();
  commute->add_option("b", expr_b)->required();
  commute->add_option("--particles", particles, "particle count for the G/Lz macros");
  commute->add_option("--dims", dims, "dimensions for the G/Lz macros");

  auto* dilate_cmd = app.add_subcommand("dilate", "apply the scaling map to an expression");
  dilate_cmd->add_option("expr", expr_d)->required();
  dilate_cmd->add_option("--particles", particles);
  dilate_cmd->add_option("--dims", dims);

  auto* report_cmd = app.add_subcommand("report", "summarize a report JSON");
  std::string summarize_path;
  report_cmd->add_option("--summarize", summarize_path, "report JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (run->parsed()) return run_command(config_path, out_override);
    if (commute->parsed()) {
      auto a = parse_with_macros(expr_a, particles, dims);
      auto b = parse_with_macros(expr_b, particles, dims);
      std::cout << vlab::print(vlab::commutator(a, b)) << "\n";
      return kExitPass;
    }
    if (dilate_cmd->parsed()) {
      std::cout << vlab::print(vlab::dilate(parse_with_macros(expr_d, particles, dims)))
                << "\n";
      return kExitPass;
    }
    if (report_cmd->parsed()) {
      std::ifstream in(summarize_path);
      if (!in) throw vlab::ConfigError("cannot open report: " + summarize_path);
      json j;
      in >> j;
      vlab::VerificationReport report = vlab::report_from_json(j);
      std::cout << "tool:    " << report.tool_version << "\n"
                << "config:  " << report.config_digest << "\n"
                << "checks:  " << report.checks.size() << " (" << report.passed()
                << " passed, " << report.failed() << " failed)\n";
      for (const auto& c : report.checks) {
        if (!c.pass) {
          std::cout << "  FAILED " << c.check_id << ": value=" << c.value
                    << " tol=" << c.tolerance << "\n";
        }
      }
      return report.failed() == 0 ? kExitPass : kExitCheckFailure;
    }
  } catch (const vlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const vlab::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const vlab::IndexError& e) {
    std::cerr << "index error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitConfigError;
}
