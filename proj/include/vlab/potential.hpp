#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vlab/errors.hpp"

namespace vlab {

// Radial potential family shared by the classical and spectral engines.
// PowerLaw:  V(r) = strength * r^degree
// Coulomb:   V(r) = strength / r
// Harmonic:  V(r) = (1/2) strength r^2
// Table:     piecewise-linear samples, derivative by centered differences
struct PotentialSpec {
  enum class Family { PowerLaw, Coulomb, Harmonic, Table };

  Family family = Family::Harmonic;
  double strength = 1.0;
  double degree = 2.0;  // PowerLaw exponent
  std::vector<double> table_r, table_v;

  static PotentialSpec power_law(double strength, double degree) {
    PotentialSpec p;
    p.family = Family::PowerLaw;
    p.strength = strength;
    p.degree = degree;
    return p;
  }
  static PotentialSpec coulomb(double strength) {
    PotentialSpec p;
    p.family = Family::Coulomb;
    p.strength = strength;
    return p;
  }
  static PotentialSpec harmonic(double k) {
    PotentialSpec p;
    p.family = Family::Harmonic;
    p.strength = k;
    return p;
  }
  static PotentialSpec table(std::vector<double> r, std::vector<double> v);

  double value(double r) const;
  double radial_derivative(double r) const;  // dV/dr

  // Homogeneity degree when the family has one (Table does not).
  std::optional<double> homogeneity_degree() const;

  // True when V(r) -> +-inf as r -> 0, so trajectories need a core guard.
  bool singular_at_origin() const;
};

}  // namespace vlab
