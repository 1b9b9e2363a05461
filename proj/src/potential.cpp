#include "vlab/potential.hpp"

#include <algorithm>
#include <cmath>

namespace vlab {

PotentialSpec PotentialSpec::table(std::vector<double> r, std::vector<double> v) {
  if (r.size() != v.size() || r.size() < 2) {
    throw ConfigError("potential table needs matching r/v arrays of length >= 2");
  }
  if (!std::is_sorted(r.begin(), r.end())) {
    throw ConfigError("potential table radii must be ascending");
  }
  PotentialSpec p;
  p.family = Family::Table;
  p.table_r = std::move(r);
  p.table_v = std::move(v);
  return p;
}

double PotentialSpec::value(double r) const {
  switch (family) {
    case Family::PowerLaw:
      return strength * std::pow(r, degree);
    case Family::Coulomb:
      return strength / r;
    case Family::Harmonic:
      return 0.5 * strength * r * r;
    case Family::Table: {
      auto hi = std::upper_bound(table_r.begin(), table_r.end(), r);
      if (hi == table_r.begin()) return table_v.front();
      if (hi == table_r.end()) return table_v.back();
      std::size_t k = static_cast<std::size_t>(hi - table_r.begin());
      double t = (r - table_r[k - 1]) / (table_r[k] - table_r[k - 1]);
      return (1.0 - t) * table_v[k - 1] + t * table_v[k];
    }
  }
  return 0.0;
}

double PotentialSpec::radial_derivative(double r) const {
  switch (family) {
    case Family::PowerLaw:
      return strength * degree * std::pow(r, degree - 1.0);
    case Family::Coulomb:
      return -strength / (r * r);
    case Family::Harmonic:
      return strength * r;
    case Family::Table: {
      // centered difference on the sample spacing around r
      auto hi = std::upper_bound(table_r.begin(), table_r.end(), r);
      std::size_t k = hi == table_r.begin() ? 1
                      : hi == table_r.end()
                          ? table_r.size() - 1
                          : static_cast<std::size_t>(hi - table_r.begin());
      return (table_v[k] - table_v[k - 1]) / (table_r[k] - table_r[k - 1]);
    }
  }
  return 0.0;
}

std::optional<double> PotentialSpec::homogeneity_degree() const {
  switch (family) {
    case Family::PowerLaw:
      return degree;
    case Family::Coulomb:
      return -1.0;
    case Family::Harmonic:
      return 2.0;
    case Family::Table:
      return std::nullopt;
  }
  return std::nullopt;
}

bool PotentialSpec::singular_at_origin() const {
  switch (family) {
    case Family::Coulomb:
      return true;
    case Family::PowerLaw:
      return degree < 0.0;
    default:
      return false;
  }
}

}  // namespace vlab
