#include "vlab/dilation.hpp"

namespace vlab {

namespace {

void check_dims(const GeneratorSpec& spec) {
  if (spec.dims != 1 && spec.dims != 3) {
    throw DimsError("dims must be 1 or 3");
  }
  if (spec.n_particles < 1) {
    throw DimsError("n_particles must be >= 1");
  }
}

}  // namespace

OperatorExpr dilation_generator(const GeneratorSpec& spec) {
  check_dims(spec);
  OperatorExpr g;
  Coeff half = Coeff::rational(1, 2);
  for (int k = 1; k <= spec.n_particles; ++k) {
    for (int a = 1; a <= spec.dims; ++a) {
      g += normal_order(half, {position(k, a), momentum(k, a)});
      g += normal_order(half, {momentum(k, a), position(k, a)});
    }
  }
  return g;
}

OperatorExpr angular_momentum_z(const GeneratorSpec& spec) {
  check_dims(spec);
  if (spec.dims != 3) throw DimsError("angular momentum requires dims == 3");
  OperatorExpr lz;
  for (int k = 1; k <= spec.n_particles; ++k) {
    lz += normal_order(Coeff::one(), {position(k, 1), momentum(k, 2)});
    lz -= normal_order(Coeff::one(), {position(k, 2), momentum(k, 1)});
  }
  return lz;
}

OperatorExpr total_momentum(const GeneratorSpec& spec, int axis) {
  check_dims(spec);
  if (axis < 1 || axis > spec.dims) throw DimsError("axis outside dims");
  OperatorExpr p;
  for (int k = 1; k <= spec.n_particles; ++k) {
    p += OperatorExpr::factor(momentum(k, axis));
  }
  return p;
}

OperatorExpr directional_derivative(const OperatorExpr& f, FactorKind kind) {
  if (!pure_kind(f, kind)) {
    throw MixedKindError("directional derivative requires a single factor kind");
  }
  OperatorExpr out;
  for (const auto& [fs, c] : f.terms()) {
    long degree = static_cast<long>(fs.size());
    if (degree == 0) continue;  // constants drop
    out.add_canonical_term(fs, c * Coeff::integer(degree));
  }
  return out;
}

OperatorExpr dilate(const OperatorExpr& e) {
  OperatorExpr out;
  for (const auto& [fs, c] : e.terms()) {
    int shift = 0;
    for (const auto& f : fs) shift += f.kind == FactorKind::Position ? 1 : -1;
    out.add_canonical_term(fs, c.shifted_lambda(shift));
  }
  return out;
}

std::optional<int> euler_degree(const OperatorExpr& v) {
  if (!pure_kind(v, FactorKind::Position)) {
    throw MixedKindError("euler_degree requires a pure Position polynomial");
  }
  std::optional<int> degree;
  for (const auto& [fs, c] : v.terms()) {
    int d = static_cast<int>(fs.size());
    if (degree && *degree != d) return std::nullopt;
    degree = d;
  }
  return degree;
}

OperatorExpr virial_commutator(const HamiltonianSpec& h) {
  if (!pure_kind(h.kinetic, FactorKind::Momentum)) {
    throw MixedKindError("kinetic part must contain only Momentum factors");
  }
  if (!pure_kind(h.potential, FactorKind::Position)) {
    throw MixedKindError("potential part must contain only Position factors");
  }
  OperatorExpr result = directional_derivative(h.kinetic, FactorKind::Momentum);
  result -= directional_derivative(h.potential, FactorKind::Position);
  return scale(Coeff::i_hbar(), result);
}

OperatorExpr momentum_monomial_commutator(const GeneratorSpec& spec,
                                          const std::vector<int>& axes) {
  OperatorExpr mono = OperatorExpr::identity();
  for (int a : axes) mono = mul(mono, total_momentum(spec, a));
  return commutator(dilation_generator(spec), mono);
}

}  // namespace vlab
