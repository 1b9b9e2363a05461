#pragma once

#include <optional>
#include <vector>

#include "vlab/opalg.hpp"

namespace vlab {

struct GeneratorSpec {
  int n_particles = 1;
  int dims = 3;  // 1 or 3
};

// H = T(p) + V(r) + K with the constant K carried separately.
struct HamiltonianSpec {
  OperatorExpr kinetic;    // Momentum factors only
  OperatorExpr potential;  // Position factors only
  Coeff constant;
};

// (1/2) sum_i (r_i . p_i + p_i . r_i), hermitian; normal-ordered it equals
// sum_i r_i . p_i - (dims*N/2) i hbar.
OperatorExpr dilation_generator(const GeneratorSpec& spec);

// sum_i (x_i p_{i,y} - y_i p_{i,x}); requires dims == 3.
OperatorExpr angular_momentum_z(const GeneratorSpec& spec);

// Component `axis` of the total momentum, sum_k p[k, axis].
OperatorExpr total_momentum(const GeneratorSpec& spec, int axis);

// Euler operator sum_i r_i . df/dr_i (Position) or sum_i p_i . df/dp_i
// (Momentum), term-wise: a monomial of total degree d maps to d times itself.
// Throws MixedKindError unless f is pure in the stated kind.
OperatorExpr directional_derivative(const OperatorExpr& f, FactorKind kind);

// Scaling map r -> lam r, p -> lam^-1 p as formal lam exponents.
OperatorExpr dilate(const OperatorExpr& e);

// Degree d with directional_derivative(v) == d * v, if one exists.
std::optional<int> euler_degree(const OperatorExpr& v);

// i hbar (sum p . dT/dp - sum r . dV/dr); equals commutator(G, T + V + K).
OperatorExpr virial_commutator(const HamiltonianSpec& h);

// [G, P_{a1} P_{a2} ... P_{ar}] for total-momentum components; equals
// i hbar r times the monomial.
OperatorExpr momentum_monomial_commutator(const GeneratorSpec& spec,
                                          const std::vector<int>& axes);

}  // namespace vlab
