#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vlab/coeff.hpp"
#include "vlab/errors.hpp"

namespace vlab {

enum class FactorKind : std::uint8_t { Position = 0, Momentum = 1 };

// One canonical operator factor: x[particle,axis] or p[particle,axis].
// The member order gives the canonical total order: all Position factors
// sort before all Momentum factors, then by (particle, axis).
struct CanonicalFactor {
  FactorKind kind = FactorKind::Position;
  std::uint16_t particle = 1;  // 1-based
  std::uint8_t axis = 1;       // 1..3

  friend auto operator<=>(const CanonicalFactor&, const CanonicalFactor&) = default;
};

inline CanonicalFactor position(int particle, int axis = 1) {
  return {FactorKind::Position, static_cast<std::uint16_t>(particle),
          static_cast<std::uint8_t>(axis)};
}
inline CanonicalFactor momentum(int particle, int axis = 1) {
  return {FactorKind::Momentum, static_cast<std::uint16_t>(particle),
          static_cast<std::uint8_t>(axis)};
}

// Factors commute unless they are an x/p pair on the same particle and axis.
inline bool factors_commute(const CanonicalFactor& a, const CanonicalFactor& b) {
  return a.kind == b.kind || a.particle != b.particle || a.axis != b.axis;
}

using FactorSeq = std::vector<CanonicalFactor>;

// Default cap on intermediate monomials processed by one rewrite.
inline constexpr std::size_t kDefaultMonomialCap = 1'000'000;

// Exact sum of normal-ordered monomials in the canonical operators, with
// coefficients that are formal polynomials in hbar and lam. The empty factor
// sequence is the identity operator. Immutable value semantics: every
// operation returns a new expression in canonical form.
class OperatorExpr {
 public:
  using TermMap = std::map<FactorSeq, Coeff>;

  OperatorExpr() = default;

  static OperatorExpr zero() { return {}; }
  static OperatorExpr identity(Coeff c = Coeff::one());
  // Single factor with coefficient 1.
  static OperatorExpr factor(CanonicalFactor f);
  // Normal-orders an arbitrary (possibly unordered) product of factors.
  static OperatorExpr monomial(Coeff c, FactorSeq raw_product,
                               std::size_t cap = kDefaultMonomialCap);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  OperatorExpr operator-() const;
  OperatorExpr& operator+=(const OperatorExpr& o);
  OperatorExpr& operator-=(const OperatorExpr& o);
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.terms_ == b.terms_;
  }

  // Used by the rewriting engine; `factors` must already be normal-ordered.
  void add_canonical_term(FactorSeq factors, Coeff c);

 private:
  TermMap terms_;
};

// Ring operations. mul normal-orders its result.
OperatorExpr add(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr mul(const OperatorExpr& a, const OperatorExpr& b,
                 std::size_t cap = kDefaultMonomialCap);
OperatorExpr scale(const Coeff& c, const OperatorExpr& a);
OperatorExpr pow(const OperatorExpr& a, unsigned exponent,
                 std::size_t cap = kDefaultMonomialCap);

// Rewrites one raw product into canonical form using [x_k, p_l] = i hbar d_kl
// and commutativity of all other pairs. Throws ExpressionBlowup past `cap`.
OperatorExpr normal_order(const Coeff& c, FactorSeq raw_product,
                          std::size_t cap = kDefaultMonomialCap);

// normal_order(a b - b a).
OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b,
                        std::size_t cap = kDefaultMonomialCap);

// Reverses each monomial, conjugates coefficients, re-normal-orders.
OperatorExpr adjoint(const OperatorExpr& a, std::size_t cap = kDefaultMonomialCap);

// Exact structural equality of canonical forms.
inline bool equals(const OperatorExpr& a, const OperatorExpr& b) { return a == b; }

// --- grammar front end -----------------------------------------------------
//
//   expr    := ['-'] term { ('+' | '-') term }
//   term    := power { '*' power }
//   power   := primary [ '^' ['-'] integer ]
//   primary := '(' expr ')' | 'x[' i ',' a ']' | 'p[' i ',' a ']'
//            | 'hbar' | 'lam' | 'i' | integer [ '/' integer ]
//
// Negative exponents are accepted for lam only.

struct ParseLimits {
  int max_particles = 0;  // 0 = unlimited
  int max_axis = 3;
};

OperatorExpr parse(std::string_view text, const ParseLimits& limits = {});

// Canonical grammar string; parse(print(e)) == e. Zero prints as "0".
std::string print(const OperatorExpr& e);

// --- structure helpers ------------------------------------------------------

// True if every factor of every monomial has the given kind. The identity
// monomial (no factors) is allowed.
bool pure_kind(const OperatorExpr& e, FactorKind kind);

// Largest total factor count over the monomials (0 for scalars and zero).
int max_degree(const OperatorExpr& e);

}  // namespace vlab
