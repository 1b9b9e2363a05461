#include "vlab/opalg.hpp"

#include <algorithm>
#include <utility>

namespace vlab {

OperatorExpr OperatorExpr::identity(Coeff c) {
  OperatorExpr e;
  e.add_canonical_term({}, std::move(c));
  return e;
}

OperatorExpr OperatorExpr::factor(CanonicalFactor f) {
  OperatorExpr e;
  e.add_canonical_term({f}, Coeff::one());
  return e;
}

OperatorExpr OperatorExpr::monomial(Coeff c, FactorSeq raw_product, std::size_t cap) {
  return normal_order(std::move(c), std::move(raw_product), cap);
}

void OperatorExpr::add_canonical_term(FactorSeq factors, Coeff c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(std::move(factors), std::move(c));
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OperatorExpr OperatorExpr::operator-() const {
  OperatorExpr out;
  for (const auto& [f, c] : terms_) out.terms_.emplace(f, c.negated());
  return out;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
  for (const auto& [f, c] : o.terms_) add_canonical_term(f, c);
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
  for (const auto& [f, c] : o.terms_) add_canonical_term(f, c.negated());
  return *this;
}

namespace {

// Accumulates normal_order(c * raw) into `out`. Frontier rewriting: an
// adjacent commuting inversion is swapped in place; a momentum-position pair
// on the same (particle, axis) splits into the swapped word and the
// contracted word times -i hbar, from p x = x p - i hbar. Identical pending
// words merge their coefficients, so the budget counts distinct intermediate
// monomials.
void normal_order_into(OperatorExpr& out, Coeff c, FactorSeq raw, std::size_t cap,
                       std::size_t& budget) {
  if (c.is_zero()) return;
  std::map<FactorSeq, Coeff> frontier;
  frontier.emplace(std::move(raw), std::move(c));

  auto merge = [&frontier](FactorSeq word, Coeff coeff) {
    auto [it, inserted] = frontier.try_emplace(std::move(word), std::move(coeff));
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) frontier.erase(it);
    }
  };

  while (!frontier.empty()) {
    if (++budget > cap) {
      throw ExpressionBlowup("monomial cap exceeded during normal ordering");
    }
    auto node = frontier.extract(frontier.begin());
    FactorSeq fac = std::move(node.key());
    Coeff coeff = std::move(node.mapped());

    bool split = false;
    for (std::size_t i = 1; i < fac.size() && !split; ++i) {
      std::size_t j = i;
      while (j > 0 && fac[j] < fac[j - 1]) {
        if (factors_commute(fac[j], fac[j - 1])) {
          std::swap(fac[j], fac[j - 1]);
          --j;
        } else {
          // fac[j-1] = p_k, fac[j] = x_k on the same (particle, axis).
          FactorSeq contracted;
          contracted.reserve(fac.size() - 2);
          contracted.insert(contracted.end(), fac.begin(), fac.begin() + j - 1);
          contracted.insert(contracted.end(), fac.begin() + j + 1, fac.end());
          merge(std::move(contracted), coeff * Coeff::i_hbar().negated());
          std::swap(fac[j], fac[j - 1]);
          merge(std::move(fac), std::move(coeff));
          split = true;
          break;
        }
      }
    }
    if (!split) out.add_canonical_term(std::move(fac), std::move(coeff));
  }
}

}  // namespace

OperatorExpr normal_order(const Coeff& c, FactorSeq raw_product, std::size_t cap) {
  OperatorExpr out;
  std::size_t budget = 0;
  normal_order_into(out, c, std::move(raw_product), cap, budget);
  return out;
}

OperatorExpr add(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr out = a;
  out += b;
  return out;
}

OperatorExpr mul(const OperatorExpr& a, const OperatorExpr& b, std::size_t cap) {
  OperatorExpr out;
  std::size_t budget = 0;
  for (const auto& [fa, ca] : a.terms()) {
    for (const auto& [fb, cb] : b.terms()) {
      FactorSeq prod;
      prod.reserve(fa.size() + fb.size());
      prod.insert(prod.end(), fa.begin(), fa.end());
      prod.insert(prod.end(), fb.begin(), fb.end());
      normal_order_into(out, ca * cb, std::move(prod), cap, budget);
    }
  }
  return out;
}

OperatorExpr scale(const Coeff& c, const OperatorExpr& a) {
  OperatorExpr out;
  for (const auto& [f, ce] : a.terms()) out.add_canonical_term(f, c * ce);
  return out;
}

OperatorExpr pow(const OperatorExpr& a, unsigned exponent, std::size_t cap) {
  OperatorExpr out = OperatorExpr::identity();
  for (unsigned k = 0; k < exponent; ++k) out = mul(out, a, cap);
  return out;
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b, std::size_t cap) {
  return mul(a, b, cap) - mul(b, a, cap);
}

OperatorExpr adjoint(const OperatorExpr& a, std::size_t cap) {
  OperatorExpr out;
  std::size_t budget = 0;
  for (const auto& [f, c] : a.terms()) {
    FactorSeq rev(f.rbegin(), f.rend());
    normal_order_into(out, c.conj(), std::move(rev), cap, budget);
  }
  return out;
}

bool pure_kind(const OperatorExpr& e, FactorKind kind) {
  for (const auto& [f, c] : e.terms()) {
    for (const auto& factor : f) {
      if (factor.kind != kind) return false;
    }
  }
  return true;
}

int max_degree(const OperatorExpr& e) {
  std::size_t deg = 0;
  for (const auto& [f, c] : e.terms()) deg = std::max(deg, f.size());
  return static_cast<int>(deg);
}

}  // namespace vlab
