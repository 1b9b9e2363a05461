#include "vlab/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace vlab {

Coeff::Coeff(RationalComplex v, int hbar_power, int lambda_power) {
  if (!v.is_zero()) {
    terms_.push_back({hbar_power, lambda_power, std::move(v)});
  }
}

void Coeff::insert_term(CoeffTerm t) {
  if (t.value.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
  if (it != terms_.end() && (*it <=> t) == 0) {
    it->value = it->value + t.value;
    if (it->value.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, std::move(t));
  }
}

Coeff Coeff::conj() const {
  Coeff out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    out.terms_.push_back({t.hbar_power, t.lambda_power, t.value.conj()});
  }
  return out;
}

Coeff Coeff::negated() const {
  Coeff out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    out.terms_.push_back({t.hbar_power, t.lambda_power, -t.value});
  }
  return out;
}

Coeff Coeff::shifted_lambda(int k) const {
  Coeff out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    out.terms_.push_back({t.hbar_power, t.lambda_power + k, t.value});
  }
  return out;
}

Coeff& Coeff::operator+=(const Coeff& o) {
  for (const auto& t : o.terms_) insert_term(t);
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  for (const auto& t : o.terms_) insert_term({t.hbar_power, t.lambda_power, -t.value});
  return *this;
}

Coeff operator*(const Coeff& a, const Coeff& b) {
  Coeff out;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      out.insert_term({ta.hbar_power + tb.hbar_power,
                       ta.lambda_power + tb.lambda_power, ta.value * tb.value});
    }
  }
  return out;
}

std::complex<double> Coeff::eval(double hbar_value, double lam_value) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& t : terms_) {
    double s = std::pow(hbar_value, t.hbar_power) * std::pow(lam_value, t.lambda_power);
    acc += std::complex<double>(t.value.re_double(), t.value.im_double()) * s;
  }
  return acc;
}

}  // namespace vlab
