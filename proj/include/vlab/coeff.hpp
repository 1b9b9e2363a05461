#pragma once

#include <gmpxx.h>

#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace vlab {

// Exact complex number with rational real and imaginary parts.
struct RationalComplex {
  mpq_class re{0};
  mpq_class im{0};

  RationalComplex() = default;
  RationalComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  static RationalComplex integer(long v) { return {mpq_class(v), mpq_class(0)}; }
  static RationalComplex rational(long num, long den) {
    return {mpq_class(num, den), mpq_class(0)};
  }
  static RationalComplex unit_i() { return {mpq_class(0), mpq_class(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  RationalComplex conj() const { return {re, mpq_class(-im)}; }
  // Multiplication by the imaginary unit: (a + bi) i = -b + ai.
  RationalComplex times_i() const { return {mpq_class(-im), re}; }

  friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend RationalComplex operator-(const RationalComplex& a) {
    return {mpq_class(-a.re), mpq_class(-a.im)};
  }
  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  double re_double() const { return re.get_d(); }
  double im_double() const { return im.get_d(); }
};

// One term of a scalar coefficient: value * hbar^hbar_power * lam^lambda_power.
// hbar_power >= 0; lambda_power may be negative (momentum factors dilate as 1/lam).
struct CoeffTerm {
  int hbar_power = 0;
  int lambda_power = 0;
  RationalComplex value;

  // ordering key is the symbol powers only; equality includes the value
  friend std::strong_ordering operator<=>(const CoeffTerm& a, const CoeffTerm& b) {
    if (auto c = a.hbar_power <=> b.hbar_power; c != 0) return c;
    return a.lambda_power <=> b.lambda_power;
  }
  friend bool operator==(const CoeffTerm& a, const CoeffTerm& b) {
    return a.hbar_power == b.hbar_power && a.lambda_power == b.lambda_power &&
           a.value == b.value;
  }
};

// Scalar coefficient of a monomial: an exact polynomial in the formal symbol
// hbar and Laurent polynomial in the scale symbol lam, with rational-complex
// values. Stored sparse, sorted by (hbar_power, lambda_power), no zero terms.
class Coeff {
 public:
  Coeff() = default;
  Coeff(RationalComplex v, int hbar_power = 0, int lambda_power = 0);

  static Coeff zero() { return Coeff(); }
  static Coeff one() { return Coeff(RationalComplex::integer(1)); }
  static Coeff integer(long v) { return Coeff(RationalComplex::integer(v)); }
  static Coeff rational(long num, long den) {
    return Coeff(RationalComplex::rational(num, den));
  }
  static Coeff unit_i() { return Coeff(RationalComplex::unit_i()); }
  static Coeff hbar(int power = 1) {
    return Coeff(RationalComplex::integer(1), power);
  }
  static Coeff lam(int power = 1) {
    return Coeff(RationalComplex::integer(1), 0, power);
  }
  // i * hbar, the ubiquitous rewrite factor.
  static Coeff i_hbar() { return Coeff(RationalComplex::unit_i(), 1); }

  bool is_zero() const { return terms_.empty(); }
  // True when the coefficient is a plain rational-complex number (no hbar/lam).
  bool is_pure_number() const {
    return terms_.size() == 1 && terms_[0].hbar_power == 0 && terms_[0].lambda_power == 0;
  }
  bool is_one() const {
    return is_pure_number() && terms_[0].value == RationalComplex::integer(1);
  }

  const std::vector<CoeffTerm>& terms() const { return terms_; }

  Coeff conj() const;
  Coeff negated() const;
  // Multiply by lam^k (dilation bookkeeping).
  Coeff shifted_lambda(int k) const;

  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend bool operator==(const Coeff& a, const Coeff& b) { return a.terms_ == b.terms_; }

  // Numeric value with hbar and lam substituted (for cross-checks against
  // floating-point oracles).
  std::complex<double> eval(double hbar_value = 1.0, double lam_value = 1.0) const;

 private:
  void insert_term(CoeffTerm t);
  std::vector<CoeffTerm> terms_;
};

}  // namespace vlab
