#include <cctype>
#include <string>

#include "vlab/opalg.hpp"

namespace vlab {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseLimits& limits)
      : text_(text), limits_(limits) {}

  OperatorExpr run() {
    skip_ws();
    OperatorExpr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c, const char* what) {
    if (!consume(c)) fail(std::string("expected '") + c + "' (" + what + ")");
  }

  mpz_class parse_integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  long parse_small_integer(const char* what) {
    mpz_class v = parse_integer();
    if (!v.fits_slong_p()) fail(std::string(what) + " out of range");
    return v.get_si();
  }

  OperatorExpr parse_expr() {
    bool neg = consume('-');
    OperatorExpr e = parse_term();
    if (neg) e = -e;
    for (;;) {
      if (consume('+')) {
        e += parse_term();
      } else if (consume('-')) {
        e -= parse_term();
      } else {
        return e;
      }
    }
  }

  OperatorExpr parse_term() {
    OperatorExpr e = parse_power();
    while (consume('*')) e = mul(e, parse_power());
    return e;
  }

  OperatorExpr parse_power() {
    OperatorExpr base = parse_primary();
    if (!consume('^')) return base;
    std::size_t at = pos_;
    bool neg = consume('-');
    long exp = parse_small_integer("exponent");
    if (!neg) return pow(base, static_cast<unsigned>(exp));
    // Negative exponents make sense only for the scale symbol lam.
    if (base.size() == 1 && base.terms().begin()->first.empty()) {
      const Coeff& c = base.terms().begin()->second;
      if (c.terms().size() == 1) {
        const CoeffTerm& t = c.terms()[0];
        if (t.hbar_power == 0 && t.lambda_power == 1 &&
            t.value == RationalComplex::integer(1)) {
          return OperatorExpr::identity(Coeff::lam(static_cast<int>(-exp)));
        }
      }
    }
    pos_ = at;
    fail("negative exponent is allowed only on lam");
  }

  OperatorExpr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      OperatorExpr e = parse_expr();
      expect(')', "closing parenthesis");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_word();
    fail("expected atom, number, or '('");
  }

  OperatorExpr parse_number() {
    mpz_class num = parse_integer();
    if (consume('/')) {
      std::size_t at = pos_;
      mpz_class den = parse_integer();
      if (den == 0) {
        pos_ = at;
        fail("zero denominator");
      }
      return OperatorExpr::identity(
          Coeff(RationalComplex(mpq_class(num, den), mpq_class(0))));
    }
    return OperatorExpr::identity(Coeff(RationalComplex(mpq_class(num), mpq_class(0))));
  }

  OperatorExpr parse_word() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    std::string_view word = text_.substr(start, pos_ - start);
    if (word == "hbar") return OperatorExpr::identity(Coeff::hbar());
    if (word == "lam") return OperatorExpr::identity(Coeff::lam());
    if (word == "i") return OperatorExpr::identity(Coeff::unit_i());
    if (word == "x" || word == "p") {
      FactorKind kind = word == "x" ? FactorKind::Position : FactorKind::Momentum;
      expect('[', "operator index");
      std::size_t at = pos_;
      long particle = parse_small_integer("particle index");
      expect(',', "operator index");
      std::size_t axis_at = pos_;
      long axis = parse_small_integer("axis index");
      expect(']', "operator index");
      if (particle < 1 ||
          (limits_.max_particles > 0 && particle > limits_.max_particles)) {
        throw IndexError("particle index " + std::to_string(particle) +
                             " out of declared range",
                         at);
      }
      if (axis < 1 || axis > limits_.max_axis) {
        throw IndexError("axis index " + std::to_string(axis) + " out of declared range",
                         axis_at);
      }
      return OperatorExpr::factor({kind, static_cast<std::uint16_t>(particle),
                                   static_cast<std::uint8_t>(axis)});
    }
    pos_ = start;
    fail("unknown word '" + std::string(word) + "'");
  }

  std::string_view text_;
  ParseLimits limits_;
  std::size_t pos_ = 0;
};

}  // namespace

OperatorExpr parse(std::string_view text, const ParseLimits& limits) {
  return Parser(text, limits).run();
}

}  // namespace vlab
