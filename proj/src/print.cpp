#include <sstream>
#include <string>

#include "vlab/opalg.hpp"

namespace vlab {

namespace {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

// One (value, hbar, lam) product rendered in grammar form, e.g. "-1/2*i*hbar".
// `need_sign` is handled by the caller; the string may start with '-'.
std::string coeff_term_str(const CoeffTerm& t) {
  std::vector<std::string> parts;
  const RationalComplex& v = t.value;
  if (v.is_real()) {
    if (!(v.re == 1 && (t.hbar_power > 0 || t.lambda_power != 0))) {
      if (v.re == -1 && (t.hbar_power > 0 || t.lambda_power != 0)) {
        parts.push_back("-1");  // folded into "-1*hbar" below; "-hbar" is not grammar
      } else {
        parts.push_back(rational_str(v.re));
      }
    }
  } else if (v.re == 0) {
    if (v.im == 1) {
      parts.push_back("i");
    } else if (v.im == -1) {
      parts.push_back("-i");
    } else {
      parts.push_back(rational_str(v.im) + "*i");
    }
  } else {
    std::string im_part = v.im == 1 ? "i" : v.im == -1 ? "-i" : rational_str(v.im) + "*i";
    std::string s = "(" + rational_str(v.re);
    s += im_part[0] == '-' ? " - " + im_part.substr(1) : " + " + im_part;
    s += ")";
    parts.push_back(std::move(s));
  }
  if (t.hbar_power > 0) {
    parts.push_back(t.hbar_power == 1 ? "hbar"
                                      : "hbar^" + std::to_string(t.hbar_power));
  }
  if (t.lambda_power != 0) {
    parts.push_back(t.lambda_power == 1 ? "lam"
                                        : "lam^" + std::to_string(t.lambda_power));
  }
  if (parts.empty()) parts.push_back("1");
  std::string out = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) out += "*" + parts[k];
  return out;
}

// Whole coefficient; multi-term sums are parenthesized so the string stays a
// single grammar `power` when followed by '*'.
std::string coeff_str(const Coeff& c) {
  if (c.terms().size() == 1) return coeff_term_str(c.terms()[0]);
  std::string out = "(";
  bool first = true;
  for (const auto& t : c.terms()) {
    std::string piece = coeff_term_str(t);
    if (first) {
      out += piece;
      first = false;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out + ")";
}

std::string factor_str(const CanonicalFactor& f) {
  std::ostringstream os;
  os << (f.kind == FactorKind::Position ? 'x' : 'p') << '[' << f.particle << ','
     << int(f.axis) << ']';
  return os.str();
}

std::string factors_str(const FactorSeq& fs) {
  std::string out;
  for (std::size_t k = 0; k < fs.size();) {
    std::size_t run = 1;
    while (k + run < fs.size() && fs[k + run] == fs[k]) ++run;
    if (!out.empty()) out += "*";
    out += factor_str(fs[k]);
    if (run > 1) out += "^" + std::to_string(run);
    k += run;
  }
  return out;
}

}  // namespace

std::string print(const OperatorExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [fs, c] : e.terms()) {
    std::string term;
    if (fs.empty()) {
      term = coeff_str(c);
    } else if (c.is_one()) {
      term = factors_str(fs);
    } else {
      term = coeff_str(c) + "*" + factors_str(fs);
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace vlab
