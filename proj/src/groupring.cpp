#include "converse13/groupring.hpp"

#include <cctype>
#include <stdexcept>

namespace converse {

RingElem::RingElem(const ProjMat& m, const ScalarPoly& coeff) { add_term(m, coeff); }

ScalarPoly RingElem::coeff(const ProjMat& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ScalarPoly() : it->second;
}

void RingElem::add_term(const ProjMat& m, const ScalarPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

RingElem RingElem::operator-() const { return scale(ScalarPoly(-1)); }

RingElem& RingElem::operator+=(const RingElem& y) {
  for (const auto& [m, c] : y.terms_) add_term(m, c);
  return *this;
}

RingElem operator+(const RingElem& x, const RingElem& y) {
  RingElem out = x;
  out += y;
  return out;
}

RingElem operator-(const RingElem& x, const RingElem& y) {
  RingElem out = x;
  for (const auto& [m, c] : y.terms_) out.add_term(m, -c);
  return out;
}

RingElem operator*(const RingElem& x, const RingElem& y) {
  RingElem out;
  for (const auto& [mx, cx] : x.terms_) {
    for (const auto& [my, cy] : y.terms_) out.add_term(mx * my, cx * cy);
  }
  return out;
}

RingElem RingElem::scale(const ScalarPoly& s) const {
  RingElem out;
  for (const auto& [m, c] : terms_) out.add_term(m, c * s);
  return out;
}

RingElem RingElem::pow(unsigned e) const {
  RingElem result = one();
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

RingElem RingElem::conjugate_by_h(long level) const {
  RingElem out;
  for (const auto& [m, c] : terms_) out.add_term(converse::conjugate_by_h(m, level), c);
  return out;
}

namespace {

// Splits a coefficient into sign and printable magnitude prefix. Returns
// false when the coefficient needs parentheses.
bool simple_coeff(const ScalarPoly& p, bool& negative, std::string& prefix) {
  if (p.terms().size() != 1) return false;
  const auto& [mono, c] = *p.terms().begin();
  if (!c.is_rational() && sgn(c.rational_part()) != 0) return false;
  negative = c.sign() < 0;
  QuadElem mag = negative ? -c : c;
  ScalarPoly magnitude = ScalarPoly::monomial(mono, mag);
  prefix = mag == QuadElem(1) && mono.is_one() ? "" : magnitude.str();
  return true;
}

}  // namespace

std::string RingElem::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = false;
    std::string prefix;
    if (!simple_coeff(c, negative, prefix)) prefix = "(" + c.str() + ")";
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (!prefix.empty()) out += prefix + "*";
    out += m.str();
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const RingElem& x) { return os << x.str(); }

RatFunc stroke(const RatFunc& f, long k, const Mat2& m) {
  if (k % 2 != 0) throw std::domain_error("stroke of odd weight is unsupported");
  QuadElem det = m.det();
  if (det.sign() <= 0) throw std::domain_error("stroke needs a positive determinant");
  RatFunc automorphy(Poly::linear(m.c, m.d), Poly(QuadElem(1)));
  return RatFunc(det.pow(k / 2)) * automorphy.pow(-k) * f.compose_mobius(m.a, m.b, m.c, m.d);
}

RatFunc stroke_of_power(long k, const Mat2& m) {
  if (k % 2 != 0) throw std::domain_error("stroke of odd weight is unsupported");
  // det^(k/2) (cz+d)^-k ((az+b)/(cz+d))^(-k/2) = det^(k/2) (az+b)^(-k/2) (cz+d)^(-k/2)
  RatFunc top(Poly::linear(m.a, m.b), Poly(QuadElem(1)));
  RatFunc bot(Poly::linear(m.c, m.d), Poly(QuadElem(1)));
  return RatFunc(m.det().pow(k / 2)) * top.pow(-k / 2) * bot.pow(-k / 2);
}

RatFunc stroke_of_power(long k, const ProjMat& m, const QuadElem& raw_scale) {
  if (raw_scale.is_zero()) throw std::domain_error("raw_scale must be nonzero");
  return stroke_of_power(k, m.rep().scaled(raw_scale));
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, long D, bool allow_matrices)
      : d_(D), allow_matrices_(allow_matrices) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }
  }

  RingElem parse() {
    if (s_.empty()) throw ParseError("empty expression", 0);
    RingElem v = expr();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return v;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool eat(std::string_view lit) {
    if (s_.compare(pos_, lit.size(), lit) != 0) return false;
    pos_ += lit.size();
    return true;
  }
  std::string digits() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", pos_);
    return s_.substr(start, pos_ - start);
  }

  RingElem expr() {
    bool negate = false;
    if (eat('-')) {
      negate = true;
    } else {
      eat('+');
    }
    RingElem acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RingElem term() {
    RingElem acc = power();
    while (eat('*')) acc = acc * power();
    return acc;
  }

  RingElem power() {
    std::size_t start = pos_;
    bool is_matrix = false;
    RingElem base = atom(is_matrix);
    if (!eat('^')) return base;
    bool neg = eat('-');
    long e = std::stol(digits());
    if (!neg) return base.pow(static_cast<unsigned>(e));
    if (is_matrix) return RingElem(base.terms().begin()->first.pow(-e));
    if (base.size() == 1 && base.terms().begin()->first.is_identity() &&
        base.terms().begin()->second.is_constant()) {
      return RingElem(ScalarPoly(base.terms().begin()->second.constant_term().pow(-e)));
    }
    throw ParseError("negative power of a non-invertible expression", start);
  }

  RingElem atom(bool& is_matrix) {
    std::size_t start = pos_;
    if (eat('(')) {
      RingElem inner = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (s_.compare(pos_, 2, "[[") == 0) {
      if (!allow_matrices_) throw ParseError("matrix literal not allowed here", pos_);
      std::size_t end = s_.find("]]", pos_);
      if (end == std::string::npos) throw ParseError("unterminated matrix literal", pos_);
      Mat2 raw;
      try {
        raw = parse_matrix(std::string_view(s_).substr(pos_, end + 2 - pos_), d_);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), start + e.position());
      }
      pos_ = end + 2;
      is_matrix = true;
      try {
        return RingElem(ProjMat(raw));
      } catch (const std::domain_error& e) {
        throw ParseError(e.what(), start);
      }
    }
    if (eat("sqrt(")) {
      std::string n = digits();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      if (std::stol(n) != d_) throw ParseError("sqrt(" + n + ") does not match field D", start);
      return RingElem(ScalarPoly(QuadElem::sqrt_d(d_)));
    }
    if (eat("a2")) return RingElem(ScalarPoly::alpha2());
    if (eat("a3")) return RingElem(ScalarPoly::alpha3());
    if (eat('e')) return RingElem(ScalarPoly::eps());
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer num(digits());
      Integer den(1);
      if (eat('/')) den = Integer(digits());
      if (den == 0) throw ParseError("zero denominator", pos_);
      Rational r{num, den};
      r.canonicalize();
      return RingElem(ScalarPoly(QuadElem(r, 0, d_)));
    }
    throw ParseError("unexpected token", pos_);
  }

  std::string s_;
  std::size_t pos_ = 0;
  long d_;
  bool allow_matrices_;
};

}  // namespace

RingElem parse_ring_elem(std::string_view text, long D) {
  return ExprParser(text, D, true).parse();
}

ScalarPoly parse_scalar_poly(std::string_view text, long D) {
  RingElem v = ExprParser(text, D, false).parse();
  return v.coeff(ProjMat::identity());
}

}  // namespace converse
