#include "converse13/scalar_poly.hpp"

#include <limits>
#include <stdexcept>

namespace converse {

Monomial multiply(const Monomial& x, const Monomial& y) {
  constexpr unsigned kMax = std::numeric_limits<std::uint16_t>::max();
  unsigned a2 = unsigned{x.a2} + y.a2;
  unsigned a3 = unsigned{x.a3} + y.a3;
  if (a2 > kMax || a3 > kMax) throw std::overflow_error("scalar monomial exponent exceeds 16 bits");
  return Monomial{static_cast<std::uint16_t>(a2), static_cast<std::uint16_t>(a3),
                  static_cast<std::uint8_t>((x.eps + y.eps) & 1)};
}

ScalarPoly::ScalarPoly(const QuadElem& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

ScalarPoly ScalarPoly::monomial(Monomial m, const QuadElem& coeff) {
  m.eps &= 1;
  ScalarPoly p;
  p.add_term(m, coeff);
  return p;
}

bool ScalarPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

QuadElem ScalarPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? QuadElem(0) : it->second;
}

void ScalarPoly::add_term(const Monomial& m, const QuadElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

ScalarPoly ScalarPoly::operator-() const {
  ScalarPoly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& q) {
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

ScalarPoly operator+(const ScalarPoly& p, const ScalarPoly& q) {
  ScalarPoly out = p;
  out += q;
  return out;
}

ScalarPoly operator-(const ScalarPoly& p, const ScalarPoly& q) {
  ScalarPoly out = p;
  for (const auto& [m, c] : q.terms_) out.add_term(m, -c);
  return out;
}

ScalarPoly operator*(const ScalarPoly& p, const ScalarPoly& q) {
  ScalarPoly out;
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) out.add_term(multiply(mp, mq), cp * cq);
  }
  return out;
}

ScalarPoly ScalarPoly::scale(const QuadElem& c) const {
  ScalarPoly out;
  for (const auto& [m, v] : terms_) out.add_term(m, v * c);
  return out;
}

ScalarPoly ScalarPoly::pow(unsigned e) const {
  ScalarPoly result(1);
  ScalarPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

std::strong_ordering operator<=>(const ScalarPoly& p, const ScalarPoly& q) {
  auto ip = p.terms_.begin();
  auto iq = q.terms_.begin();
  for (; ip != p.terms_.end() && iq != q.terms_.end(); ++ip, ++iq) {
    if (auto c = ip->first <=> iq->first; c != 0) return c;
    if (auto c = ip->second <=> iq->second; c != 0) return c;
  }
  return p.terms_.size() <=> q.terms_.size();
}

QuadElem ScalarPoly::evaluate(const QuadElem& alpha2, const QuadElem& alpha3, int eps) const {
  if (eps != 1 && eps != -1) throw std::domain_error("e must evaluate to +1 or -1");
  QuadElem sum(0);
  for (const auto& [m, c] : terms_) {
    QuadElem term = c * alpha2.pow(m.a2) * alpha3.pow(m.a3);
    if (m.eps != 0 && eps < 0) term = -term;
    sum += term;
  }
  return sum;
}

namespace {

std::string monomial_str(const Monomial& m) {
  std::string out;
  auto append = [&out](const std::string& s) {
    if (!out.empty()) out += "*";
    out += s;
  };
  if (m.eps != 0) append("e");
  if (m.a2 == 1) append("a2");
  if (m.a2 > 1) append("a2^" + std::to_string(m.a2));
  if (m.a3 == 1) append("a3");
  if (m.a3 > 1) append("a3^" + std::to_string(m.a3));
  return out;
}

}  // namespace

std::string ScalarPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono = monomial_str(m);
    bool negative = false;
    std::string coeff;
    if (c.is_rational()) {
      negative = sgn(c.rational_part()) < 0;
      Rational mag = abs(c.rational_part());
      if (mag != 1 || mono.empty()) coeff = mag.get_str();
    } else if (sgn(c.rational_part()) == 0) {
      negative = sgn(c.sqrt_part()) < 0;
      coeff = (-c).str();
      if (!negative) coeff = c.str();
    } else {
      coeff = "(" + c.str() + ")";
    }
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += coeff;
    if (!coeff.empty() && !mono.empty()) out += "*";
    out += mono;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const ScalarPoly& p) { return os << p.str(); }

}  // namespace converse
