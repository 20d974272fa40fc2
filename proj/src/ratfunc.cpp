#include "converse13/ratfunc.hpp"

#include <stdexcept>

namespace converse {

Poly::Poly(std::vector<QuadElem> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QuadElem Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return QuadElem(0);
  return c_[i];
}

int Poly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return static_cast<int>(i);
  }
  return -1;
}

QuadElem Poly::eval(const QuadElem& x) const {
  QuadElem acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(leading().inv());
}

Poly Poly::operator-() const { return scale(QuadElem(-1)); }

Poly operator+(const Poly& p, const Poly& q) {
  std::vector<QuadElem> out(std::max(p.c_.size(), q.c_.size()), QuadElem(0));
  for (std::size_t i = 0; i < p.c_.size(); ++i) out[i] += p.c_[i];
  for (std::size_t i = 0; i < q.c_.size(); ++i) out[i] += q.c_[i];
  return Poly(std::move(out));
}

Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }

Poly operator*(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return Poly();
  std::vector<QuadElem> out(p.c_.size() + q.c_.size() - 1, QuadElem(0));
  for (std::size_t i = 0; i < p.c_.size(); ++i) {
    if (p.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < q.c_.size(); ++j) out[i + j] += p.c_[i] * q.c_[j];
  }
  return Poly(std::move(out));
}

Poly Poly::scale(const QuadElem& c) const {
  std::vector<QuadElem> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(x * c);
  return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<QuadElem> rem = num.c_;
  int dn = den.degree();
  std::vector<QuadElem> quo(num.degree() >= dn ? num.degree() - dn + 1 : 0, QuadElem(0));
  QuadElem lead_inv = den.leading().inv();
  for (int i = num.degree(); i >= dn; --i) {
    const QuadElem& top = rem[i];
    if (top.is_zero()) continue;
    QuadElem f = top * lead_inv;
    quo[i - dn] = f;
    for (int j = 0; j <= dn; ++j) rem[i - dn + j] -= f * den.c_[j];
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c_[i].str() + ")";
    if (i == 1) out += "*z";
    if (i > 1) out += "*z^" + std::to_string(i);
  }
  return out;
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = Poly(QuadElem(1));
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = Poly::divmod(num_, g).first;
    den_ = Poly::divmod(den_, g).first;
  }
  QuadElem lead_inv = den_.leading().inv();
  num_ = num_.scale(lead_inv);
  den_ = den_.scale(lead_inv);
}

QuadElem RatFunc::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function is not constant");
  return num_.coeff(0);
}

int RatFunc::order_at_zero() const {
  if (is_zero()) throw std::domain_error("order of the zero function is undefined");
  return num_.valuation() - den_.valuation();
}

int RatFunc::pole_order_at_zero() const {
  if (is_zero()) return 0;
  int ord = order_at_zero();
  return ord < 0 ? -ord : 0;
}

QuadElem RatFunc::leading_laurent_coeff() const {
  if (is_zero()) return QuadElem(0);
  return num_.coeff(num_.valuation()) / den_.coeff(den_.valuation());
}

QuadElem RatFunc::eval_at(const QuadElem& x) const {
  QuadElem d = den_.eval(x);
  if (d.is_zero()) throw std::domain_error("rational function evaluated at a pole: " + x.str());
  return num_.eval(x) / d;
}

RatFunc operator+(const RatFunc& f, const RatFunc& g) {
  if (f.den_ == g.den_) return RatFunc(f.num_ + g.num_, f.den_);
  return RatFunc(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
}

RatFunc operator-(const RatFunc& f, const RatFunc& g) { return f + (-g); }

RatFunc operator*(const RatFunc& f, const RatFunc& g) {
  return RatFunc(f.num_ * g.num_, f.den_ * g.den_);
}

RatFunc operator/(const RatFunc& f, const RatFunc& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero rational function");
  return RatFunc(f.num_ * g.den_, f.den_ * g.num_);
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) {
    if (is_zero()) throw std::domain_error("negative power of the zero rational function");
    return RatFunc(den_, num_).pow(-e);
  }
  RatFunc result(QuadElem(1));
  RatFunc base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

RatFunc RatFunc::compose_mobius(const QuadElem& a, const QuadElem& b, const QuadElem& c,
                                const QuadElem& d) const {
  // num(w)/den(w) with w = (az+b)/(cz+d): homogenize both to degree
  // n = max(deg num, deg den) so the (cz+d)^n factors cancel.
  Poly top = Poly::linear(a, b);
  Poly bot = Poly::linear(c, d);
  int n = std::max(num_.degree(), den_.degree());
  auto homogenize = [&](const Poly& p) {
    Poly acc;
    std::vector<Poly> bot_pows{Poly(QuadElem(1))};
    for (int i = 1; i <= n; ++i) bot_pows.push_back(bot_pows.back() * bot);
    Poly top_pow(QuadElem(1));
    for (int i = 0; i <= n; ++i) {
      if (i <= p.degree() && !p.coeff(i).is_zero()) {
        acc = acc + (top_pow * bot_pows[n - i]).scale(p.coeff(i));
      }
      top_pow = top_pow * top;
    }
    return acc;
  };
  return RatFunc(homogenize(num_), homogenize(den_));
}

std::string RatFunc::str() const {
  if (den_.degree() == 0) return num_.str();
  return "[" + num_.str() + "] / [" + den_.str() + "]";
}

}  // namespace converse
