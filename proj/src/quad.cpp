#include "converse13/quad.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <sstream>

namespace converse {

namespace {

void check_same_field(const QuadElem& x, const QuadElem& y) {
  if (x.field_d() != y.field_d()) {
    throw std::logic_error("mixing Q(sqrt " + std::to_string(x.field_d()) + ") and Q(sqrt " +
                           std::to_string(y.field_d()) + ")");
  }
}

bool is_squarefree(long n) {
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

// Cursor over a whitespace-free string.
struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  bool eat(std::string_view lit) {
    if (s.compare(pos, lit.size(), lit) != 0) return false;
    pos += lit.size();
    return true;
  }

  std::string digits() {
    std::size_t start = pos;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    if (start == pos) throw ParseError("expected digits", pos);
    return s.substr(start, pos - start);
  }

  // Unsigned rational: digits[/digits].
  Rational unsigned_rat() {
    std::string num = digits();
    std::string den = "1";
    if (eat('/')) den = digits();
    Integer d(den);
    if (d == 0) throw ParseError("zero denominator", pos);
    Rational r{Integer(num), d};
    r.canonicalize();
    return r;
  }

  bool sqrt_suffix(long D) {
    std::size_t save = pos;
    if (!eat("*sqrt(")) return false;
    std::string n = digits();
    if (!eat(')')) throw ParseError("expected ')'", pos);
    if (std::stol(n) != D) {
      throw ParseError("sqrt(" + n + ") does not match field D=" + std::to_string(D), save);
    }
    return true;
  }
};

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = strip_spaces(text);
  Cursor cur{s};
  bool neg = cur.eat('-');
  Rational r = cur.unsigned_rat();
  if (!cur.done()) throw ParseError("trailing characters in rational", cur.pos);
  return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  Integer n = r.get_num();
  Integer d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  Integer sn = sqrt(n);
  Integer sd = sqrt(d);
  Rational out{sn, sd};
  out.canonicalize();
  return out;
}

QuadElem::QuadElem(Rational a, Rational b, long D) : a_(std::move(a)), b_(std::move(b)), d_(D) {
  if (D < 2 || !is_squarefree(D)) {
    throw std::domain_error("field parameter D must be a squarefree integer >= 2, got " +
                            std::to_string(D));
  }
  a_.canonicalize();
  b_.canonicalize();
}

int QuadElem::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
  if (sa <= 0 && sb <= 0) return -1;
  // Opposite signs: the larger of a^2 and D b^2 wins. Equality is impossible
  // because D is not a square.
  Rational lhs = a_ * a_;
  Rational rhs = d_ * b_ * b_;
  return lhs > rhs ? sa : sb;
}

QuadElem QuadElem::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero in Q(sqrt D)");
  Rational n = norm();
  return QuadElem(a_ / n, -b_ / n, d_);
}

QuadElem QuadElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  QuadElem result(1, 0, d_);
  QuadElem base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
  check_same_field(x, y);
  return QuadElem(x.a_ + y.a_, x.b_ + y.b_, x.d_);
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
  check_same_field(x, y);
  return QuadElem(x.a_ - y.a_, x.b_ - y.b_, x.d_);
}

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
  check_same_field(x, y);
  return QuadElem(x.a_ * y.a_ + x.d_ * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_);
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inv(); }

std::strong_ordering operator<=>(const QuadElem& x, const QuadElem& y) {
  check_same_field(x, y);
  int c = cmp(x.a_, y.a_);
  if (c == 0) c = cmp(x.b_, y.b_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<QuadElem> QuadElem::sqrt() const {
  if (sign() < 0) return std::nullopt;
  if (is_zero()) return *this;
  if (sgn(b_) == 0) {
    if (auto r = rational_sqrt(a_)) return QuadElem(*r, 0, d_);
    // a = D * s^2 gives s*sqrt(D).
    if (auto r = rational_sqrt(a_ / d_)) return QuadElem(0, *r, d_);
    return std::nullopt;
  }
  // (u + v sqrt D)^2 = a + b sqrt D  <=>  u^2 + D v^2 = a, 2uv = b.
  // Hence u^2 = (a +- sqrt(a^2 - D b^2)) / 2.
  auto root_norm = rational_sqrt(norm());
  if (!root_norm) return std::nullopt;
  for (int s : {1, -1}) {
    Rational u2 = (a_ + s * *root_norm) / 2;
    if (sgn(u2) <= 0) continue;
    if (auto u = rational_sqrt(u2)) {
      Rational v = b_ / (2 * *u);
      QuadElem cand(*u, v, d_);
      if (cand.sign() < 0) cand = -cand;
      if (cand * cand == *this) return cand;
    }
  }
  return std::nullopt;
}

double QuadElem::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

std::string QuadElem::str() const {
  std::string root = "*sqrt(" + std::to_string(d_) + ")";
  if (sgn(b_) == 0) return a_.get_str();
  if (sgn(a_) == 0) return b_.get_str() + root;
  std::string out = a_.get_str();
  out += sgn(b_) > 0 ? "+" : "-";
  out += Rational(abs(b_)).get_str() + root;
  return out;
}

std::size_t QuadElem::hash() const {
  auto mix = [](std::size_t h, const Integer& z) {
    std::size_t v = mpz_get_ui(z.get_mpz_t()) ^ (static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())) << 1);
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  std::size_t h = static_cast<std::size_t>(d_);
  h = mix(h, a_.get_num());
  h = mix(h, a_.get_den());
  h = mix(h, b_.get_num());
  h = mix(h, b_.get_den());
  return h;
}

std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << x.str(); }

QuadElem parse_quad(std::string_view text, long D) {
  std::string s = strip_spaces(text);
  Cursor cur{s};
  bool neg = cur.eat('-');
  Rational first = cur.unsigned_rat();
  if (neg) first = -first;
  if (cur.done()) return QuadElem(first, 0, D);
  if (cur.sqrt_suffix(D)) {
    if (!cur.done()) throw ParseError("trailing characters after sqrt term", cur.pos);
    return QuadElem(0, first, D);
  }
  bool minus = false;
  if (cur.eat('-')) {
    minus = true;
  } else if (!cur.eat('+')) {
    throw ParseError("expected '+' or '-'", cur.pos);
  }
  Rational second = cur.unsigned_rat();
  if (!cur.sqrt_suffix(D)) throw ParseError("expected '*sqrt(D)'", cur.pos);
  if (!cur.done()) throw ParseError("trailing characters in quad literal", cur.pos);
  return QuadElem(first, minus ? Rational(-second) : second, D);
}

}  // namespace converse
