#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace converse {

using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown when a textual literal does not match the expected grammar.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Element a + b*sqrt(D) of the real quadratic field Q(sqrt D).
///
/// D is fixed per computation (13 everywhere in this project). Combining two
/// elements with different D throws std::logic_error. Values are immutable
/// once built; every operation returns a fresh element.
class QuadElem {
 public:
  static constexpr long kDefaultD = 13;

  QuadElem() = default;
  QuadElem(long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  QuadElem(Rational a, Rational b = 0, long D = kDefaultD);

  static QuadElem sqrt_d(long D = kDefaultD) { return QuadElem(0, 1, D); }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt_part() const { return b_; }
  long field_d() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// Sign of the real embedding with sqrt(D) > 0. Exact.
  int sign() const;

  QuadElem conj() const { return QuadElem(a_, -b_, d_); }
  /// Field norm a^2 - D b^2.
  Rational norm() const { return a_ * a_ - d_ * b_ * b_; }
  QuadElem inv() const;
  QuadElem pow(long e) const;

  QuadElem operator-() const { return QuadElem(-a_, -b_, d_); }
  friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator/(const QuadElem& x, const QuadElem& y);
  QuadElem& operator+=(const QuadElem& y) { return *this = *this + y; }
  QuadElem& operator-=(const QuadElem& y) { return *this = *this - y; }
  QuadElem& operator*=(const QuadElem& y) { return *this = *this * y; }
  QuadElem& operator/=(const QuadElem& y) { return *this = *this / y; }

  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  /// Structural order (rational part, then sqrt part). Not the real order;
  /// use compare_real for that.
  friend std::strong_ordering operator<=>(const QuadElem& x, const QuadElem& y);

  /// Square root inside the field, if one exists.
  std::optional<QuadElem> sqrt() const;

  double to_double() const;
  std::string str() const;
  std::size_t hash() const;

 private:
  Rational a_{0};
  Rational b_{0};
  long d_ = kDefaultD;
};

/// -1, 0 or +1 according to x - y under the real embedding.
inline int compare_real(const QuadElem& x, const QuadElem& y) { return (x - y).sign(); }

std::ostream& operator<<(std::ostream& os, const QuadElem& x);

/// Parses the quad grammar: rat | rat(+|-)rat*sqrt(D) | [-]rat*sqrt(D).
QuadElem parse_quad(std::string_view text, long D = QuadElem::kDefaultD);

/// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& r);

}  // namespace converse
