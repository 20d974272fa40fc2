#pragma once

#include "converse13/quad.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace converse {

/// Monomial a2^i * a3^j * e^eps with eps in {0, 1}.
struct Monomial {
  std::uint16_t a2 = 0;
  std::uint16_t a3 = 0;
  std::uint8_t eps = 0;

  bool is_one() const { return a2 == 0 && a3 == 0 && eps == 0; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Polynomial in the symbols a2, a3, e with coefficients in Q(sqrt D),
/// reduced modulo e^2 = 1. Zero terms are never stored, so structural
/// equality is ring equality.
///
/// a2 and a3 stand for the normalized Hecke eigenvalues p^(1-k/2) a_p and e
/// for the root number of the functional equation.
class ScalarPoly {
 public:
  using Terms = std::map<Monomial, QuadElem>;

  ScalarPoly() = default;
  ScalarPoly(long c) : ScalarPoly(QuadElem(c)) {}  // NOLINT(google-explicit-constructor)
  ScalarPoly(const QuadElem& c);                    // NOLINT(google-explicit-constructor)

  static ScalarPoly monomial(Monomial m, const QuadElem& coeff = QuadElem(1));
  static ScalarPoly alpha2() { return monomial({1, 0, 0}); }
  static ScalarPoly alpha3() { return monomial({0, 1, 0}); }
  static ScalarPoly eps() { return monomial({0, 0, 1}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when the polynomial is a constant (possibly zero).
  bool is_constant() const;
  QuadElem constant_term() const;

  ScalarPoly operator-() const;
  friend ScalarPoly operator+(const ScalarPoly& p, const ScalarPoly& q);
  friend ScalarPoly operator-(const ScalarPoly& p, const ScalarPoly& q);
  friend ScalarPoly operator*(const ScalarPoly& p, const ScalarPoly& q);
  ScalarPoly& operator+=(const ScalarPoly& q);
  ScalarPoly& operator-=(const ScalarPoly& q) { return *this = *this - q; }
  ScalarPoly& operator*=(const ScalarPoly& q) { return *this = *this * q; }
  ScalarPoly scale(const QuadElem& c) const;
  ScalarPoly pow(unsigned e) const;

  friend bool operator==(const ScalarPoly&, const ScalarPoly&) = default;
  friend std::strong_ordering operator<=>(const ScalarPoly& p, const ScalarPoly& q);

  /// Substitutes rational/quadratic values for a2, a3 and e = +-1.
  QuadElem evaluate(const QuadElem& alpha2, const QuadElem& alpha3, int eps) const;

  /// Canonical text, e.g. "1 - 3/2*e*a2^2". Parsed back by parse_scalar_poly.
  std::string str() const;

 private:
  void add_term(const Monomial& m, const QuadElem& c);

  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const ScalarPoly& p);

/// Multiplies monomials, reducing e^2 = 1. Exponents past 16 bits throw
/// std::overflow_error.
Monomial multiply(const Monomial& x, const Monomial& y);

}  // namespace converse
