#pragma once

#include "converse13/quad.hpp"

#include <string>
#include <utility>
#include <vector>

namespace converse {

/// Dense univariate polynomial in z over Q(sqrt D); coefficient i multiplies
/// z^i. Trailing zeros are trimmed, so the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<QuadElem> coeffs);
  Poly(const QuadElem& c) : Poly(std::vector<QuadElem>{c}) {}  // NOLINT(google-explicit-constructor)

  static Poly z() { return Poly({QuadElem(0), QuadElem(1)}); }
  /// a*z + b.
  static Poly linear(const QuadElem& a, const QuadElem& b) { return Poly({b, a}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<QuadElem>& coeffs() const { return c_; }
  QuadElem coeff(int i) const;
  const QuadElem& leading() const { return c_.back(); }
  /// Largest v with z^v dividing the polynomial; -1 for zero.
  int valuation() const;

  QuadElem eval(const QuadElem& x) const;
  Poly monic() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& p, const Poly& q);
  friend Poly operator-(const Poly& p, const Poly& q);
  friend Poly operator*(const Poly& p, const Poly& q);
  Poly scale(const QuadElem& c) const;
  friend bool operator==(const Poly&, const Poly&) = default;

  /// Euclidean division; divisor must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den);
  /// Monic gcd (zero only if both inputs are zero).
  static Poly gcd(Poly a, Poly b);

  std::string str() const;

 private:
  void trim();
  std::vector<QuadElem> c_;
};

/// Reduced rational function num/den in z over Q(sqrt D): gcd(num, den) = 1,
/// den monic, zero is 0/1.
class RatFunc {
 public:
  RatFunc() : den_(QuadElem(1)) {}
  RatFunc(const QuadElem& c) : num_(c), den_(QuadElem(1)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den);

  static RatFunc z() { return RatFunc(Poly::z(), Poly(QuadElem(1))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  /// True when the function is a constant; its value is then constant_value().
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  QuadElem constant_value() const;

  /// Signed order of vanishing at z = 0 (negative for a pole). Zero function
  /// has no order; callers check is_zero first.
  int order_at_zero() const;
  /// n >= 1 for a pole of order n at z = 0, 0 otherwise.
  int pole_order_at_zero() const;
  /// Coefficient of z^order_at_zero in the Laurent expansion at 0.
  QuadElem leading_laurent_coeff() const;

  /// Throws std::domain_error at a pole.
  QuadElem eval_at(const QuadElem& x) const;

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& f, const RatFunc& g);
  friend RatFunc operator-(const RatFunc& f, const RatFunc& g);
  friend RatFunc operator*(const RatFunc& f, const RatFunc& g);
  friend RatFunc operator/(const RatFunc& f, const RatFunc& g);
  RatFunc pow(long e) const;
  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  /// f((a z + b) / (c z + d)).
  RatFunc compose_mobius(const QuadElem& a, const QuadElem& b, const QuadElem& c,
                         const QuadElem& d) const;

  std::string str() const;

 private:
  void reduce();
  Poly num_;
  Poly den_;
};

}  // namespace converse
