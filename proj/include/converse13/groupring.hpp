#pragma once

#include "converse13/projmat.hpp"
#include "converse13/ratfunc.hpp"
#include "converse13/scalar_poly.hpp"

#include <map>
#include <string>
#include <string_view>

namespace converse {

/// Finite formal sum of projective matrix classes with ScalarPoly
/// coefficients: an element of the group ring acting by the weight-k stroke.
///
/// Projectively equal matrices share one term; zero coefficients are dropped.
/// Terms iterate in lexicographic order of canonical entries.
class RingElem {
 public:
  using Terms = std::map<ProjMat, ScalarPoly>;

  RingElem() = default;
  RingElem(const ProjMat& m, const ScalarPoly& coeff = ScalarPoly(1));  // NOLINT
  /// Scalar times the identity matrix.
  RingElem(const ScalarPoly& s) : RingElem(ProjMat::identity(), s) {}  // NOLINT
  RingElem(long n) : RingElem(ScalarPoly(n)) {}                        // NOLINT

  static RingElem one() { return RingElem(1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  ScalarPoly coeff(const ProjMat& m) const;

  RingElem operator-() const;
  friend RingElem operator+(const RingElem& x, const RingElem& y);
  friend RingElem operator-(const RingElem& x, const RingElem& y);
  /// Group-ring product: (sum c_i M_i)(sum d_j N_j) = sum c_i d_j (M_i N_j).
  friend RingElem operator*(const RingElem& x, const RingElem& y);
  RingElem& operator+=(const RingElem& y);
  RingElem scale(const ScalarPoly& s) const;
  RingElem right_mul(const RingElem& w) const { return *this * w; }
  RingElem pow(unsigned e) const;

  friend bool operator==(const RingElem&, const RingElem&) = default;

  /// Termwise H-conjugation, see conjugate_by_h.
  RingElem conjugate_by_h(long level) const;

  /// Canonical text such as "[[1,0],[0,1]] - e*[[1,-14/39],[3,-1]]".
  std::string str() const;

 private:
  void add_term(const ProjMat& m, const ScalarPoly& c);
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const RingElem& x);

/// Weight-k stroke of a rational function by a raw matrix:
/// det^(k/2) (cz+d)^(-k) f((az+b)/(cz+d)). Even k only.
RatFunc stroke(const RatFunc& f, long k, const Mat2& m);

/// z^(-k/2) stroked by raw_scale * m; independent of raw_scale for even k.
/// Equals det^(k/2) (az+b)^(-k/2) (cz+d)^(-k/2).
RatFunc stroke_of_power(long k, const ProjMat& m, const QuadElem& raw_scale = QuadElem(1));
RatFunc stroke_of_power(long k, const Mat2& m);

/// Parsers for the shared expression grammar. Sums, products, parentheses
/// and non-negative powers are accepted; rationals, sqrt(D), the symbols a2,
/// a3, e and matrix literals [[q,q],[q,q]] are atoms. A matrix literal may
/// carry a negative power. A scalar term means scalar times the identity.
RingElem parse_ring_elem(std::string_view text, long D = QuadElem::kDefaultD);
ScalarPoly parse_scalar_poly(std::string_view text, long D = QuadElem::kDefaultD);

}  // namespace converse
