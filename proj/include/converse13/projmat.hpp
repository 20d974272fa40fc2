#pragma once

#include "converse13/quad.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace converse {

/// Plain 2x2 matrix [[a, b], [c, d]] over Q(sqrt D), not rescaled.
struct Mat2 {
  QuadElem a{1}, b{0}, c{0}, d{1};

  static Mat2 identity() { return {}; }
  static Mat2 diag(const QuadElem& x, const QuadElem& y) { return {x, 0, 0, y}; }

  QuadElem det() const { return a * d - b * c; }
  QuadElem trace() const { return a + d; }
  /// [[d, -b], [-c, a]]; equals det * inverse.
  Mat2 adjugate() const { return {d, -b, -c, a}; }
  Mat2 inverse() const;
  Mat2 scaled(const QuadElem& r) const { return {a * r, b * r, c * r, d * r}; }
  bool is_diagonal() const { return b.is_zero() && c.is_zero(); }

  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2&, const Mat2&) = default;

  std::string str() const;
};

/// Class of a positive-determinant matrix modulo nonzero scalars.
///
/// Stored canonically: the first nonzero entry in row-major order is 1. Two
/// matrices are projectively equal iff their canonical forms are equal.
class ProjMat {
 public:
  ProjMat() = default;
  /// Rejects zero or negative determinant with std::domain_error.
  explicit ProjMat(const Mat2& raw);
  ProjMat(long a, long b, long c, long d) : ProjMat(Mat2{a, b, c, d}) {}

  static ProjMat identity() { return ProjMat(); }

  const Mat2& rep() const { return m_; }
  bool is_identity() const { return m_ == Mat2::identity(); }

  ProjMat inv() const { return ProjMat(m_.adjugate()); }
  ProjMat pow(long e) const;
  friend ProjMat operator*(const ProjMat& x, const ProjMat& y) { return ProjMat(x.m_ * y.m_); }

  friend bool operator==(const ProjMat&, const ProjMat&) = default;
  /// Lexicographic on canonical entries a, b, c, d.
  friend std::strong_ordering operator<=>(const ProjMat& x, const ProjMat& y);

  /// Matrix literal [[q,q],[q,q]] of the canonical representative.
  std::string str() const { return m_.str(); }
  std::size_t hash() const;

 private:
  Mat2 m_;
};

/// Canonical class of a raw matrix; throws if det <= 0.
inline ProjMat canonicalize(const Mat2& raw) { return ProjMat(raw); }

enum class MatKind { kElliptic, kParabolic, kHyperbolic };

struct MatClass {
  MatKind kind;
  std::optional<int> elliptic_order;
};

inline constexpr int kEllipticOrderBound = 12;

/// Elliptic, parabolic or hyperbolic by sign(tr^2 - 4 det); for elliptic
/// classes also the projective order when it is at most kEllipticOrderBound.
MatClass classify(const ProjMat& m);

std::string to_string(MatKind kind);

/// Thrown when eigenvalues leave Q(sqrt D).
class UnsupportedField : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Diagonalization {
  Mat2 basis;  ///< columns are eigenvectors, normalized with last nonzero entry 1
  QuadElem first;
  QuadElem second;  ///< first > second under the real embedding
};

/// Eigen-decomposition of this exact representative: basis^-1 * m * basis is
/// diag(first, second). Verified exactly before returning.
Diagonalization diagonalize(const Mat2& m);

/// Same for a class, using the determinant-one representative (first nonzero
/// entry positive) when sqrt(det) is in the field, else the canonical one.
Diagonalization diagonalize(const ProjMat& m);

/// Fricke matrix [[0, -1], [N, 0]].
Mat2 fricke(long level);

/// Class of H * m * H with H the Fricke matrix of the given level; equals
/// [[d, -c/N], [-N b, a]].
ProjMat conjugate_by_h(const ProjMat& m, long level);

/// Parses [[q,q],[q,q]] with each q in the quad grammar.
Mat2 parse_matrix(std::string_view text, long D = QuadElem::kDefaultD);

}  // namespace converse

template <>
struct std::hash<converse::ProjMat> {
  std::size_t operator()(const converse::ProjMat& m) const noexcept { return m.hash(); }
};
