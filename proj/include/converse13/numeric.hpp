#pragma once

#include "converse13/certificate.hpp"
#include "converse13/qseries.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace converse {

using Real = boost::multiprecision::mpfr_float;

/// Sets the working precision of Real for the lifetime of the object.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  friend Complex operator+(const Complex& x, const Complex& y) { return {x.re + y.re, x.im + y.im}; }
  friend Complex operator-(const Complex& x, const Complex& y) { return {x.re - y.re, x.im - y.im}; }
  friend Complex operator*(const Complex& x, const Complex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend Complex operator/(const Complex& x, const Complex& y);
  Complex scale(const Real& s) const { return {re * s, im * s}; }
  Complex pow(long e) const;
  Real abs() const;
};

/// exp(2 pi i x z), principal branch.
Complex e_of(const Rational& x, const Complex& z);
Real to_real(const Rational& x);
Real to_real(const QuadElem& x);
/// "%.2e"-style text with 3 significant digits; exact zero prints as 0.
std::string format_sig3(const Real& x);

/// Thrown when the truncation error cannot be bounded by the tolerance.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a sample point or one of its images lies below y_min.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EvalConfig {
  unsigned precision_bits = 256;
  /// Published points; Im >= 0.8 at level 1.
  std::vector<std::complex<double>> points = default_points();
  double y_min = 0.15;
  double tol = 1e-20;

  static std::vector<std::complex<double>> default_points();
  /// Defaults with points and y_min divided by sqrt(N), so that the Fricke
  /// image of each point stays as high as the point itself.
  static EvalConfig for_level(long N);
  /// Appends count points drawn from a seeded generator in the same region.
  void add_random_points(std::uint64_t seed, std::size_t count, long N = 1);
};

struct FormData {
  QSeries series;
  long k = 12;
  long N = 1;
  int eps = 1;

  /// k positive and even, eps = +-1, N >= 1.
  void validate() const;
  /// Normalized Hecke eigenvalue p^(1-k/2) a_p.
  Rational alpha(long p) const;
};

struct EvalResult {
  Complex value;
  Real tail_bound;
};

/// sum_i c_i e((offset + i) z) with the tail bounded using |c_i| <= (i+1)^k:
/// |tail| <= |q|^offset (L+1)^k |q|^L / (1 - ((L+2)/(L+1))^k |q|).
/// Throws PrecisionError when the bound exceeds cfg.tol or the known
/// coefficients violate the growth bound.
EvalResult eval_form(const FormData& f, const Complex& z, const EvalConfig& cfg);

/// f|m at z: det^(k/2) (cz+d)^(-k) f(mz).
Complex stroke_value(const FormData& f, const Mat2& m, const Complex& z, const EvalConfig& cfg);

/// Imaginary part of the image of z: det Im z / |cz+d|^2.
Real image_height(const Mat2& m, const Complex& z);

/// Max over cfg.points of |f|lhs - f|rhs|, with a2, a3, e instantiated from
/// f. Throws ConfigError if any point or image lies below y_min.
Real congruence_residual(const FormData& f, const Congruence& c, const EvalConfig& cfg);

/// cfg with points replaced by those of cfg.points and of the isometric
/// circles of the matrices in c whose images all stay above y_min, at most
/// max(8, cfg.points.size()) of them. Throws ConfigError if none qualify.
EvalConfig points_for(const Congruence& c, const EvalConfig& cfg);

/// "CONG <id> max_residual=<x> verdict=PASS|FAIL".
std::string residual_line(const std::string& id, const Real& residual, const EvalConfig& cfg);

/// P == 1, H == e and the T2, T3 sums at level N.
std::vector<Congruence> standard_congruences(long N);

/// log((7 - sqrt 13)/6) / log((2 + sqrt 13)/3).
Real lambda_compute(const EvalConfig& cfg);

/// First (p, q) with |p| <= bound, 1 <= q <= bound and Y^p = X^q exactly in
/// Q(sqrt 13), where Y^lambda = X. Empty means lambda is not p/q in range.
std::optional<std::pair<long, long>> lambda_rational_relation(long bound);

struct DensityResult {
  long m = 0;
  long n = 0;
  Real err;
};

/// (m, n) with |m|, |n| <= bound and |Y^(2m + n lambda) - X| <= tol, from the
/// nearest-integer Ostrowski expansion of log_Y(X)/2 against lambda/2, with a
/// scan over n as fallback. The error is recomputed as |Y^(2m) X0^n - X| with
/// X0 = (7 - sqrt 13)/6. Empty when nothing within bound is found.
std::optional<DensityResult> density_search(const Real& X, const Real& tol, long bound,
                                            const EvalConfig& cfg);

struct Verdict {
  bool ok = true;
  std::vector<std::string> lines;
};

/// |f(iy)| <= 2|a1| e^(-2 pi y) for y in {2, 4, 8}, and the same for f|H.
/// Heights where the tail bound at the image point exceeds the tolerance are
/// skipped for f|H; at least one must remain.
Verdict cusp_decay_check(const FormData& f, const EvalConfig& cfg);

/// Hecke recursions at p = 2, 3, residuals for the standard congruences
/// (plus W, g2, g3 at level 13) and the cusp check.
Verdict formcheck(const FormData& f, const EvalConfig& cfg);

}  // namespace converse
