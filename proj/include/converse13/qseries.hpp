#pragma once

#include "converse13/quad.hpp"

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace converse {

/// Truncated expansion sum_{i < L} c_i q^(offset + i) with exact rational
/// coefficients. L is carried with the data.
class QSeries {
 public:
  QSeries() = default;
  QSeries(Rational offset, std::vector<Rational> coeffs);

  /// The constant series 1 of length L.
  static QSeries one(std::size_t L);

  const Rational& offset() const { return offset_; }
  std::size_t length() const { return c_.size(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }

  /// Highest exponent known: offset + L - 1.
  Rational last_exponent() const { return offset_ + Rational(static_cast<long>(c_.size())) - 1; }

  /// Coefficient of q^x. Zero when x - offset is not a non-negative integer;
  /// std::out_of_range when x lies beyond the truncation.
  Rational coeff_at(const Rational& x) const;

  bool is_zero() const;

  /// Offsets must differ by an integer; the sum is truncated where either
  /// input is unknown.
  friend QSeries operator+(const QSeries& f, const QSeries& g);
  friend QSeries operator-(const QSeries& f, const QSeries& g);
  /// Offsets add; length is the minimum of the two.
  friend QSeries operator*(const QSeries& f, const QSeries& g);
  QSeries scale(const Rational& s) const;
  /// Positive integer power.
  QSeries pow(unsigned e) const;

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  Rational offset_{0};
  std::vector<Rational> c_;
};

/// prod eta(m z)^r with eta(z) = q^(1/24) prod (1 - q^n), to L coefficients.
/// Requires m >= 1; r may be any integer.
QSeries eta_product(const std::vector<std::pair<long, long>>& spec, std::size_t L);

/// Parses "1^24" or "1^2,13^2" style specs (m^r pairs).
std::vector<std::pair<long, long>> parse_eta_spec(const std::string& text);

struct HeckeVerdict {
  bool ok = true;
  long failing_n = 0;  // first n where the check fails
  std::string message;
};

/// Checks a_{pn} - a_p a_n + p^(k-1) a_{n/p} = 0 for all pn <= L, with a_x = 0
/// for non-integral x. Requires offset 1 and length >= 10 p.
HeckeVerdict hecke_check(const QSeries& a, long p, long k, const Rational& a_p);

/// Expansion of f|(D(p,1) + sum_j [[1,j],[0,p]]) at weight k, computed from
/// the action of each matrix on q-expansions. Known up to q^(L/p).
QSeries hecke_stroke_series(const QSeries& a, long p, long k);

/// Compares hecke_stroke_series with a_p p^(1-k/2) f coefficientwise for
/// n <= L/p. Same preconditions as hecke_check; k even.
HeckeVerdict hecke_stroke_identity(const QSeries& a, long p, long k, const Rational& a_p);

/// Malformed coefficient file; the message names the line.
class FileFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient file: "# k=<int> N=<int> eps=<+1|-1>" then "n a_n" for
/// n = 1..L. The series has offset 1.
struct CoefficientFile {
  long k = 0;
  long N = 1;
  int eps = 1;
  QSeries series;
};

/// Throws std::invalid_argument unless the series has offset 1.
std::string write_coefficients(const CoefficientFile& file);
CoefficientFile read_coefficients(std::istream& in);
CoefficientFile read_coefficients(const std::string& text);

}  // namespace converse
