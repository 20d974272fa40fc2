#include "converse13/numeric.hpp"

#include "converse13/level13.hpp"
#include "converse13/proof13.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace converse {

namespace {

unsigned bits_to_digits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

Real pi() {
  Real out;
  mpfr_const_pi(out.backend().data(), MPFR_RNDN);
  return out;
}

Real from_double(double x) {
  Real out;
  mpfr_set_d(out.backend().data(), x, MPFR_RNDN);
  return out;
}

Complex to_complex(const std::complex<double>& z) { return {from_double(z.real()), from_double(z.imag())}; }

struct RealMat {
  Real a, b, c, d;
};

RealMat to_real_mat(const Mat2& m) { return {to_real(m.a), to_real(m.b), to_real(m.c), to_real(m.d)}; }

Real int_pow(const Real& x, long e) {
  Real out = 1;
  Real base = e < 0 ? Real(1 / x) : x;
  for (long n = std::labs(e); n > 0; n >>= 1) {
    if (n & 1) out *= base;
    base *= base;
  }
  return out;
}

// Real coefficients of f, prepared once per (form, precision).
class Evaluator {
 public:
  Evaluator(const FormData& f, const EvalConfig& cfg) : f_(f), tol_(from_double(cfg.tol)) {
    const auto& c = f.series.coeffs();
    coeffs_.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      Integer cap;
      mpz_ui_pow_ui(cap.get_mpz_t(), i + 1, static_cast<unsigned long>(f.k));
      if (abs(c[i]) > cap) {
        throw PrecisionError("coefficient " + std::to_string(i) +
                             " exceeds the growth bound (n)^k used for the tail estimate");
      }
      coeffs_.push_back(to_real(c[i]));
    }
  }

  EvalResult at(const Complex& z) const {
    if (z.im <= 0) throw std::domain_error("eval_form: point not in the upper half-plane");
    const std::size_t L = coeffs_.size();
    const Real x = exp(-2 * pi() * z.im);
    const Real ratio = int_pow(Real(Real(L + 2) / Real(L + 1)), f_.k) * x;
    EvalResult out;
    if (ratio >= 1) {
      throw PrecisionError("tail bound diverges at Im z = " + format_sig3(z.im) +
                           "; raise L or move z up");
    }
    out.tail_bound = exp(-2 * pi() * z.im * to_real(f_.series.offset())) *
                     int_pow(Real(L + 1), f_.k) * int_pow(x, static_cast<long>(L)) / (1 - ratio);
    if (out.tail_bound > tol_) {
      throw PrecisionError("tail bound " + format_sig3(out.tail_bound) + " exceeds tolerance at Im z = " +
                           format_sig3(z.im) + " with L = " + std::to_string(L));
    }
    if (L == 0) return out;
    const Complex q = e_of(1, z);
    Complex s = coeffs_[L - 1];
    for (std::size_t i = L - 1; i-- > 0;) s = s * q + Complex(coeffs_[i]);
    out.value = e_of(f_.series.offset(), z) * s;
    return out;
  }

  Complex stroke(const RealMat& m, const Complex& z) const {
    const Real det = m.a * m.d - m.b * m.c;
    const Complex w = Complex(m.c) * z + Complex(m.d);
    const Complex gz = (Complex(m.a) * z + Complex(m.b)) / w;
    const Complex fz = at(gz).value;
    return (fz / w.pow(f_.k)).scale(int_pow(det, f_.k / 2));
  }

 private:
  const FormData& f_;
  Real tol_;
  std::vector<Real> coeffs_;
};

struct Term {
  Real coeff;
  RealMat mat;
};

std::vector<Term> instantiate(const RingElem& x, const FormData& f, int sign) {
  const QuadElem a2(f.alpha(2)), a3(f.alpha(3));
  std::vector<Term> out;
  for (const auto& [m, c] : x.terms()) {
    out.push_back({to_real(c.evaluate(a2, a3, f.eps)) * sign, to_real_mat(m.rep())});
  }
  return out;
}

Real image_height(const RealMat& m, const Complex& z) {
  const Complex w = Complex(m.c) * z + Complex(m.d);
  return (m.a * m.d - m.b * m.c) * z.im / (w.re * w.re + w.im * w.im);
}

struct DMat {
  double a, b, c, d;
  explicit DMat(const Mat2& m)
      : a(to_real(m.a).convert_to<double>()), b(to_real(m.b).convert_to<double>()),
        c(to_real(m.c).convert_to<double>()), d(to_real(m.d).convert_to<double>()) {}
  double det() const { return a * d - b * c; }
  double image_height(std::complex<double> z) const { return det() * z.imag() / std::norm(c * z + d); }
};

std::vector<DMat> matrices_of(const Congruence& c) {
  std::vector<DMat> out;
  for (const RingElem* side : {&c.lhs, &c.rhs}) {
    for (const auto& [m, coeff] : side->terms()) out.emplace_back(m.rep());
  }
  return out;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
  Real::default_precision(bits_to_digits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Complex operator/(const Complex& x, const Complex& y) {
  const Real n = y.re * y.re + y.im * y.im;
  return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
}

Complex Complex::pow(long e) const {
  Complex out(1);
  Complex base = e < 0 ? Complex(1) / *this : *this;
  for (long n = std::labs(e); n > 0; n >>= 1) {
    if (n & 1) out = out * base;
    base = base * base;
  }
  return out;
}

Real Complex::abs() const { return sqrt(re * re + im * im); }

Complex e_of(const Rational& x, const Complex& z) {
  const Real t = 2 * pi() * to_real(x);
  const Real r = exp(-t * z.im);
  return {r * cos(t * z.re), r * sin(t * z.re)};
}

Real to_real(const Rational& x) {
  Real out;
  mpfr_set_q(out.backend().data(), x.get_mpq_t(), MPFR_RNDN);
  return out;
}

Real to_real(const QuadElem& x) {
  Real out = to_real(x.rational_part());
  if (!x.is_rational()) out += to_real(x.sqrt_part()) * sqrt(Real(x.field_d()));
  return out;
}

std::string format_sig3(const Real& x) {
  if (x == 0) return "0";
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.2Re", x.backend().data());
  return buf;
}

std::vector<std::complex<double>> EvalConfig::default_points() {
  return {{-0.45, 0.8}, {-0.3, 0.95}, {-0.15, 1.1}, {0.0, 0.8},
          {0.1, 1.25},  {0.25, 0.85}, {0.35, 1.0},  {0.5, 1.2}};
}

EvalConfig EvalConfig::for_level(long N) {
  EvalConfig cfg;
  const double s = 1 / std::sqrt(static_cast<double>(N));
  for (auto& z : cfg.points) z *= s;
  cfg.y_min *= s;
  return cfg;
}

void EvalConfig::add_random_points(std::uint64_t seed, std::size_t count, long N) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> x(-0.5, 0.5), y(0.8, 1.25);
  const double s = 1 / std::sqrt(static_cast<double>(N));
  for (std::size_t i = 0; i < count; ++i) {
    const double re = x(rng);
    points.emplace_back(re * s, y(rng) * s);
  }
}

void FormData::validate() const {
  if (k <= 0 || k % 2 != 0) throw std::invalid_argument("weight k must be a positive even integer");
  if (N < 1) throw std::invalid_argument("level N must be positive");
  if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
}

Rational FormData::alpha(long p) const {
  Rational scale = 1;
  for (long i = 0; i < k / 2 - 1; ++i) scale /= p;
  Rational out = scale * series.coeff_at(p);
  out.canonicalize();
  return out;
}

EvalResult eval_form(const FormData& f, const Complex& z, const EvalConfig& cfg) {
  PrecisionScope scope(cfg.precision_bits);
  return Evaluator(f, cfg).at(z);
}

Complex stroke_value(const FormData& f, const Mat2& m, const Complex& z, const EvalConfig& cfg) {
  PrecisionScope scope(cfg.precision_bits);
  return Evaluator(f, cfg).stroke(to_real_mat(m), z);
}

Real image_height(const Mat2& m, const Complex& z) { return image_height(to_real_mat(m), z); }

Real congruence_residual(const FormData& f, const Congruence& c, const EvalConfig& cfg) {
  f.validate();
  PrecisionScope scope(cfg.precision_bits);
  std::vector<Term> terms = instantiate(c.lhs, f, 1);
  for (Term& t : instantiate(c.rhs, f, -1)) terms.push_back(std::move(t));

  const Real y_min = from_double(cfg.y_min);
  std::vector<Complex> points;
  for (const auto& p : cfg.points) {
    Complex z = to_complex(p);
    if (z.im < y_min) throw ConfigError("sample point below y_min in " + c.id);
    for (const Term& t : terms) {
      if (image_height(t.mat, z) < y_min) {
        throw ConfigError("image of a sample point under a matrix of " + c.id + " lies below y_min");
      }
    }
    points.push_back(std::move(z));
  }

  const Evaluator ev(f, cfg);
  Real worst = 0;
  for (const Complex& z : points) {
    Complex sum;
    for (const Term& t : terms) sum = sum + ev.stroke(t.mat, z).scale(t.coeff);
    worst = std::max(worst, sum.abs());
  }
  return worst;
}

EvalConfig points_for(const Congruence& c, const EvalConfig& cfg) {
  const std::vector<DMat> mats = matrices_of(c);
  const std::size_t limit = std::max<std::size_t>(8, cfg.points.size());
  const double floor = cfg.y_min * (1 + 1e-9);
  auto admissible = [&](std::complex<double> z) {
    if (z.imag() < floor) return false;
    return std::all_of(mats.begin(), mats.end(),
                       [&](const DMat& m) { return m.image_height(z) >= floor; });
  };

  std::vector<std::complex<double>> chosen;
  auto offer = [&](std::complex<double> z) {
    if (chosen.size() >= limit || !admissible(z)) return;
    for (const auto& w : chosen) {
      if (std::abs(w - z) < 1e-9) return;
    }
    chosen.push_back(z);
  };
  for (const auto& z : cfg.points) offer(z);
  // On the isometric circle |cz + d| = sqrt(det) the matrix preserves Im z.
  for (double deg : {90.0, 70.0, 110.0, 55.0, 125.0, 40.0, 140.0}) {
    for (const DMat& m : mats) {
      if (m.c == 0) continue;
      const double th = deg * M_PI / 180;
      offer(std::complex<double>(-m.d / m.c, 0) + std::polar(std::sqrt(m.det()) / std::abs(m.c), th));
    }
  }
  if (chosen.size() < limit) {
    // Grid fallback, best minimum image height first.
    std::vector<std::pair<double, std::complex<double>>> grid;
    for (double x = -1; x <= 1; x += 1.0 / 512) {
      for (double y = cfg.y_min; y <= 1.5; y *= 1.02) {
        const std::complex<double> z(x, y);
        double low = y;
        for (const DMat& m : mats) low = std::min(low, m.image_height(z));
        if (low >= floor) grid.emplace_back(low, z);
      }
    }
    std::sort(grid.begin(), grid.end(), [](const auto& u, const auto& v) { return u.first > v.first; });
    for (const auto& [low, z] : grid) {
      if (chosen.size() >= limit) break;
      if (std::all_of(chosen.begin(), chosen.end(), [&](const auto& w) { return std::abs(w - z) > 0.003; })) {
        chosen.push_back(z);
      }
    }
  }
  if (chosen.empty()) throw ConfigError("no sample point keeps every image of " + c.id + " above y_min");
  EvalConfig out = cfg;
  out.points = std::move(chosen);
  return out;
}

std::string residual_line(const std::string& id, const Real& residual, const EvalConfig& cfg) {
  const bool pass = residual <= from_double(cfg.tol);
  return "CONG " + id + " max_residual=" + format_sig3(residual) + " verdict=" + (pass ? "PASS" : "FAIL");
}

std::vector<Congruence> standard_congruences(long N) {
  auto make = [](std::string id, RingElem lhs, RingElem rhs) {
    Congruence c;
    c.id = std::move(id);
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    return c;
  };
  return {
      make("P", RingElem(ProjMat(1, 1, 0, 1)), RingElem(1)),
      make("H", RingElem(ProjMat(fricke(N))), RingElem(ScalarPoly::eps())),
      make("T2", parse_ring_elem("[[2,0],[0,1]] + [[1,0],[0,2]] + [[1,1],[0,2]]"),
           RingElem(ScalarPoly::alpha2())),
      make("T3", parse_ring_elem("[[3,0],[0,1]] + [[1,0],[0,3]] + [[1,1],[0,3]] + [[1,2],[0,3]]"),
           RingElem(ScalarPoly::alpha3())),
  };
}

Real lambda_compute(const EvalConfig& cfg) {
  PrecisionScope scope(cfg.precision_bits);
  return log(to_real(level13::h3_eigenvalue())) / log(to_real(level13::Y()));
}

std::optional<std::pair<long, long>> lambda_rational_relation(long bound) {
  const QuadElem Y = level13::Y(), X = level13::h3_eigenvalue();
  std::vector<QuadElem> ypow;  // Y^p for p = -bound..bound
  for (long p = -bound; p <= bound; ++p) ypow.push_back(Y.pow(p));
  QuadElem xq = 1;
  for (long q = 1; q <= bound; ++q) {
    xq *= X;
    for (long p = -bound; p <= bound; ++p) {
      if (ypow[p + bound] == xq) return std::make_pair(p, q);
    }
  }
  return std::nullopt;
}

std::optional<DensityResult> density_search(const Real& X, const Real& tol, long bound,
                                            const EvalConfig& cfg) {
  if (X <= 0) throw std::invalid_argument("density: X must be positive");
  if (tol <= 0) throw std::invalid_argument("density: tol must be positive");
  if (bound < 0) throw std::invalid_argument("density: bound must be non-negative");
  PrecisionScope scope(cfg.precision_bits);
  const Real Yr = to_real(level13::Y());
  const Real X0 = to_real(level13::h3_eigenvalue());
  const Real logY = log(Yr);
  const Real alpha = log(X0) / logY / 2;
  const Real beta = log(Real(X)) / logY / 2;

  auto attempt = [&](long n) -> std::optional<DensityResult> {
    const Real m_real = round(Real(beta - alpha * n));
    if (abs(m_real) > bound || std::labs(n) > bound) return std::nullopt;
    DensityResult r;
    r.m = m_real.convert_to<long>();
    r.n = n;
    r.err = abs(Real(int_pow(Yr, 2 * r.m) * int_pow(X0, n) - X));
    if (r.err <= tol) return r;
    return std::nullopt;
  };

  // Nearest-integer Ostrowski expansion: r = beta - n alpha (mod 1) is
  // reduced by multiples of theta_k = q_k alpha - p_k, |theta_k| decreasing.
  Real r = beta - round(beta);
  long n = 0;
  Real frac = alpha;
  long p1 = 1, q1 = 0, p2 = 0, q2 = 1;
  for (int k = 0; k < 200; ++k) {
    if (auto hit = attempt(n)) return hit;
    const Real a = floor(frac);
    const long ai = a.convert_to<long>();
    const long p = ai * p1 + p2, q = ai * q1 + q2;
    if (q > 4 * std::max(bound, 1L)) break;
    p2 = p1, q2 = q1, p1 = p, q1 = q;
    const Real theta = alpha * q - p;
    if (theta == 0) break;
    const Real b = round(Real(r / theta));
    r -= b * theta;
    n += b.convert_to<long>() * q;
    if (std::labs(n) > 4 * std::max(bound, 1L)) break;
    if (frac == a) break;
    frac = 1 / (frac - a);
  }

  // Scan. |Y^s - X| <= tol forces |s - t| <= -log(1 - tol/X)/log Y, which
  // screens candidates in long double before the exact recheck.
  const Real ratio = tol / X;
  const long double window =
      ratio >= 1 ? 1.0L : Real(-log(Real(1 - ratio)) / logY / 2).convert_to<long double>() + 1e-9L;
  const long double a_ld = alpha.convert_to<long double>();
  const long double b_ld = beta.convert_to<long double>();
  for (long s = 0; s <= bound; ++s) {
    for (long cand : {s, -s}) {
      const long double v = b_ld - a_ld * cand;
      if (std::fabs(v - std::round(v)) <= window) {
        if (auto hit = attempt(cand)) return hit;
      }
      if (s == 0) break;
    }
  }
  return std::nullopt;
}

Verdict cusp_decay_check(const FormData& f, const EvalConfig& cfg) {
  f.validate();
  PrecisionScope scope(cfg.precision_bits);
  const Evaluator ev(f, cfg);
  const Real a1 = f.series.length() > 0 && f.series.last_exponent() >= 1
                      ? Real(abs(to_real(f.series.coeff_at(1))))
                      : Real(0);
  const RealMat h = to_real_mat(fricke(f.N));
  Verdict v;
  bool any_zero = false;
  for (long y : {2L, 4L, 8L}) {
    const Complex z(Real(0), Real(y));
    const Real bound = 2 * a1 * exp(-2 * pi() * y);
    const Real at_inf = ev.at(z).value.abs();
    const bool ok_inf = at_inf <= bound;
    v.ok = v.ok && ok_inf;
    v.lines.push_back("CUSP inf y=" + std::to_string(y) + " |f|=" + format_sig3(at_inf) +
                      " bound=" + format_sig3(bound) + (ok_inf ? " PASS" : " FAIL"));
    try {
      const Real at_zero = ev.stroke(h, z).abs();
      const bool ok_zero = at_zero <= bound;
      any_zero = true;
      v.ok = v.ok && ok_zero;
      v.lines.push_back("CUSP 0 y=" + std::to_string(y) + " |f|H|=" + format_sig3(at_zero) +
                        " bound=" + format_sig3(bound) + (ok_zero ? " PASS" : " FAIL"));
    } catch (const PrecisionError&) {
      v.lines.push_back("CUSP 0 y=" + std::to_string(y) + " skipped (tail bound at the image)");
    }
  }
  if (!any_zero) {
    v.ok = false;
    v.lines.push_back("CUSP 0 FAIL (no height evaluable; raise L)");
  }
  return v;
}

Verdict formcheck(const FormData& f, const EvalConfig& cfg) {
  f.validate();
  if (f.series.offset() != 1 || f.series.length() == 0 || f.series[0] != 1) {
    throw std::invalid_argument("formcheck: expected a normalized expansion q + a2 q^2 + ...");
  }
  Verdict v;
  auto record = [&](bool ok, const std::string& line) {
    v.ok = v.ok && ok;
    v.lines.push_back(line);
  };
  for (long p : {2L, 3L}) {
    const Rational ap = f.series.coeff_at(p);
    const HeckeVerdict rec = hecke_check(f.series, p, f.k, ap);
    record(rec.ok, "HECKE p=" + std::to_string(p) + " recursion " + (rec.ok ? "PASS" : "FAIL " + rec.message));
    const HeckeVerdict st = hecke_stroke_identity(f.series, p, f.k, ap);
    record(st.ok, "HECKE p=" + std::to_string(p) + " stroke " + (st.ok ? "PASS" : "FAIL " + st.message));
  }

  std::vector<Congruence> congruences = standard_congruences(f.N);
  if (f.N == level13::kLevel) {
    const Certificate cert = level13::f_certificate();
    for (const Step& s : cert.steps) {
      if (s.id == "W" || s.id == "g2") congruences.push_back(s.result);
    }
    Congruence g3;
    g3.id = "g3";
    g3.lhs = RingElem(level13::g3());
    g3.rhs = RingElem(1);
    congruences.push_back(g3);
  }
  for (const Congruence& c : congruences) {
    const EvalConfig local = points_for(c, cfg);
    const Real res = congruence_residual(f, c, local);
    record(res <= from_double(cfg.tol), residual_line(c.id, res, cfg));
  }

  const Verdict cusp = cusp_decay_check(f, cfg);
  for (const auto& line : cusp.lines) record(cusp.ok || line.find("FAIL") == std::string::npos, line);
  v.ok = v.ok && cusp.ok;
  return v;
}

}  // namespace converse
