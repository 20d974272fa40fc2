#include "converse13/qseries.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace converse {

namespace {

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Rational int_pow(long base, long e) {
  Rational out = 1;
  Rational b = e < 0 ? Rational(1, base) : Rational(base);
  for (long i = 0; i < std::labs(e); ++i) out *= b;
  return out;
}

// prod_{n >= 1} (1 - q^n) to L terms, from the pentagonal number theorem.
std::vector<Rational> euler_product(std::size_t L) {
  std::vector<Rational> c(L, 0);
  if (L > 0) c[0] = 1;
  for (long j = 1;; ++j) {
    long p1 = j * (3 * j - 1) / 2;
    long p2 = j * (3 * j + 1) / 2;
    if (static_cast<std::size_t>(p1) >= L) break;
    int s = j % 2 ? -1 : 1;
    c[p1] += s;
    if (static_cast<std::size_t>(p2) < L) c[p2] += s;
  }
  return c;
}

// f^r for f with f_0 = 1, any rational r (J. C. P. Miller's recurrence).
std::vector<Rational> series_power(const std::vector<Rational>& f, const Rational& r) {
  const std::size_t L = f.size();
  std::vector<Rational> b(L, 0);
  if (L == 0) return b;
  b[0] = 1;
  for (std::size_t n = 1; n < L; ++n) {
    Rational s = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (f[k] == 0) continue;
      s += ((r + 1) * static_cast<long>(k) - static_cast<long>(n)) * f[k] * b[n - k];
    }
    b[n] = s / static_cast<long>(n);
  }
  return b;
}

void check_hecke_pre(const QSeries& a, long p) {
  if (a.offset() != 1) throw std::invalid_argument("hecke: series must have offset 1");
  if (a.length() < static_cast<std::size_t>(10 * p)) {
    throw std::invalid_argument("hecke: series shorter than 10p");
  }
}

long parse_long(const std::string& s) {
  std::size_t used = 0;
  long v = std::stol(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer");
  return v;
}

}  // namespace

QSeries::QSeries(Rational offset, std::vector<Rational> coeffs)
    : offset_(std::move(offset)), c_(std::move(coeffs)) {
  offset_.canonicalize();
  for (auto& x : c_) x.canonicalize();
}

QSeries QSeries::one(std::size_t L) {
  std::vector<Rational> c(L, 0);
  if (L > 0) c[0] = 1;
  return QSeries(0, std::move(c));
}

Rational QSeries::coeff_at(const Rational& x) const {
  Rational i = x - offset_;
  i.canonicalize();
  if (!is_integer(i) || i < 0) return 0;
  if (x > last_exponent()) throw std::out_of_range("coefficient beyond truncation");
  return c_[i.get_num().get_ui()];
}

bool QSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

QSeries operator+(const QSeries& f, const QSeries& g) {
  Rational shift = g.offset_ - f.offset_;
  if (!is_integer(shift)) throw std::invalid_argument("QSeries: offsets differ by a non-integer");
  Rational lo = std::min(f.offset_, g.offset_);
  Rational hi = std::min(f.last_exponent(), g.last_exponent());
  std::vector<Rational> c;
  for (Rational x = lo; x <= hi; x += 1) {
    Rational v = 0;
    if (x >= f.offset_) v += f.coeff_at(x);
    if (x >= g.offset_) v += g.coeff_at(x);
    c.push_back(v);
  }
  return QSeries(lo, std::move(c));
}

QSeries operator-(const QSeries& f, const QSeries& g) { return f + g.scale(-1); }

QSeries operator*(const QSeries& f, const QSeries& g) {
  const std::size_t L = std::min(f.length(), g.length());
  std::vector<Rational> c(L, 0);
  for (std::size_t i = 0; i < L; ++i) {
    if (f.c_[i] == 0) continue;
    for (std::size_t j = 0; i + j < L; ++j) c[i + j] += f.c_[i] * g.c_[j];
  }
  return QSeries(f.offset_ + g.offset_, std::move(c));
}

QSeries QSeries::scale(const Rational& s) const {
  std::vector<Rational> c = c_;
  for (auto& x : c) x *= s;
  return QSeries(offset_, std::move(c));
}

QSeries QSeries::pow(unsigned e) const {
  if (e == 0) throw std::invalid_argument("QSeries::pow: exponent must be positive");
  QSeries out = *this;
  for (unsigned i = 1; i < e; ++i) out = out * *this;
  return out;
}

QSeries eta_product(const std::vector<std::pair<long, long>>& spec, std::size_t L) {
  const std::vector<Rational> e = euler_product(L);
  QSeries out = QSeries::one(L);
  for (const auto& [m, r] : spec) {
    if (m < 1) throw std::invalid_argument("eta_product: multiplier must be >= 1");
    if (r == 0) continue;
    std::vector<Rational> em(L, 0);
    for (std::size_t i = 0; i * m < L; ++i) em[i * m] = e[i];
    out = out * QSeries(Rational(m * r, 24), series_power(em, r));
  }
  return out;
}

std::vector<std::pair<long, long>> parse_eta_spec(const std::string& text) {
  std::vector<std::pair<long, long>> spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    auto caret = item.find('^');
    try {
      long m = parse_long(item.substr(0, caret));
      long r = caret == std::string::npos ? 1 : parse_long(item.substr(caret + 1));
      if (m < 1) throw std::invalid_argument("m");
      spec.emplace_back(m, r);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad eta spec item '" + item + "' (expected m^r with m >= 1)");
    }
  }
  return spec;
}

HeckeVerdict hecke_check(const QSeries& a, long p, long k, const Rational& a_p) {
  check_hecke_pre(a, p);
  const long L = static_cast<long>(a.length());
  const Rational pk1 = int_pow(p, k - 1);
  HeckeVerdict v;
  for (long n = 1; p * n <= L; ++n) {
    Rational lhs = a.coeff_at(p * n) - a_p * a.coeff_at(n) + pk1 * a.coeff_at(Rational(n, p));
    if (lhs != 0) {
      v.ok = false;
      v.failing_n = n;
      v.message = "recursion fails at n=" + std::to_string(n) + " (residual " + to_string(lhs) + ")";
      return v;
    }
  }
  return v;
}

QSeries hecke_stroke_series(const QSeries& a, long p, long k) {
  if (k % 2 != 0) throw std::invalid_argument("hecke_stroke_series: k must be even");
  const long L = static_cast<long>(a.length());
  const long top = L / p;  // exponents 1..top are determined
  std::vector<Rational> c(static_cast<std::size_t>(top), 0);

  // f|D(p,1) = p^(k/2) f(pz).
  const Rational dil = int_pow(p, k / 2);
  for (long n = 1; n * p <= top; ++n) c[n * p - 1] += dil * a.coeff_at(n);

  // sum_j f|[[1,j],[0,p]] = p^(-k/2) sum_n a_n q^(n/p) sum_j e(nj/p); the
  // character sum is p when p | n and 0 otherwise.
  const Rational avg = int_pow(p, -k / 2) * p;
  for (long n = 1; n <= top; ++n) c[n - 1] += avg * a.coeff_at(n * p);

  return QSeries(1, std::move(c));
}

HeckeVerdict hecke_stroke_identity(const QSeries& a, long p, long k, const Rational& a_p) {
  check_hecke_pre(a, p);
  QSeries lhs = hecke_stroke_series(a, p, k);
  const Rational factor = a_p * int_pow(p, 1 - k / 2);
  HeckeVerdict v;
  for (long n = 1; n <= static_cast<long>(lhs.length()); ++n) {
    Rational diff = lhs.coeff_at(n) - factor * a.coeff_at(n);
    if (diff != 0) {
      v.ok = false;
      v.failing_n = n;
      v.message = "stroke identity fails at n=" + std::to_string(n) + " (residual " +
                  to_string(diff) + ")";
      return v;
    }
  }
  return v;
}

std::string write_coefficients(const CoefficientFile& file) {
  if (file.series.offset() != 1) {
    throw std::invalid_argument("coefficient files need offset 1; this series starts at q^" +
                                to_string(file.series.offset()));
  }
  if (file.eps != 1 && file.eps != -1) throw std::invalid_argument("eps must be +1 or -1");
  std::ostringstream os;
  os << "# k=" << file.k << " N=" << file.N << " eps=" << (file.eps > 0 ? "+1" : "-1") << '\n';
  for (std::size_t i = 0; i < file.series.length(); ++i) {
    os << i + 1 << ' ' << to_string(file.series[i]) << '\n';
  }
  return os.str();
}

CoefficientFile read_coefficients(std::istream& in) {
  static const std::regex header(R"(#\s*k=(-?\d+)\s+N=(\d+)\s+eps=([+-]1)\s*)");
  CoefficientFile file;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw FileFormatError("line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) break;
  }
  std::smatch m;
  if (lineno == 0 || !std::regex_match(line, m, header)) fail("expected header '# k=<int> N=<int> eps=<+1|-1>'");
  try {
    file.k = parse_long(m[1]);
    file.N = parse_long(m[2]);
  } catch (const std::exception&) {
    fail("header value out of range");
  }
  if (file.N < 1) fail("N must be positive");
  file.eps = m[3] == "+1" ? 1 : -1;

  std::vector<Rational> c;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string n_text, a_text, extra;
    if (!(ls >> n_text >> a_text) || (ls >> extra)) fail("expected 'n a_n'");
    long n = 0;
    try {
      n = parse_long(n_text);
    } catch (const std::exception&) {
      fail("bad index '" + n_text + "'");
    }
    if (n != static_cast<long>(c.size()) + 1) {
      fail("expected index " + std::to_string(c.size() + 1) + ", got " + n_text);
    }
    try {
      c.push_back(parse_rational(a_text));
    } catch (const std::exception& e) {
      fail("bad coefficient '" + a_text + "': " + e.what());
    }
  }
  file.series = QSeries(1, std::move(c));
  return file;
}

CoefficientFile read_coefficients(const std::string& text) {
  std::istringstream in(text);
  return read_coefficients(in);
}

}  // namespace converse
