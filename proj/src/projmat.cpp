#include "converse13/projmat.hpp"

#include <cctype>
#include <stdexcept>

namespace converse {

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

Mat2 Mat2::inverse() const {
  QuadElem dt = det();
  if (dt.is_zero()) throw std::domain_error("singular matrix has no inverse");
  return adjugate().scaled(dt.inv());
}

std::string Mat2::str() const {
  return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]";
}

ProjMat::ProjMat(const Mat2& raw) {
  int s = raw.det().sign();
  if (s == 0) throw std::domain_error("matrix " + raw.str() + " has zero determinant");
  if (s < 0) throw std::domain_error("matrix " + raw.str() + " has negative determinant");
  const QuadElem* pivot = &raw.a;
  for (const QuadElem* e : {&raw.a, &raw.b, &raw.c, &raw.d}) {
    if (!e->is_zero()) {
      pivot = e;
      break;
    }
  }
  m_ = raw.scaled(pivot->inv());
}

ProjMat ProjMat::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  ProjMat result;
  ProjMat base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::strong_ordering operator<=>(const ProjMat& x, const ProjMat& y) {
  if (auto c = x.m_.a <=> y.m_.a; c != 0) return c;
  if (auto c = x.m_.b <=> y.m_.b; c != 0) return c;
  if (auto c = x.m_.c <=> y.m_.c; c != 0) return c;
  return x.m_.d <=> y.m_.d;
}

std::size_t ProjMat::hash() const {
  std::size_t h = m_.a.hash();
  for (const QuadElem* e : {&m_.b, &m_.c, &m_.d}) {
    h ^= e->hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

MatClass classify(const ProjMat& m) {
  const Mat2& r = m.rep();
  // tr^2 - 4 det scales by r^2 > 0 under rescaling, so its sign is a class
  // invariant and the canonical representative suffices.
  int s = (r.trace() * r.trace() - QuadElem(4) * r.det()).sign();
  if (s > 0) return {MatKind::kHyperbolic, std::nullopt};
  if (s == 0) return {MatKind::kParabolic, std::nullopt};
  ProjMat power = m;
  for (int n = 1; n <= kEllipticOrderBound; ++n) {
    if (power.is_identity()) return {MatKind::kElliptic, n};
    power = power * m;
  }
  return {MatKind::kElliptic, std::nullopt};
}

std::string to_string(MatKind kind) {
  switch (kind) {
    case MatKind::kElliptic: return "elliptic";
    case MatKind::kParabolic: return "parabolic";
    case MatKind::kHyperbolic: return "hyperbolic";
  }
  return "unknown";
}

namespace {

// Nonzero vector v with (m - lambda) v = 0, scaled so its last nonzero
// entry is 1.
std::pair<QuadElem, QuadElem> eigenvector(const Mat2& m, const QuadElem& lambda) {
  QuadElem x = m.b;
  QuadElem y = lambda - m.a;
  if (x.is_zero() && y.is_zero()) {
    x = lambda - m.d;
    y = m.c;
  }
  if (x.is_zero() && y.is_zero()) {
    throw std::logic_error("no eigenvector found for " + lambda.str());
  }
  if (!y.is_zero()) return {x / y, QuadElem(1)};
  return {QuadElem(1), QuadElem(0)};
}

}  // namespace

Diagonalization diagonalize(const Mat2& m) {
  QuadElem tr = m.trace();
  QuadElem disc = tr * tr - QuadElem(4) * m.det();
  if (disc.is_zero()) {
    if (m.is_diagonal() && m.a == m.d) return {Mat2::identity(), m.a, m.d};
    throw std::domain_error("matrix " + m.str() + " is not diagonalizable");
  }
  auto root = disc.sqrt();
  if (!root) {
    throw UnsupportedField("eigenvalues of " + m.str() + " lie outside Q(sqrt " +
                           std::to_string(disc.field_d()) + ")");
  }
  // root is the positive square root, so (tr + root)/2 is the larger one.
  QuadElem hi = (tr + *root) / QuadElem(2);
  QuadElem lo = (tr - *root) / QuadElem(2);
  auto [x1, y1] = eigenvector(m, hi);
  auto [x2, y2] = eigenvector(m, lo);
  Mat2 basis{x1, x2, y1, y2};
  Mat2 check = basis.inverse() * m * basis;
  if (!(check == Mat2::diag(hi, lo))) {
    throw std::logic_error("diagonalization check failed for " + m.str());
  }
  return {basis, hi, lo};
}

Diagonalization diagonalize(const ProjMat& m) {
  Mat2 rep = m.rep();
  if (auto root = rep.det().sqrt()) {
    rep = rep.scaled(root->inv());
  }
  return diagonalize(rep);
}

Mat2 fricke(long level) { return {0, -1, level, 0}; }

ProjMat conjugate_by_h(const ProjMat& m, long level) {
  Mat2 h = fricke(level);
  return ProjMat(h * m.rep() * h);
}

namespace {

struct MatrixCursor {
  std::string s;
  std::size_t pos = 0;

  void expect(char c) {
    if (pos >= s.size() || s[pos] != c) {
      throw ParseError(std::string("expected '") + c + "' in matrix literal", pos);
    }
    ++pos;
  }

  // Quad literal running up to the next ',' or ']'.
  QuadElem entry(long D) {
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != ',' && s[pos] != ']') ++pos;
    try {
      return parse_quad(std::string_view(s).substr(start, pos - start), D);
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad matrix entry: ") + e.what(), start + e.position());
    }
  }
};

}  // namespace

Mat2 parse_matrix(std::string_view text, long D) {
  MatrixCursor cur;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) cur.s.push_back(c);
  }
  Mat2 m;
  cur.expect('[');
  cur.expect('[');
  m.a = cur.entry(D);
  cur.expect(',');
  m.b = cur.entry(D);
  cur.expect(']');
  cur.expect(',');
  cur.expect('[');
  m.c = cur.entry(D);
  cur.expect(',');
  m.d = cur.entry(D);
  cur.expect(']');
  cur.expect(']');
  if (cur.pos != cur.s.size()) throw ParseError("trailing characters after matrix", cur.pos);
  return m;
}

}  // namespace converse
