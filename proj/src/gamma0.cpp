#include "converse13/gamma0.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace converse {

namespace {

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

IntMat normalized(IntMat m) {
  const Integer* first = m.a != 0 ? &m.a : (m.b != 0 ? &m.b : (m.c != 0 ? &m.c : &m.d));
  if (*first < 0) m = {-m.a, -m.b, -m.c, -m.d};
  return m;
}

IntMat inverse(const IntMat& m) { return {m.d, -m.b, -m.c, m.a}; }

IntMat power(const IntMat& m, long e) {
  IntMat base = e < 0 ? inverse(m) : m;
  IntMat out;
  for (long i = 0; i < std::labs(e); ++i) out = out * base;
  return out;
}

// Height with the entry sum as tie-break; strictly decreasing keys terminate.
struct Key {
  Integer height;
  Integer sum;
  friend bool operator<(const Key& x, const Key& y) {
    if (x.height != y.height) return x.height < y.height;
    return x.sum < y.sum;
  }
};

Key key(const IntMat& m) {
  return {m.height(), abs_int(m.a) + abs_int(m.b) + abs_int(m.c) + abs_int(m.d)};
}

enum class Side { kLeft, kRight };

// M = X M' (left) or M = M' X (right); the move records X.
struct Move {
  Letter letter;
  Side side;
  IntMat result;
};

Move apply(const IntMat& m, Letter l, Side side) {
  IntMat xinv = power(generator(l.gen), -l.exp);
  return {l, side, normalized(side == Side::kLeft ? xinv * m : m * xinv)};
}

// Exponents near num/den for the translation-type generators.
void near_ratio(const Integer& num, const Integer& den, std::vector<long>& out) {
  if (den == 0) return;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  for (Integer n : {Integer(q), Integer(q + 1)}) {
    if (n != 0 && n.fits_slong_p()) out.push_back(n.get_si());
  }
}

std::vector<Move> candidate_moves(const IntMat& m) {
  std::vector<Move> moves;
  auto add = [&](Gen g, const std::vector<long>& exps, Side side) {
    for (long e : exps) moves.push_back(apply(m, {g, e}, side));
  };
  std::vector<long> e;
  near_ratio(m.a, m.c, e);
  near_ratio(m.b, m.d, e);
  add(Gen::kP, e, Side::kLeft);
  e.clear();
  near_ratio(m.b, m.a, e);
  near_ratio(m.d, m.c, e);
  add(Gen::kP, e, Side::kRight);
  e.clear();
  near_ratio(m.c, 13 * m.a, e);
  near_ratio(m.d, 13 * m.b, e);
  add(Gen::kW, e, Side::kLeft);
  e.clear();
  near_ratio(m.a, 13 * m.b, e);
  near_ratio(m.c, 13 * m.d, e);
  add(Gen::kW, e, Side::kRight);
  for (Gen g : {Gen::kG2, Gen::kG3}) {
    add(g, {1, -1}, Side::kLeft);
    add(g, {1, -1}, Side::kRight);
  }
  return moves;
}

using MatKey = std::array<Integer, 4>;
MatKey mat_key(const IntMat& m) { return {m.a, m.b, m.c, m.d}; }

// Breadth-first search for any matrix with a smaller key. Returns the moves
// from m to it in order.
std::vector<Move> bfs_lower(const IntMat& m, std::size_t& budget) {
  const Key start = key(m);
  struct Node {
    IntMat mat;
    long parent;
    Letter letter;
    Side side;
  };
  std::vector<Node> nodes{{m, -1, {Gen::kP, 0}, Side::kLeft}};
  std::map<MatKey, bool> seen{{mat_key(m), true}};
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (Gen g : {Gen::kP, Gen::kW, Gen::kG2, Gen::kG3}) {
      for (long e : {1L, -1L}) {
        for (Side side : {Side::kLeft, Side::kRight}) {
          if (budget == 0) throw SearchBudgetExceeded("decompose: search budget exhausted");
          --budget;
          Move mv = apply(nodes[head].mat, {g, e}, side);
          if (!seen.emplace(mat_key(mv.result), true).second) continue;
          nodes.push_back({mv.result, static_cast<long>(head), mv.letter, mv.side});
          if (key(mv.result) < start) {
            std::vector<Move> path;
            for (long i = static_cast<long>(nodes.size()) - 1; nodes[i].parent >= 0; i = nodes[i].parent) {
              path.push_back({nodes[i].letter, nodes[i].side, nodes[i].mat});
            }
            std::reverse(path.begin(), path.end());
            return path;
          }
        }
      }
    }
  }
  throw SearchBudgetExceeded("decompose: search space exhausted");
}

Integer lcm_den(const Mat2& m) {
  Integer l = 1;
  for (const QuadElem* x : {&m.a, &m.b, &m.c, &m.d}) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x->rational_part().get_den_mpz_t());
  }
  return l;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

}  // namespace

Integer IntMat::height() const {
  return std::max({abs_int(a), abs_int(b), abs_int(c), abs_int(d)});
}

IntMat IntMat::operator*(const IntMat& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

ProjMat IntMat::to_proj() const {
  return ProjMat(Mat2{QuadElem(Rational(a)), QuadElem(Rational(b)), QuadElem(Rational(c)),
                      QuadElem(Rational(d))});
}

std::optional<IntMat> integer_representative(const ProjMat& m) {
  const Mat2& r = m.rep();
  for (const QuadElem* x : {&r.a, &r.b, &r.c, &r.d}) {
    if (x->sqrt_part() != 0) return std::nullopt;
  }
  Integer l = lcm_den(r);
  IntMat out;
  Integer* dst[] = {&out.a, &out.b, &out.c, &out.d};
  const QuadElem* src[] = {&r.a, &r.b, &r.c, &r.d};
  Integer g = 0;
  for (int i = 0; i < 4; ++i) {
    Rational v = src[i]->rational_part() * l;
    *dst[i] = v.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dst[i]->get_mpz_t());
  }
  for (Integer* x : dst) *x /= g;
  return normalized(out);
}

bool is_member(const ProjMat& m, long N) {
  std::optional<IntMat> r = integer_representative(m);
  return r && r->det() == 1 && r->c % N == 0;
}

IntMat generator(Gen g) {
  switch (g) {
    case Gen::kP: return {1, 1, 0, 1};
    case Gen::kW: return {1, 0, 13, 1};
    case Gen::kG2: return {2, -1, 13, -6};
    case Gen::kG3: return {3, -1, 13, -4};
  }
  throw std::logic_error("unknown generator");
}

std::string to_string(Gen g) {
  switch (g) {
    case Gen::kP: return "P";
    case Gen::kW: return "W";
    case Gen::kG2: return "g2";
    case Gen::kG3: return "g3";
  }
  throw std::logic_error("unknown generator");
}

Word::Word(const std::vector<Letter>& letters) {
  for (const auto& l : letters) push_back(l);
}

void Word::push_back(Letter l) {
  if (l.exp == 0) return;
  if (!letters_.empty() && letters_.back().gen == l.gen) {
    letters_.back().exp += l.exp;
    if (letters_.back().exp == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(l);
}

Word Word::operator+(const Word& o) const {
  Word out = *this;
  for (const auto& l : o.letters_) out.push_back(l);
  return out;
}

IntMat Word::evaluate_int() const {
  IntMat out;
  for (const auto& l : letters_) out = out * power(generator(l.gen), l.exp);
  return normalized(out);
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += to_string(l.gen);
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

Word parse_word(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  Word w;
  std::size_t pos = 0;
  while (in >> tok) {
    pos = text.find(tok, pos);
    if (tok == "1") continue;
    std::string name = tok.substr(0, tok.find('^'));
    long exp = 1;
    if (name.size() != tok.size()) {
      std::string e = tok.substr(name.size() + 1);
      std::size_t used = 0;
      try {
        exp = std::stol(e, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (e.empty() || used != e.size()) throw ParseError("bad exponent in '" + tok + "'", pos);
    }
    Gen g;
    if (name == "P") g = Gen::kP;
    else if (name == "W") g = Gen::kW;
    else if (name == "g2") g = Gen::kG2;
    else if (name == "g3") g = Gen::kG3;
    else throw ParseError("unknown generator '" + name + "'", pos);
    w.push_back({g, exp});
  }
  return w;
}

Word decompose(const ProjMat& m, std::size_t budget) {
  std::optional<IntMat> rep = integer_representative(m);
  if (!rep || rep->det() != 1 || rep->c % 13 != 0) {
    throw NotAMember("not in Gamma0(13): " + m.str());
  }
  IntMat cur = *rep;
  Word left;
  std::vector<Letter> right;  // applied in reverse order at the end
  auto record = [&](const Move& mv) {
    if (mv.side == Side::kLeft) left.push_back(mv.letter);
    else right.push_back(mv.letter);
    cur = mv.result;
  };

  while (cur.c != 0) {
    Key k = key(cur);
    std::optional<Move> best;
    for (const Move& mv : candidate_moves(cur)) {
      if (key(mv.result) < (best ? key(best->result) : k)) best = mv;
    }
    if (best) {
      record(*best);
      continue;
    }
    for (const Move& mv : bfs_lower(cur, budget)) record(mv);
  }

  // cur = +-[[1,b],[0,1]] up to sign, i.e. P^(b/a).
  Word w = left;
  Integer t = cur.b * cur.a;
  if (!t.fits_slong_p()) throw SearchBudgetExceeded("decompose: translation exponent too large");
  w.push_back({Gen::kP, t.get_si()});
  for (auto it = right.rbegin(); it != right.rend(); ++it) w.push_back(*it);

  if (!(w.evaluate() == m)) throw std::logic_error("decompose produced a wrong word");
  return w;
}

std::string Cusp::str() const {
  if (q == 0) return "inf";
  if (q == 1) return p.get_str();
  return p.get_str() + "/" + q.get_str();
}

std::vector<Cusp> cusps(long N) {
  if (!is_prime(N)) throw std::domain_error("cusps: only prime level is supported");
  return {{1, 0}, {0, 1}};
}

}  // namespace converse
