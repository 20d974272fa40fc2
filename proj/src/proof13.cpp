#include "converse13/proof13.hpp"

#include <cstdlib>

namespace converse::level13 {

namespace {

const ScalarPoly kE = ScalarPoly::eps();
const ScalarPoly kA2 = ScalarPoly::alpha2();

RingElem M(long a, long b, long c, long d) { return RingElem(ProjMat(a, b, c, d)); }

Congruence axiom(const std::string& id, const std::string& lhs, const std::string& rhs) {
  return {id, parse_ring_elem(lhs), parse_ring_elem(rhs), lhs, rhs};
}

RingElem t2_sum() { return RingElem(D(2, 1)) + RingElem(D(1, 2)) + M(1, 1, 0, 2); }

// From X == Y derive HXH == HYH using right multiplication only.
void conjugate_by_h(CertificateBuilder& b, const std::string& id, const std::string& prior) {
  const RingElem h(H());
  const Congruence c = b.get(prior);
  b.right_mul(id + ".1", prior, h);                // XH == YH
  b.right_mul(id + ".2", "H", c.lhs * h);          // HXH == eXH
  b.right_mul(id + ".3", "H", c.rhs * h);          // HYH == eYH
  b.scale(id + ".4", id + ".1", kE);               // eXH == eYH
  b.add(id + ".5", id + ".2", id + ".4");
  b.sym(id + ".6", id + ".3");
  b.add(id, id + ".5", id + ".6",
        {c.lhs.conjugate_by_h(kLevel).str(), c.rhs.conjugate_by_h(kLevel).str()});
}

// Adds the listed congruences, negating those marked, under one final claim.
void combine(CertificateBuilder& b, const std::string& id,
             const std::vector<std::pair<std::string, bool>>& parts, const Claim& claim) {
  std::string acc = parts.front().first;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::string term = parts[i].first;
    if (parts[i].second) {
      term = id + ".neg" + std::to_string(i);
      b.scale(term, parts[i].first, ScalarPoly(-1));
    }
    std::string next = i + 1 == parts.size() ? id : id + "." + std::to_string(i);
    b.add(next, acc, term, i + 1 == parts.size() ? claim : Claim{});
    acc = next;
  }
}

void f_axioms(CertificateBuilder& b) {
  b.axiom("P", "ax.P");
  b.axiom("H", "ax.H");
  b.axiom("T2", "ax.T2");
  b.axiom("T3", "ax.T3");
}

// Steps through the H-symmetric square of T2.
void square_t2_steps(CertificateBuilder& b) {
  const RingElem t2 = t2_sum();
  b.right_mul("T2sq.1", "T2", t2);  // T2^2 == a2 T2
  b.scale("T2sq.2", "T2", kA2);     // a2 T2 == a2^2
  b.add("T2sq", "T2sq.1", "T2sq.2",
        {"2*[[1,0],[0,1]] + [[4,0],[0,1]] + [[1,0],[0,4]] + [[2,2],[0,2]] + [[1,1],[0,4]] + "
         "[[2,1],[0,2]] + [[1,2],[0,4]] + [[1,3],[0,4]]",
         "a2^2"});
  b.right_mul("T2sq.d12", "T2", RingElem(D(1, 2)));
  b.right_mul("T2sq.d21", "T2", RingElem(D(2, 1)));
  b.scale("T2sq.d12n", "T2sq.d12", ScalarPoly(-1));
  b.scale("T2sq.d21n", "T2sq.d21", ScalarPoly(-1));
  b.add("H4pre.1", "T2sq", "T2sq.d12n");
  b.add("H4pre", "H4pre.1", "T2sq.d21n",
        {"[[1,1],[0,4]] + [[1,3],[0,4]]",
         "a2^2 - [[1,1],[0,1]] - a2*[[2,0],[0,1]] - a2*[[1,0],[0,2]]"});
}

const char* const kOneMinusG3 = "([[1,0],[0,1]] - [[3,-1],[13,-4]])";

std::string times(const std::string& x, const std::string& y) { return x + "*" + y; }

}  // namespace

CongruenceContext f_context() {
  CongruenceContext ctx;
  ctx.name = "f";
  ctx.level = kLevel;
  ctx.axioms = {
      axiom("ax.P", "[[1,1],[0,1]]", "1"),
      axiom("ax.H", "[[0,-1],[13,0]]", "e"),
      axiom("ax.T2", "[[2,0],[0,1]] + [[1,0],[0,2]] + [[1,1],[0,2]]", "a2"),
      axiom("ax.T3", "[[3,0],[0,1]] + [[1,0],[0,3]] + [[1,1],[0,3]] + [[1,2],[0,3]]", "a3"),
  };
  return ctx;
}

CongruenceContext g_context() {
  CongruenceContext ctx;
  ctx.name = "g";
  ctx.level = kLevel;
  ctx.axioms = {
      axiom("ax.delta1", "[[39,-14],[117,-39]]", "e"),
      axiom("ax.delta2", "[[5,-2],[13,-5]]", "-1"),
      axiom("ax.delta3", "[[-26,8],[-91,26]]", "e"),
  };
  return ctx;
}

CongruenceContext context_by_name(const std::string& name) {
  if (name == "f") return f_context();
  if (name == "g") return g_context();
  throw std::invalid_argument("unknown context '" + name + "' (expected f or g)");
}

Certificate f_certificate() {
  CertificateBuilder b(f_context());
  f_axioms(b);
  const RingElem pinv(P().inv());
  const RingElem h(H());

  b.right_mul("Pinv.1", "P", pinv);  // 1 == P^-1
  b.sym("Pinv", "Pinv.1");
  b.scale("eH", "H", kE);  // eH == 1

  // W == 1 from H P^-1 H.
  b.right_mul("W.1", "H", pinv * h);
  b.right_mul("W.2", "Pinv", h);
  b.scale("W.3", "W.2", kE);
  b.trans("W.4", "W.1", "W.3");
  b.trans("W.5", "W.4", "eH", {"[[-13,0],[-169,-13]]", "1"});
  b.rescale("W", "W.5", {"[[1,0],[13,1]]", "1"});

  conjugate_by_h(b, "HT2", "T2");
  conjugate_by_h(b, "HT3", "T3");

  // g2 == 1.
  b.sym("T2.sym", "T2");
  b.add("g2.1", "HT2", "T2.sym", {"[[2,0],[-13,1]]", "[[1,1],[0,2]]"});
  const ProjMat binv = ProjMat(1, 1, 0, 2).inv();
  b.right_mul("g2.2", "g2.1", RingElem(binv), {"[[2,0],[-13,1]]*[[1,1],[0,2]]^-1", "1"});
  b.right_mul("g2.3", "W", RingElem(ProjMat(2, 0, -13, 1) * binv));
  b.trans("g2", "g2.3", "g2.2", {"[[2,-1],[13,-6]]", "1"});

  // R3, then replace each matrix by an equivalent one.
  b.sym("HT3.sym", "HT3");
  b.add("R3", "T3", "HT3.sym",
        {"[[1,1],[0,3]] + [[1,2],[0,3]]", "[[3,0],[-13,1]] + [[3,0],[-26,1]]"});
  b.right_mul("R3.w", "W", M(3, 0, -26, 1));
  b.right_mul("R3.a", "eH", pinv * M(1, 2, 0, 3));
  b.right_mul("R3.b", "Pinv", M(1, 2, 0, 3));
  b.right_mul("R3.c", "eH", M(3, 0, -13, 1));
  combine(b, "R3.r", {{"R3", false}, {"R3.a", false}, {"R3.b", false}, {"R3.c", true}, {"R3.w", true}},
          {"[[1,1],[0,3]] + e*[[0,-3],[13,-13]] - e*[[13,-1],[39,0]] - [[3,0],[13,1]]", "0"});
  b.right_mul("S3", "R3.r", RingElem(ProjMat(1, 1, 0, 3).inv()),
              {"[[1,0],[0,1]] + e*[[0,-3],[39,-26]] - e*[[39,-14],[117,-39]] - [[3,-1],[13,-4]]", "0"});
  b.rescale("delta1", "S3", {times(kOneMinusG3, "([[1,0],[0,1]] - e*[[39,-14],[117,-39]])"), "0"});

  // H4 through H7.
  square_t2_steps(b);
  b.sym("P.sym", "P");
  b.add("H4.1", "H4pre", "P.sym",
        {"[[1,1],[0,4]] + [[1,3],[0,4]]", "a2^2 - 1 - a2*[[2,0],[0,1]] - a2*[[1,0],[0,2]]"});
  conjugate_by_h(b, "H4.2", "H4.1");
  b.sym("H4.3", "H4.1");
  b.trans("H4", "H4.2", "H4.3",
          {"[[4,0],[-13,1]] + [[4,0],[-39,1]]", "[[1,1],[0,4]] + [[1,3],[0,4]]"});
  b.sym("H5", "H4", {"[[1,1],[0,4]] + [[1,3],[0,4]] - [[4,0],[-13,1]] - [[4,0],[-39,1]]", "0"});
  b.right_mul("H6.w", "W", M(4, 0, -39, 1));
  b.right_mul("H6.a", "eH", pinv * M(1, 3, 0, 4));
  b.right_mul("H6.b", "Pinv", M(1, 3, 0, 4));
  b.right_mul("H6.c", "eH", M(4, 0, -13, 1));
  combine(b, "H6", {{"H5", false}, {"H6.a", false}, {"H6.b", false}, {"H6.c", true}, {"H6.w", true}},
          {"[[1,1],[0,4]] + e*[[0,4],[-13,13]] - e*[[13,-1],[52,0]] - [[4,0],[13,1]]", "0"});
  b.right_mul("H7", "H6", M(1, 0, -13, 4),
              {"[[3,-1],[13,-4]] + e*[[-26,8],[-91,26]] - e*[[13,-2],[26,0]] - 1", "0"});
  b.rescale("delta3", "H7",
            {"-" + times(kOneMinusG3, "([[1,0],[0,1]] - e*[[-26,8],[-91,26]])"), "0"});

  // delta2 from g3 == g2 g3^-1 g2.
  b.right_mul("delta2.1", "g2", RingElem(g3().inv() * g2()), {"[[3,-1],[13,-4]]", "[[5,-2],[13,-5]]"});
  b.sym("delta2.2", "delta2.1");
  b.sym("delta2.3", "g2");
  b.add("delta2", "delta2.2", "delta2.3", {times(kOneMinusG3, "([[1,0],[0,1]] + [[5,-2],[13,-5]])"), "0"});

  // The relations for g = f|(1 - g3).
  b.scale("threedeltas.1", "delta1", -kE,
          {times(kOneMinusG3, "[[39,-14],[117,-39]]"), times("e", kOneMinusG3)});
  b.rescale("threedeltas.2", "delta2",
            {times(kOneMinusG3, "[[5,-2],[13,-5]]"), "-" + std::string(kOneMinusG3)});
  b.scale("threedeltas.3", "delta3", kE,
          {times(kOneMinusG3, "[[-26,8],[-91,26]]"), times("e", kOneMinusG3)});

  const RingElem d1(delta1_hat());
  b.right_mul("h2-sign.1", "threedeltas.2", d1);
  b.scale("h2-sign.2", "threedeltas.1", ScalarPoly(-1));
  b.trans("h2-sign", "h2-sign.1", "h2-sign.2");
  b.right_mul("h3-sign.1", "threedeltas.3", d1);
  b.scale("h3-sign.2", "threedeltas.1", kE);
  b.trans("h3-sign", "h3-sign.1", "h3-sign.2");
  b.right_mul("h-power-sign.1", "h2-sign", RingElem(delta2_hat() * delta1_hat()));
  b.scale("h-power-sign.2", "h2-sign", -kE);
  b.trans("h-power-sign.3", "h-power-sign.1", "h-power-sign.2");
  b.right_mul("h-power-sign.4", "h-power-sign.3", RingElem(delta3_hat() * delta1_hat()));
  b.trans("h-power-sign", "h-power-sign.4", "h3-sign");
  return b.certificate();
}

namespace {

struct Letter {
  int delta;  // 1, 2 or 3
  bool inverse;
};

ProjMat delta_hat(int i) {
  switch (i) {
    case 1: return delta1_hat();
    case 2: return delta2_hat();
    default: return delta3_hat();
  }
}

std::vector<Letter> h_word(long m, long n) {
  std::vector<Letter> w;
  for (long i = 0; i < std::labs(m); ++i) {
    if (m > 0) w.insert(w.end(), {{2, false}, {1, false}});
    else w.insert(w.end(), {{1, true}, {2, true}});
  }
  for (long i = 0; i < std::labs(n); ++i) {
    if (n > 0) w.insert(w.end(), {{3, false}, {1, false}});
    else w.insert(w.end(), {{1, true}, {3, true}});
  }
  return w;
}

void g_axioms(CertificateBuilder& b) {
  for (int i = 1; i <= 3; ++i) {
    b.axiom("threedeltas." + std::to_string(i), "ax.delta" + std::to_string(i));
  }
}

// Id of a proven congruence x == s for a letter, proving x^-1 == s on demand.
std::string letter_fact(CertificateBuilder& b, const Letter& l) {
  std::string base = "threedeltas." + std::to_string(l.delta);
  if (!l.inverse) return base;
  std::string id = "inv.delta" + std::to_string(l.delta);
  try {
    b.get(id);
    return id;
  } catch (const std::out_of_range&) {
  }
  const ScalarPoly s = b.get(base).rhs.coeff(ProjMat::identity());
  b.right_mul(id + ".1", base, RingElem(delta_hat(l.delta).inv()));  // 1 == s x^-1
  b.scale(id + ".2", id + ".1", s);                                   // s == x^-1
  b.sym(id, id + ".2");
  return id;
}

// Proves word == c letter by letter; the last step is named id.
void prove_word(CertificateBuilder& b, const std::string& id, const std::vector<Letter>& word) {
  if (word.empty()) {
    b.scale(id, "threedeltas.1", ScalarPoly(0), {"1", "1"});
    return;
  }
  std::string cur = letter_fact(b, word[0]);
  for (std::size_t i = 1; i < word.size(); ++i) {
    std::string fact = letter_fact(b, word[i]);
    const ScalarPoly c = b.get(cur).rhs.coeff(ProjMat::identity());
    std::string step = id + "." + std::to_string(i);
    b.right_mul(step + "a", cur, RingElem(delta_hat(word[i].delta).pow(word[i].inverse ? -1 : 1)));
    b.scale(step + "b", fact, c);
    b.trans(step, step + "a", step + "b");
    cur = step;
  }
  const Congruence& last = b.get(cur);
  b.rescale(id, cur, {last.lhs.str(), last.rhs.str()});
}

}  // namespace

Certificate g_certificate() {
  CertificateBuilder b(g_context());
  g_axioms(b);
  prove_word(b, "h2-sign", h_word(1, 0));
  prove_word(b, "h3-sign", h_word(0, 1));
  prove_word(b, "h-power-sign", h_word(2, 1));
  return b.certificate();
}

Congruence square_T2_derivation() {
  CertificateBuilder b(f_context());
  f_axioms(b);
  square_t2_steps(b);
  Report r = verify_certificate(b.certificate());
  if (!r.ok) throw std::logic_error("square of T2 failed to verify:\n" + r.str());
  return b.get("H4pre");
}

SignCheck sign_exponent_check(long m, long n) {
  if (std::labs(m) > 8 || std::labs(n) > 8) {
    throw std::invalid_argument("sign_exponent_check: |m|, |n| must be at most 8");
  }
  CertificateBuilder b(g_context());
  g_axioms(b);
  prove_word(b, "word", h_word(m, n));
  prove_word(b, "doubled", h_word(2 * m, n));

  SignCheck out;
  out.report = verify_certificate(b.certificate());
  const Congruence& w = b.get("word");
  const Congruence& d = b.get("doubled");
  out.sign = w.rhs.coeff(ProjMat::identity());
  out.doubled_sign = d.rhs.coeff(ProjMat::identity());

  const ProjMat h2 = delta2_hat() * delta1_hat();
  const ProjMat h3 = delta3_hat() * delta1_hat();
  const ScalarPoly expected = (-kE).pow(static_cast<unsigned>(std::labs(m)));
  out.ok = out.report.ok && w.lhs == RingElem(h2.pow(m) * h3.pow(n)) &&
           w.rhs == RingElem(expected) && d.lhs == RingElem(h2.pow(2 * m) * h3.pow(n)) &&
           d.rhs == RingElem::one();
  return out;
}

std::array<Mat2, 2> conjugated_g3() {
  const Mat2 a = eigenbasis();
  const Mat2 ainv = a.inverse();
  const Mat2 g = g3().rep();
  return {ainv * g * a, ainv * g * g * a};
}

Blowup blowup_check(long k) {
  if (k == 0 || k % 2 != 0) throw std::domain_error("blowup_check: k must be even and nonzero");
  const auto conj = conjugated_g3();
  Blowup out;
  out.value = RatFunc::z().pow(-k / 2) + stroke_of_power(k, conj[0]) + stroke_of_power(k, conj[1]);
  out.identically_zero = out.value.is_zero();
  if (!out.identically_zero) {
    out.pole_order = out.value.pole_order_at_zero();
    out.leading_coeff_nonzero = !out.value.leading_laurent_coeff().is_zero();
  }
  return out;
}

std::array<int, 3> tilde_g_check(long k) {
  if (k % 2 != 0 || std::labs(k) > 16) {
    throw std::domain_error("tilde_g_check: k must be even with |k| <= 16");
  }
  const Mat2 ainv = eigenbasis().inverse();
  const RatFunc g = stroke_of_power(k, ainv);
  const Mat2 deltas[] = {delta1_raw(), delta2_raw(), delta3_raw()};
  std::array<int, 3> signs{};
  for (int i = 0; i < 3; ++i) {
    RatFunc ratio = stroke_of_power(k, ainv * deltas[i]) / g;
    if (!ratio.is_constant()) throw std::logic_error("tilde_g_check: ratio is not constant");
    QuadElem s = ratio.constant_value();
    if (s == QuadElem(1)) {
      signs[i] = 1;
    } else if (s == QuadElem(-1)) {
      signs[i] = -1;
    } else {
      throw std::logic_error("tilde_g_check: ratio " + s.str() + " is not a sign");
    }
  }
  return signs;
}

}  // namespace converse::level13
