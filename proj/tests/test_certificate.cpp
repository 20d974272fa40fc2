#include <doctest.h>

#include "converse13/proof13.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

using namespace converse;
namespace l13 = converse::level13;

namespace {

const ScalarPoly kE = ScalarPoly::eps();

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Step& find_step(const Certificate& c, const std::string& id) {
  for (const auto& s : c.steps) {
    if (s.id == id) return s;
  }
  FAIL("missing step " << id);
  throw std::logic_error("unreachable");
}

Step make_step(const std::string& id, Rule rule, std::vector<std::string> refs, const std::string& lhs,
               const std::string& rhs) {
  Step s;
  s.id = id;
  s.rule = rule;
  s.refs = std::move(refs);
  s.result = {id, parse_ring_elem(lhs), parse_ring_elem(rhs)};
  return s;
}

RatFunc linear(const QuadElem& a, const QuadElem& b) {
  return RatFunc(Poly::linear(a, b), Poly(QuadElem(1)));
}

}  // namespace

TEST_CASE("shipped certificates replay") {
  auto start = std::chrono::steady_clock::now();
  Certificate f = certificate_from_json(read_file(CONVERSE13_DATA_DIR "/level13_f.json"));
  Certificate g = certificate_from_json(read_file(CONVERSE13_DATA_DIR "/level13_g.json"));
  Report rf = verify_certificate(f);
  Report rg = verify_certificate(g);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(rf.ok);
  CHECK(rg.ok);
  CHECK(secs < 5.0);
  CHECK(rf.str().find("CERTIFICATE OK") != std::string::npos);

  for (const char* id : {"T2", "T3", "HT2", "HT3", "W", "g2", "R3", "S3", "delta1", "H4", "H5", "H6",
                         "H7", "delta3", "delta2", "threedeltas.1", "threedeltas.2", "threedeltas.3",
                         "h-power-sign"}) {
    CHECK_MESSAGE(find_step(f, id).id == id, id);
  }
  for (const char* id : {"h2-sign", "h3-sign", "h-power-sign"}) find_step(g, id);
}

TEST_CASE("shipped files match the builder") {
  CHECK(read_file(CONVERSE13_DATA_DIR "/level13_f.json") == certificate_to_json(l13::f_certificate()));
  CHECK(read_file(CONVERSE13_DATA_DIR "/level13_g.json") == certificate_to_json(l13::g_certificate()));
}

TEST_CASE("contexts carry the stated axioms") {
  CongruenceContext f = l13::f_context();
  REQUIRE(f.axioms.size() == 4);
  CHECK(f.axioms[0].lhs == RingElem(l13::P()));
  CHECK(f.axioms[1].lhs == RingElem(l13::H()));
  CHECK(f.axioms[1].rhs == RingElem(kE));

  CongruenceContext g = l13::g_context();
  REQUIRE(g.axioms.size() == 3);
  // The hat matrices are the classes of the sqrt(13) forms.
  CHECK(g.axioms[0].lhs == RingElem(ProjMat(l13::delta1_raw())));
  CHECK(g.axioms[1].lhs == RingElem(ProjMat(l13::delta2_raw())));
  CHECK(g.axioms[2].lhs == RingElem(ProjMat(l13::delta3_raw())));
  CHECK(g.axioms[1].rhs == RingElem(-1));
  CHECK_THROWS_AS(l13::context_by_name("h"), std::invalid_argument);
}

TEST_CASE("the g-context relations are proven in the f-context") {
  Certificate f = l13::f_certificate();
  CongruenceContext g = l13::g_context();
  RingElem one_minus_g3 = RingElem::one() - RingElem(l13::g3());
  for (int i = 0; i < 3; ++i) {
    const Step& s = find_step(f, "threedeltas." + std::to_string(i + 1));
    CHECK(s.result.lhs == one_minus_g3 * g.axioms[i].lhs);
    CHECK(s.result.rhs == one_minus_g3 * g.axioms[i].rhs);
  }
  const Step& hp = find_step(f, "h-power-sign");
  ProjMat h2 = l13::delta2_hat() * l13::delta1_hat();
  ProjMat h3 = l13::delta3_hat() * l13::delta1_hat();
  CHECK(hp.result.lhs == one_minus_g3 * RingElem(h2 * h2 * h3));
  CHECK(hp.result.rhs == one_minus_g3);
}

TEST_CASE("verify_step W example") {
  CertificateBuilder b(l13::f_context());
  b.axiom("P", "ax.P");
  b.axiom("H", "ax.H");
  RingElem pinv(l13::P().inv()), h(l13::H());
  b.right_mul("a", "H", pinv * h);
  b.right_mul("b", "P", pinv);
  b.sym("c", "b");
  b.right_mul("d", "c", h);
  b.scale("e", "d", kE);
  b.trans("f", "a", "e");
  b.scale("g", "H", kE);
  b.trans("h", "f", "g");
  b.rescale("W", "h", {"[[1,0],[13,1]]", "1"});
  Report r = verify_certificate(b.certificate());
  CHECK(r.ok);
  CHECK(r.derived_steps() == 9);
  CHECK(b.get("W").lhs == RingElem(l13::W()));

  const Certificate f = l13::f_certificate();
  const Step& g2 = find_step(f, "g2.2");
  CHECK(g2.result.lhs == RingElem(ProjMat(2, 0, -13, 1) * ProjMat(1, 1, 0, 2).inv()));
  CHECK(g2.result.rhs == RingElem::one());
  CHECK(find_step(f, "g2").result.lhs == RingElem(l13::g2()));
}

TEST_CASE("corrupted step fails with the exact difference") {
  Certificate c = l13::f_certificate();
  for (auto& s : c.steps) {
    if (s.id == "S3") s.result.lhs = s.result.lhs + RingElem(l13::g3(), ScalarPoly(2));
  }
  Report r = verify_certificate(c);
  CHECK_FALSE(r.ok);
  for (const auto& v : r.steps) {
    if (v.id == "S3") {
      CHECK_FALSE(v.ok);
      CHECK(v.diff == RingElem(l13::g3(), ScalarPoly(2)));
    }
    if (v.id == "delta1") {
      CHECK_FALSE(v.ok);
      CHECK(v.message.find("S3") != std::string::npos);
    }
    if (v.id == "W") CHECK(v.ok);
  }
  CHECK(r.str().find("STEP S3 FAIL") != std::string::npos);
  CHECK(r.str().find("CERTIFICATE FAIL") != std::string::npos);
}

TEST_CASE("trivial certificates") {
  Certificate empty;
  Report r = verify_certificate(empty);
  CHECK(r.ok);
  CHECK(r.steps.empty());
  CHECK(r.str() == "CERTIFICATE OK\n");

  Certificate axioms_only;
  axioms_only.context = l13::f_context();
  r = verify_certificate(axioms_only);
  CHECK(r.ok);
  CHECK(r.derived_steps() == 0);
}

TEST_CASE("structural errors") {
  Certificate c;
  c.context = l13::f_context();
  c.steps.push_back(make_step("x", Rule::kSym, {"nowhere"}, "1", "[[1,1],[0,1]]"));
  CHECK_THROWS_AS(verify_certificate(c), CertificateFormatError);

  c.steps = {make_step("x", Rule::kAxiom, {"ax.P"}, "[[1,1],[0,1]]", "1"),
             make_step("x", Rule::kSym, {"x"}, "1", "[[1,1],[0,1]]")};
  CHECK_THROWS_AS(verify_certificate(c), CertificateFormatError);

  // A reference to a later step is dangling at the time it is checked.
  c.steps = {make_step("y", Rule::kSym, {"z"}, "1", "[[1,1],[0,1]]"),
             make_step("z", Rule::kAxiom, {"ax.P"}, "[[1,1],[0,1]]", "1")};
  CHECK_THROWS_AS(verify_certificate(c), CertificateFormatError);

  c.steps = {make_step("x", Rule::kAdd, {"ax.P"}, "1", "1")};
  CHECK_THROWS_AS(verify_certificate(c), CertificateFormatError);
}

TEST_CASE("TRANS needs matching endpoints") {
  Certificate c;
  c.context = l13::f_context();
  c.steps = {make_step("t", Rule::kTrans, {"ax.P", "ax.H"}, "[[1,1],[0,1]]", "e")};
  Report r = verify_certificate(c);
  CHECK_FALSE(r.ok);
  CHECK(r.steps[0].message.find("TRANS") != std::string::npos);
}

TEST_CASE("JSON format") {
  Certificate f = l13::f_certificate();
  std::string text = certificate_to_json(f);
  Certificate back = certificate_from_json(text);
  CHECK(certificate_to_json(back) == text);
  CHECK(back.steps.size() == f.steps.size());
  CHECK(back.context.level == 13);

  CHECK_THROWS_AS(certificate_from_json("{\"version\": 1,\n \"level\": 13, \"axioms\": [}"),
                  CertificateFormatError);
  try {
    certificate_from_json("{\"version\": 1,\n \"level\": 13, \"axioms\": [}");
  } catch (const CertificateFormatError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(certificate_from_json(R"({"version":2,"level":13,"axioms":[],"steps":[]})"),
                  CertificateFormatError);
  CHECK_THROWS_AS(
      certificate_from_json(
          R"({"version":1,"level":13,"axioms":[],"steps":[{"id":"a","rule":"LEFT_MUL","args":[],"result":{"lhs":"1","rhs":"1"}}]})"),
      CertificateFormatError);
  CHECK_THROWS_AS(certificate_from_json(R"({"version":1,"level":13,"axioms":[{"id":"a","lhs":"[[1,","rhs":"1"}],"steps":[]})"),
                  CertificateFormatError);
  CHECK_THROWS_AS(certificate_from_json(R"({"version":1,"level":13,"steps":[]})"), CertificateFormatError);
}

TEST_CASE("square of T2") {
  Congruence c = l13::square_T2_derivation();
  CHECK(c.lhs == parse_ring_elem("[[1,1],[0,4]] + [[1,3],[0,4]]"));
  CHECK(c.rhs == parse_ring_elem("a2^2 - [[1,1],[0,1]] - a2*[[2,0],[0,1]] - a2*[[1,0],[0,2]]"));

  // With P replaced by 1 the right side is fixed by H conjugation.
  RingElem rhs1 = c.rhs + RingElem(l13::P()) - RingElem::one();
  CHECK(rhs1.conjugate_by_h(13) == rhs1);

  Certificate f = l13::f_certificate();
  const Step& sq = find_step(f, "T2sq");
  CHECK(sq.result.lhs.size() == 8);
  CHECK(sq.result.lhs.coeff(ProjMat(2, 1, 0, 2)) == ScalarPoly(1));
  CHECK(sq.result.lhs.coeff(ProjMat(1, 2, 0, 4)) == ScalarPoly(1));
  for (const char* id : {"T2sq.1", "T2sq.2", "T2sq", "T2sq.d12", "T2sq.d21n", "H4pre"}) {
    Rule r = find_step(f, id).rule;
    CHECK((r == Rule::kRightMul || r == Rule::kAdd || r == Rule::kScale));
  }

  CHECK(find_step(f, "H5").result.difference() ==
        parse_ring_elem("[[1,1],[0,4]] + [[1,3],[0,4]] - [[4,0],[-13,1]] - [[4,0],[-39,1]]"));
}

TEST_CASE("sign_exponent_check examples") {
  l13::SignCheck s = l13::sign_exponent_check(1, 0);
  CHECK(s.ok);
  CHECK(s.sign == -kE);

  s = l13::sign_exponent_check(2, 1);
  CHECK(s.ok);
  CHECK(s.sign == ScalarPoly(1));

  s = l13::sign_exponent_check(0, 0);
  CHECK(s.ok);
  CHECK(s.sign == ScalarPoly(1));
  CHECK(s.doubled_sign == ScalarPoly(1));

  CHECK_THROWS_AS(l13::sign_exponent_check(9, 0), std::invalid_argument);
}

TEST_CASE("sign_exponent_check agrees with letter counting") {
  // Each h2 contributes one delta2 (sign -1) and one delta1 (e); each h3 a
  // delta3 and a delta1 (e each). Inverse letters carry the same sign.
  for (long m = -4; m <= 4; ++m) {
    for (long n = -4; n <= 4; ++n) {
      l13::SignCheck s = l13::sign_exponent_check(m, n);
      REQUIRE(s.ok);
      long minus = std::labs(m);
      long eps = std::labs(m) + 2 * std::labs(n);
      ScalarPoly expected = ScalarPoly(minus % 2 ? -1 : 1) * (eps % 2 ? kE : ScalarPoly(1));
      REQUIRE(s.sign == expected);
      REQUIRE(s.doubled_sign == ScalarPoly(1));
    }
  }
  CHECK(l13::sign_exponent_check(8, -8).ok);
}

TEST_CASE("conjugated g3 matrices as displayed") {
  auto c = l13::conjugated_g3();
  QuadElem half(Rational(1, 2));
  QuadElem top = QuadElem(Rational(5, 6), Rational(-1, 3));
  QuadElem bottom = QuadElem(Rational(5, 6), Rational(1, 3));
  // Both are determined up to the sign of the det-1 representative.
  CHECK(ProjMat(c[0]) == ProjMat(Mat2{-half, top, bottom, -half}));
  CHECK(ProjMat(c[1]) == ProjMat(Mat2{half, top, bottom, half}));
}

TEST_CASE("blowup_check") {
  l13::Blowup b = l13::blowup_check(-2);
  CHECK(b.identically_zero);

  for (long k : {2, 4, 6, 8}) {
    b = l13::blowup_check(k);
    CHECK_FALSE(b.identically_zero);
    CHECK(b.pole_order == k / 2);
    CHECK(b.leading_coeff_nonzero);
  }
  CHECK_THROWS_AS(l13::blowup_check(3), std::domain_error);
  CHECK_THROWS_AS(l13::blowup_check(0), std::domain_error);
}

TEST_CASE("blowup sum equals the closed form") {
  const QuadElem r = QuadElem::sqrt_d();
  const QuadElem five_m = QuadElem(5) - QuadElem(2) * r;
  const QuadElem five_p = QuadElem(5) + QuadElem(2) * r;
  for (long k : {-4, -2, 2, 4, 6}) {
    RatFunc closed = RatFunc::z().pow(-k / 2) +
                     RatFunc(QuadElem(6).pow(k)) * linear(-3, five_m).pow(-k / 2) *
                         linear(five_p, -3).pow(-k / 2) +
                     RatFunc(QuadElem(6).pow(k)) * linear(3, five_m).pow(-k / 2) *
                         linear(five_p, 3).pow(-k / 2);
    CHECK(l13::blowup_check(k).value == closed);
  }
}

TEST_CASE("tilde_g_check") {
  using Signs = std::array<int, 3>;
  CHECK(l13::tilde_g_check(2) == Signs{-1, -1, -1});
  CHECK(l13::tilde_g_check(6) == Signs{-1, -1, -1});
  CHECK(l13::tilde_g_check(4) == Signs{1, 1, 1});
  CHECK(l13::tilde_g_check(8) == Signs{1, 1, 1});
  for (long k = -16; k <= 16; k += 2) {
    int s = (k / 2) % 2 == 0 ? 1 : -1;  // (-1)^(-k/2) = (-1)^(-3k/2)
    CHECK(l13::tilde_g_check(k) == Signs{s, s, s});
  }
  CHECK_THROWS_AS(l13::tilde_g_check(18), std::domain_error);
  CHECK_THROWS_AS(l13::tilde_g_check(3), std::domain_error);
}
