#include <doctest.h>

#include "converse13/level13.hpp"
#include "converse13/projmat.hpp"

#include <random>

using namespace converse;
namespace l13 = converse::level13;

namespace {

const QuadElem kR = QuadElem::sqrt_d();

QuadElem random_quad(std::mt19937_64& rng, int span = 20) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, span);
  return QuadElem(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

Mat2 random_positive(std::mt19937_64& rng) {
  while (true) {
    Mat2 m{random_quad(rng), random_quad(rng), random_quad(rng), random_quad(rng)};
    int s = m.det().sign();
    if (s > 0) return m;
    if (s < 0) return Mat2{m.b, m.a, m.d, m.c};  // column swap flips the sign
  }
}

QuadElem q(long a, long b, long den) { return QuadElem(Rational(a, den), Rational(b, den)); }

}  // namespace

TEST_CASE("mat_arith examples") {
  Mat2 raw = l13::H().rep() * l13::P().inv().rep() * l13::H().rep();
  Mat2 hh = fricke(13) * Mat2{1, -1, 0, 1} * fricke(13);
  CHECK(hh == Mat2{-13, 0, -169, -13});
  CHECK(ProjMat(raw) == l13::W());
  CHECK(l13::H() * l13::P().inv() * l13::H() == l13::W());

  CHECK(l13::g3().pow(3).is_identity());
  CHECK(l13::g3().inv() * l13::g2() == ProjMat(5, -2, 13, -5));

  ProjMat m = l13::g2() * l13::W();
  CHECK(m.inv() * m == ProjMat::identity());
  CHECK((l13::g2() * l13::g3()) * l13::P() == l13::g2() * (l13::g3() * l13::P()));
  CHECK(l13::P().pow(-3) == ProjMat(1, -3, 0, 1));
}

TEST_CASE("canonicalize examples") {
  CHECK(canonicalize(Mat2{-13, 0, -169, -13}) == ProjMat(1, 0, 13, 1));

  Mat2 scaled = l13::delta1_raw().scaled(QuadElem(3) * kR);
  CHECK(scaled == Mat2{39, -14, 117, -39});
  CHECK(canonicalize(l13::delta1_raw()) == ProjMat(39, -14, 117, -39));

  CHECK(canonicalize(Mat2::identity()).is_identity());
  CHECK(canonicalize(Mat2{2, 0, 0, 2}).is_identity());

  CHECK_THROWS_AS(canonicalize(Mat2{1, 2, 2, 4}), std::domain_error);
  CHECK_THROWS_AS(canonicalize(Mat2{0, 1, 1, 0}), std::domain_error);
}

TEST_CASE("canonical form properties") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    Mat2 m = random_positive(rng);
    ProjMat p(m);
    REQUIRE(ProjMat(p.rep()) == p);
    QuadElem r = random_quad(rng);
    if (r.is_zero()) continue;
    REQUIRE(ProjMat(m.scaled(r)) == p);

    Mat2 n = random_positive(rng);
    REQUIRE((m * n).det().sign() > 0);
    REQUIRE(ProjMat(m) * ProjMat(n) == ProjMat(m * n));
    REQUIRE(conjugate_by_h(conjugate_by_h(p, 13), 13) == p);
  }
}

TEST_CASE("classify examples") {
  MatClass c3 = classify(l13::g3());
  CHECK(c3.kind == MatKind::kElliptic);
  CHECK(c3.elliptic_order == 3);

  MatClass c2 = classify(l13::delta2_hat());
  CHECK(c2.kind == MatKind::kElliptic);
  CHECK(c2.elliptic_order == 2);

  Mat2 h2 = l13::h2_raw();
  CHECK(h2.trace() * h2.trace() - QuadElem(4) * h2.det() == QuadElem(Rational(16, 9)));
  CHECK(classify(ProjMat(h2)).kind == MatKind::kHyperbolic);

  CHECK(classify(l13::P()).kind == MatKind::kParabolic);
  CHECK(classify(l13::W()).kind == MatKind::kParabolic);
  CHECK(classify(l13::g2()).kind == MatKind::kHyperbolic);
}

TEST_CASE("h2 and h3 as displayed") {
  Mat2 h2 = l13::h2_raw();
  CHECK(h2 == Mat2{-kR, QuadElem(8) / (QuadElem(3) * kR), QuadElem(-2) * kR, kR / QuadElem(3)});
  CHECK(l13::h3_raw() == Mat2{-1, QuadElem(Rational(2, 3)), QuadElem(Rational(-13, 2)),
                              QuadElem(Rational(10, 3))});
  CHECK(l13::h2_raw() * l13::h3_raw() == l13::h3_raw() * l13::h2_raw());
  CHECK(ProjMat(l13::h2_raw()) * ProjMat(l13::h3_raw()) ==
        ProjMat(l13::h3_raw()) * ProjMat(l13::h2_raw()));
  CHECK(ProjMat(l13::h2_raw()) == l13::delta2_hat() * l13::delta1_hat());
  CHECK(ProjMat(l13::h3_raw()) == l13::delta3_hat() * l13::delta1_hat());
}

TEST_CASE("diagonalize examples") {
  Diagonalization d2 = diagonalize(l13::h2_raw());
  CHECK(d2.first == q(2, -1, 3));
  CHECK(d2.second == q(-2, -1, 3));
  CHECK(d2.basis.inverse() * l13::h2_raw() * d2.basis == Mat2::diag(d2.first, d2.second));

  Diagonalization d3 = diagonalize(l13::h3_raw());
  CHECK(d3.first == q(7, 1, 6));
  CHECK(d3.second == q(7, -1, 6));

  // Simultaneous diagonalization: one basis for both.
  CHECK(d2.basis == d3.basis);

  Diagonalization dd = diagonalize(Mat2{2, 0, 0, 1});
  CHECK(dd.basis == Mat2::identity());
  CHECK(dd.first == QuadElem(2));
  CHECK(dd.second == QuadElem(1));

  // The displayed basis with its own eigenvalue order.
  Mat2 a = l13::eigenbasis();
  CHECK(a.inverse() * l13::h2_raw() * a == Mat2::diag(q(-2, -1, 3), q(2, -1, 3)));
  CHECK(a.inverse() * l13::h3_raw() * a == Mat2::diag(q(7, -1, 6), q(7, 1, 6)));
  // Ours is the displayed one with columns swapped.
  CHECK(d2.basis == Mat2{a.b, a.a, a.d, a.c});
}

TEST_CASE("diagonalize errors") {
  CHECK_THROWS_AS(diagonalize(Mat2{1, 1, 1, 2}), UnsupportedField);  // disc 5
  CHECK_THROWS_AS(diagonalize(Mat2{1, 1, 0, 1}), std::domain_error);
  // Elliptic: negative discriminant has no real square root.
  CHECK_THROWS_AS(diagonalize(l13::g3().rep()), UnsupportedField);
}

TEST_CASE("diagonalize a class uses the det-one representative") {
  Diagonalization d = diagonalize(ProjMat(l13::h2_raw()));
  CHECK(d.first * d.second == QuadElem(1));
  CHECK(d.first == q(2, 1, 3));
}

TEST_CASE("conjugate_by_h examples") {
  CHECK(conjugate_by_h(ProjMat(2, 0, 0, 1), 13) == ProjMat(1, 0, 0, 2));
  CHECK(conjugate_by_h(ProjMat(1, 1, 0, 2), 13) == ProjMat(2, 0, -13, 1));
  CHECK(conjugate_by_h(ProjMat::identity(), 13).is_identity());
  ProjMat m(3, 1, 26, 9);
  const Mat2& r = m.rep();
  CHECK(conjugate_by_h(m, 13) ==
        ProjMat(Mat2{r.d, -r.c / QuadElem(13), QuadElem(-13) * r.b, r.a}));
}

TEST_CASE("matrix literal grammar") {
  CHECK(parse_matrix("[[1, 2/3], [-1+1*sqrt(13), 0]]") ==
        Mat2{1, QuadElem(Rational(2, 3)), QuadElem(-1, 1), 0});
  CHECK(parse_matrix(l13::delta1_raw().str()) == l13::delta1_raw());
  CHECK_THROWS_AS(parse_matrix("[[1,2],[3]]"), ParseError);
  CHECK_THROWS_AS(parse_matrix("[[1,2],[3,4]]x"), ParseError);
}
