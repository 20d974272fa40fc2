#include <doctest.h>

#include "converse13/quad.hpp"
#include "converse13/ratfunc.hpp"
#include "converse13/scalar_poly.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <random>

using namespace converse;

namespace {

const QuadElem kSqrt13 = QuadElem::sqrt_d();

QuadElem random_quad(std::mt19937_64& rng, int span = 50) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, span);
  return QuadElem(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

Poly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::vector<QuadElem> c;
  int n = deg(rng);
  for (int i = 0; i <= n; ++i) c.push_back(random_quad(rng, 9));
  return Poly(c);
}

}  // namespace

TEST_CASE("quad_arith examples") {
  QuadElem x(1, 2);
  QuadElem y(3, -1);
  CHECK(x + y == QuadElem(4, 1));

  QuadElem inv = QuadElem(2, 1).inv();
  CHECK(inv == QuadElem(Rational(-2, 9), Rational(1, 9)));
  CHECK(inv * QuadElem(2, 1) == QuadElem(1));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    QuadElem r = random_quad(rng);
    CHECK(r.conj().conj() == r);
  }
  CHECK_THROWS_AS(QuadElem(0).inv(), std::domain_error);
}

TEST_CASE("quad_sign examples") {
  CHECK(QuadElem(2, -1).sign() == -1);
  CHECK(QuadElem(Rational(2, 3), Rational(1, 3)).sign() == 1);
  CHECK(QuadElem(0).sign() == 0);
  CHECK(QuadElem(-4, 1).sign() == -1);  // -4 + 3.6055...
  CHECK(QuadElem(4, -1).sign() == 1);
}

TEST_CASE("mixing fields is rejected") {
  QuadElem x(1, 1, 13);
  QuadElem y(1, 1, 5);
  CHECK_THROWS_AS(x + y, std::logic_error);
  CHECK_THROWS_AS(QuadElem(1, 1, 12), std::domain_error);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    QuadElem a = random_quad(rng), b = random_quad(rng), c = random_quad(rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) REQUIRE(a * a.inv() == QuadElem(1));
  }
}

TEST_CASE("quad_sign agrees with 256-bit evaluation") {
  using boost::multiprecision::mpfr_float;
  mpfr_float::default_precision(78);  // ~256 bits
  std::mt19937_64 rng(99);
  const mpfr_float root = boost::multiprecision::sqrt(mpfr_float(13));
  for (int i = 0; i < 10000; ++i) {
    QuadElem x = random_quad(rng, 1000);
    mpfr_float a = mpfr_float(x.rational_part().get_num().get_str()) /
        mpfr_float(x.rational_part().get_den().get_str());
    mpfr_float b = mpfr_float(x.sqrt_part().get_num().get_str()) /
        mpfr_float(x.sqrt_part().get_den().get_str());
    mpfr_float v = a + b * root;
    int expected = v > 0 ? 1 : (v < 0 ? -1 : 0);
    REQUIRE(x.sign() == expected);
  }
}

TEST_CASE("quad text grammar") {
  CHECK(parse_quad("1+2*sqrt(13)") == QuadElem(1, 2));
  CHECK(parse_quad(" -3/2 - 1/3 * sqrt( 13 ) ") == QuadElem(Rational(-3, 2), Rational(-1, 3)));
  CHECK(parse_quad("-5*sqrt(13)") == QuadElem(0, -5));
  CHECK(parse_quad("7/14") == QuadElem(Rational(1, 2)));
  CHECK_THROWS_AS(parse_quad("1+2*sqrt(5)"), ParseError);
  CHECK_THROWS_AS(parse_quad("1/0"), ParseError);
  CHECK_THROWS_AS(parse_quad("abc"), ParseError);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    QuadElem x = random_quad(rng);
    REQUIRE(parse_quad(x.str()) == x);
    REQUIRE(parse_quad(x.str()).str() == x.str());
  }
}

TEST_CASE("quad sqrt") {
  CHECK(QuadElem(13).sqrt() == kSqrt13);
  CHECK(QuadElem(Rational(4, 9)).sqrt() == QuadElem(Rational(2, 3)));
  QuadElem y(Rational(2, 3), Rational(1, 3));
  CHECK((y * y).sqrt() == y);
  CHECK_FALSE(QuadElem(2).sqrt().has_value());
  CHECK_FALSE(QuadElem(-4).sqrt().has_value());
}

TEST_CASE("scalar_arith examples") {
  auto e = ScalarPoly::eps();
  auto a2 = ScalarPoly::alpha2();
  auto a3 = ScalarPoly::alpha3();
  CHECK(e * e == ScalarPoly(1));
  CHECK((a2 + e) * (a2 - e) == a2 * a2 - ScalarPoly(1));
  CHECK(a2 * a3 + a3 * a2 == (a2 * a3).scale(QuadElem(2)));
  CHECK((a2 - a2).is_zero());
  CHECK(ScalarPoly(0).terms().empty());
}

TEST_CASE("scalar polynomial ring laws") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> exp(0, 3);
  auto random_poly_s = [&] {
    ScalarPoly p;
    for (int t = 0; t < 3; ++t) {
      Monomial m{static_cast<std::uint16_t>(exp(rng)), static_cast<std::uint16_t>(exp(rng)),
                 static_cast<std::uint8_t>(exp(rng) & 1)};
      p += ScalarPoly::monomial(m, random_quad(rng, 5));
    }
    return p;
  };
  for (int i = 0; i < 300; ++i) {
    ScalarPoly p = random_poly_s(), q = random_poly_s(), r = random_poly_s();
    REQUIRE(p * q == q * p);
    REQUIRE((p * q) * r == p * (q * r));
    REQUIRE(p * (q + r) == p * q + p * r);
    // Re-normalizing an already canonical polynomial changes nothing.
    ScalarPoly renorm;
    for (const auto& [m, c] : p.terms()) renorm += ScalarPoly::monomial(m, c);
    REQUIRE(renorm == p);
    for (const auto& [m, c] : p.terms()) REQUIRE(m.eps <= 1);
  }
}

TEST_CASE("scalar exponent overflow") {
  Monomial big{65535, 0, 0};
  CHECK_THROWS_AS(multiply(big, Monomial{1, 0, 0}), std::overflow_error);
}

TEST_CASE("scalar polynomial text form") {
  auto p = ScalarPoly::monomial({2, 0, 1}, QuadElem(Rational(3, 2)));
  CHECK(p.str() == "3/2*e*a2^2");
  ScalarPoly q = ScalarPoly(1) - p + ScalarPoly::alpha3().scale(QuadElem(1, 1));
  CHECK(q.str() == "1 + (1+1*sqrt(13))*a3 - 3/2*e*a2^2");
}

TEST_CASE("ratfunc_ops examples") {
  RatFunc z = RatFunc::z();
  RatFunc zinv = z.pow(-1);
  RatFunc sum = zinv + (-zinv);
  CHECK(sum.is_zero());

  long k = 4;
  CHECK(z.pow(-k / 2).pole_order_at_zero() == 2);

  // The k = -2 identity.
  QuadElem s13 = kSqrt13;
  RatFunc inv36(QuadElem(Rational(1, 36)));
  auto lin = [](QuadElem a, QuadElem b) { return RatFunc(Poly::linear(a, b), Poly(QuadElem(1))); };
  RatFunc expr = z + inv36 * lin(-3, QuadElem(5) - QuadElem(2) * s13) *
                         lin(QuadElem(5) + QuadElem(2) * s13, -3) +
                 inv36 * lin(3, QuadElem(5) - QuadElem(2) * s13) *
                     lin(QuadElem(5) + QuadElem(2) * s13, 3);
  CHECK(expr.is_zero());
}

TEST_CASE("ratfunc evaluation and errors") {
  RatFunc f(Poly({QuadElem(1), QuadElem(1)}), Poly::z());  // (1+z)/z
  CHECK(f.eval_at(QuadElem(2)) == QuadElem(Rational(3, 2)));
  CHECK_THROWS_AS(f.eval_at(QuadElem(0)), std::domain_error);
  CHECK_THROWS_AS(RatFunc(Poly(QuadElem(1)), Poly()), std::domain_error);
  CHECK(f.pole_order_at_zero() == 1);
  CHECK(f.leading_laurent_coeff() == QuadElem(1));
  CHECK(RatFunc::z().pole_order_at_zero() == 0);
}

TEST_CASE("ratfunc reduction is confluent") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Poly n1 = random_poly(rng, 3), d1 = random_poly(rng, 3);
    Poly n2 = random_poly(rng, 3), d2 = random_poly(rng, 3);
    if (d1.is_zero() || d2.is_zero() || n2.is_zero()) continue;
    RatFunc f(n1, d1), g(n2, d2);
    REQUIRE((f * g) / g == f);
    // Reduced form: gcd 1, monic denominator.
    REQUIRE(Poly::gcd(f.num(), f.den()).degree() == 0);
    REQUIRE(f.den().leading() == QuadElem(1));
    if (!f.is_zero() && f.pole_order_at_zero() > 0) {
      REQUIRE(f.pole_order_at_zero() + f.num().valuation() - f.den().valuation() == 0);
    }
  }
}
