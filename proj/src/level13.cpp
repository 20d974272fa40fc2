#include "converse13/level13.hpp"

namespace converse::level13 {

namespace {
const QuadElem kR = QuadElem::sqrt_d(kLevel);
}

Mat2 delta1_raw() {
  return {kR, QuadElem(-14) / (QuadElem(3) * kR), QuadElem(3) * kR, -kR};
}

Mat2 delta2_raw() { return {5, -2, 13, -5}; }

Mat2 delta3_raw() {
  return {-kR, QuadElem(4) / kR, QuadElem(Rational(-7, 2)) * kR, kR};
}

Mat2 h2_raw() { return delta2_raw() * delta1_raw(); }
Mat2 h3_raw() { return delta3_raw() * delta1_raw(); }

Mat2 eigenbasis() {
  return {(QuadElem(13) + kR) / QuadElem(39), (QuadElem(13) - kR) / QuadElem(39), 1, 1};
}

QuadElem Y() { return QuadElem(Rational(2, 3), Rational(1, 3)); }
QuadElem h3_eigenvalue() { return QuadElem(Rational(7, 6), Rational(-1, 6)); }

}  // namespace converse::level13
