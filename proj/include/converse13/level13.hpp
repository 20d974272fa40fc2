#pragma once

#include "converse13/projmat.hpp"

namespace converse::level13 {

inline constexpr long kLevel = 13;

// Generators of Gamma0(13).
inline ProjMat P() { return ProjMat(1, 1, 0, 1); }
inline ProjMat W() { return ProjMat(1, 0, 13, 1); }
inline ProjMat g2() { return ProjMat(2, -1, 13, -6); }
inline ProjMat g3() { return ProjMat(3, -1, 13, -4); }

inline ProjMat H() { return ProjMat(fricke(kLevel)); }

/// Class of diag(a, d).
inline ProjMat D(long a, long d) { return ProjMat(a, 0, 0, d); }

/// The three delta matrices with their sqrt(13) entries, each of det 1.
Mat2 delta1_raw();
Mat2 delta2_raw();
Mat2 delta3_raw();

/// Integer rescalings of the deltas used in the congruence derivations.
inline ProjMat delta1_hat() { return ProjMat(39, -14, 117, -39); }
inline ProjMat delta2_hat() { return ProjMat(5, -2, 13, -5); }
inline ProjMat delta3_hat() { return ProjMat(-26, 8, -91, 26); }

/// h2 = delta2 delta1 and h3 = delta3 delta1 as exact representatives.
Mat2 h2_raw();
Mat2 h3_raw();

/// Common eigenbasis of h2 and h3: [[(13+r)/39, (13-r)/39], [1, 1]] with
/// r = sqrt(13). Its first column belongs to eigenvalues (-2-r)/3 of h2 and
/// (7-r)/6 of h3.
Mat2 eigenbasis();

/// Y = (2 + sqrt 13)/3 and X = (7 - sqrt 13)/6 with Y^lambda = X.
QuadElem Y();
QuadElem h3_eigenvalue();

}  // namespace converse::level13
