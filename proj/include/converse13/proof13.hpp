#pragma once

#include "converse13/certificate.hpp"
#include "converse13/level13.hpp"

#include <array>

namespace converse::level13 {

/// f-context: P == 1, H == e and the T2, T3 sums equal to a2, a3.
CongruenceContext f_context();
/// g-context for g = f|(1 - g3): the three delta-hat relations.
CongruenceContext g_context();

/// Full derivation in the f-context, from the axioms through delta1, delta3,
/// delta2, the (1 - g3)-prefixed delta relations and the h-power sign.
Certificate f_certificate();
/// Sign relations for h2, h3 and h2^2 h3 in the g-context.
Certificate g_certificate();

/// Context by name ("f" or "g"); throws std::invalid_argument otherwise.
CongruenceContext context_by_name(const std::string& name);

/// [[1,1],[0,4]] + [[1,3],[0,4]] == a2^2 - P - a2*D(2,1) - a2*D(1,2), derived
/// from T2 by RIGHT_MUL, ADD and SCALE and replayed through the verifier.
/// Throws std::logic_error if the replay fails.
Congruence square_T2_derivation();

struct SignCheck {
  bool ok = false;
  ScalarPoly sign;          // proven c with h2^m h3^n == c
  ScalarPoly doubled_sign;  // proven c with h2^(2m) h3^n == c
  Report report;
};

/// Proves h2^m h3^n == (-e)^m and h2^(2m) h3^n == 1 in the g-context by
/// expanding the delta words letter by letter, then replays the proof.
/// Requires |m|, |n| <= 8.
SignCheck sign_exponent_check(long m, long n);

/// A^-1 g3 A and A^-1 g3^2 A with A the displayed eigenbasis and g3 of det 1.
std::array<Mat2, 2> conjugated_g3();

struct Blowup {
  long pole_order = 0;
  bool identically_zero = false;
  bool leading_coeff_nonzero = false;
  RatFunc value;
};

/// S = z^(-k/2) + z^(-k/2)|A^-1 g3 A + z^(-k/2)|A^-1 g3^2 A, exactly.
/// k even and nonzero.
Blowup blowup_check(long k);

/// Signs s_i with g~|delta_i = s_i g~ for g~ = z^(-k/2)|A^-1, each checked
/// as an exact identity of rational functions. k even, |k| <= 16.
std::array<int, 3> tilde_g_check(long k);

}  // namespace converse::level13
