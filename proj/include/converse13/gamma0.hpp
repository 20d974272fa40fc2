#pragma once

#include "converse13/projmat.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace converse {

/// Integer 2x2 matrix.
struct IntMat {
  Integer a = 1, b = 0, c = 0, d = 1;

  Integer det() const { return a * d - b * c; }
  /// max |entry|
  Integer height() const;
  IntMat operator*(const IntMat& o) const;
  friend bool operator==(const IntMat&, const IntMat&) = default;
  ProjMat to_proj() const;
};

/// Primitive integer representative of a class, if the canonical entries are
/// rational. The sign is fixed so the first nonzero entry is positive.
std::optional<IntMat> integer_representative(const ProjMat& m);

/// True iff the class has an integer representative of det 1 with N | c.
bool is_member(const ProjMat& m, long N);

enum class Gen { kP, kW, kG2, kG3 };

struct Letter {
  Gen gen;
  long exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Reduced word in the level-13 generators: adjacent letters differ and no
/// exponent is zero.
class Word {
 public:
  Word() = default;
  explicit Word(const std::vector<Letter>& letters);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  /// Appends with merging of equal neighbours.
  void push_back(Letter l);
  Word operator+(const Word& o) const;
  friend bool operator==(const Word&, const Word&) = default;

  IntMat evaluate_int() const;
  ProjMat evaluate() const { return evaluate_int().to_proj(); }

  /// Tokens like "P W^2 g3^-1"; the empty word prints as "1".
  std::string str() const;

 private:
  std::vector<Letter> letters_;
};

/// Inverse of Word::str; "1" or blank is the empty word.
Word parse_word(std::string_view text);

IntMat generator(Gen g);
std::string to_string(Gen g);

/// Search exhausted without reaching the identity. Inconclusive, not a proof
/// of non-membership.
class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAMember : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kDefaultSearchBudget = 1'000'000;

/// Word in P, W, g2, g3 evaluating to the class of m. Greedy height reduction
/// with a breadth-first fallback when no single move lowers the height. The
/// result is re-evaluated before it is returned. Throws NotAMember or
/// SearchBudgetExceeded.
Word decompose(const ProjMat& m, std::size_t budget = kDefaultSearchBudget);

/// Cusp p/q; q = 0 is infinity.
struct Cusp {
  Integer p;
  Integer q;
  friend bool operator==(const Cusp&, const Cusp&) = default;
  std::string str() const;
};

/// Cusps of Gamma0(N) for prime N: infinity and 0. Composite N throws
/// std::domain_error.
std::vector<Cusp> cusps(long N);

}  // namespace converse
