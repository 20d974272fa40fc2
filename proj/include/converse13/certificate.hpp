#pragma once

#include "converse13/groupring.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace converse {

/// lhs ≡ rhs modulo the right ideal of the form under test, i.e.
/// f|lhs = f|rhs.
struct Congruence {
  std::string id;
  RingElem lhs;
  RingElem rhs;
  /// Author's spelling of each side, kept for serialization; may be empty.
  std::string lhs_text;
  std::string rhs_text;

  RingElem difference() const { return lhs - rhs; }
  std::string lhs_spelling() const { return lhs_text.empty() ? lhs.str() : lhs_text; }
  std::string rhs_spelling() const { return rhs_text.empty() ? rhs.str() : rhs_text; }
  std::string str() const { return lhs.str() + " == " + rhs.str(); }
};

/// Hypotheses a certificate may use. Only the axiom list matters to the
/// verifier; level and name are carried for reporting and context checks.
struct CongruenceContext {
  std::string name;
  long level = 13;
  std::vector<Congruence> axioms;
};

enum class Rule { kAxiom, kRightMul, kAdd, kScale, kSym, kTrans, kRescale };

std::string to_string(Rule rule);
/// Throws CertificateFormatError on an unknown rule name.
Rule rule_from_string(const std::string& name);

/// One derivation step. refs name earlier steps or axioms; multiplier is used
/// by RIGHT_MUL and scalar by SCALE.
struct Step {
  std::string id;
  Rule rule = Rule::kAxiom;
  std::vector<std::string> refs;
  RingElem multiplier;
  ScalarPoly scalar;
  Congruence result;
};

struct Certificate {
  static constexpr int kVersion = 1;
  int version = kVersion;
  CongruenceContext context;
  std::vector<Step> steps;
};

/// Malformed certificate data: bad JSON, unknown rule, wrong arity, duplicate
/// or dangling ids.
class CertificateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepVerdict {
  std::string id;
  Rule rule = Rule::kAxiom;
  bool ok = false;
  /// claimed difference minus recomputed difference; zero when ok.
  RingElem diff;
  std::string message;
};

struct Report {
  std::vector<StepVerdict> steps;
  bool ok = true;

  std::size_t derived_steps() const;
  /// "STEP <id> OK|FAIL rule=<RULE>" per step, then "CERTIFICATE OK|FAIL".
  std::string str() const;
};

/// Congruences available to later steps, keyed by id.
using Verified = std::map<std::string, Congruence>;

/// Recomputes the step's rule from verified priors and compares the
/// normalized difference lhs - rhs with the claimed one. References to ids
/// that are neither verified nor axioms throw CertificateFormatError.
StepVerdict verify_step(const CongruenceContext& ctx, const Verified& prior, const Step& step);

/// Sequential replay. Failed steps are not added to the verified set, so
/// anything depending on them fails too.
Report verify_certificate(const Certificate& cert);

/// Applies a rule to known congruences; shared by the verifier and the
/// certificate builder. Returns nullopt with a message when the rule does not
/// apply (e.g. TRANS endpoints differ).
std::optional<Congruence> apply_rule(const Step& step, const std::vector<const Congruence*>& inputs,
                                     std::string& message);

/// Claimed spelling of a step result; empty strings keep the computed form.
struct Claim {
  std::string lhs;
  std::string rhs;
};

/// Assembles a certificate step by step, applying each rule as it goes.
/// A claim whose difference disagrees with the rule output throws
/// std::logic_error, so a finished builder always verifies.
class CertificateBuilder {
 public:
  explicit CertificateBuilder(CongruenceContext ctx);

  const CongruenceContext& context() const { return cert_.context; }
  const Congruence& get(const std::string& id) const;

  const Congruence& axiom(const std::string& id, const std::string& axiom_id, const Claim& c = {});
  const Congruence& right_mul(const std::string& id, const std::string& p, const RingElem& w,
                              const Claim& c = {});
  const Congruence& add(const std::string& id, const std::string& p, const std::string& q,
                        const Claim& c = {});
  const Congruence& scale(const std::string& id, const std::string& p, const ScalarPoly& s,
                          const Claim& c = {});
  const Congruence& sym(const std::string& id, const std::string& p, const Claim& c = {});
  const Congruence& trans(const std::string& id, const std::string& p, const std::string& q,
                          const Claim& c = {});
  const Congruence& rescale(const std::string& id, const std::string& p, const Claim& c = {});

  const Certificate& certificate() const { return cert_; }

 private:
  const Congruence& push(Step step, const Claim& claim);

  Certificate cert_;
  Verified known_;
};

std::string certificate_to_json(const Certificate& cert);
/// Throws CertificateFormatError (with the offending location) or ParseError.
Certificate certificate_from_json(const std::string& text);

}  // namespace converse
