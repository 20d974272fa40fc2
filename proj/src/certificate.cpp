#include "converse13/certificate.hpp"

#include <json.hpp>

#include <set>
#include <sstream>

namespace converse {

namespace {

using json = nlohmann::ordered_json;

struct RuleInfo {
  Rule rule;
  const char* name;
  std::size_t refs;  // step/axiom references
  bool operand;      // trailing RingElem or ScalarPoly argument
};

constexpr RuleInfo kRules[] = {
    {Rule::kAxiom, "AXIOM", 1, false},   {Rule::kRightMul, "RIGHT_MUL", 1, true},
    {Rule::kAdd, "ADD", 2, false},       {Rule::kScale, "SCALE", 1, true},
    {Rule::kSym, "SYM", 1, false},       {Rule::kTrans, "TRANS", 2, false},
    {Rule::kRescale, "RESCALE", 1, false},
};

const RuleInfo& info(Rule rule) {
  for (const auto& r : kRules) {
    if (r.rule == rule) return r;
  }
  throw std::logic_error("unknown rule");
}

void check_arity(const Step& step) {
  if (step.refs.size() != info(step.rule).refs) {
    throw CertificateFormatError("step '" + step.id + "': " + to_string(step.rule) + " takes " +
                                 std::to_string(info(step.rule).refs) + " reference(s)");
  }
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw CertificateFormatError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw CertificateFormatError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

RingElem parse_side(const std::string& text, long level, const std::string& where) {
  try {
    return parse_ring_elem(text, QuadElem::kDefaultD);
  } catch (const ParseError& e) {
    throw CertificateFormatError(where + ": " + e.what() + " (level " + std::to_string(level) + ")");
  } catch (const std::domain_error& e) {
    throw CertificateFormatError(where + ": " + e.what());
  }
}

}  // namespace

std::string to_string(Rule rule) { return info(rule).name; }

Rule rule_from_string(const std::string& name) {
  for (const auto& r : kRules) {
    if (name == r.name) return r.rule;
  }
  throw CertificateFormatError("unknown rule '" + name + "'");
}

std::size_t Report::derived_steps() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.rule != Rule::kAxiom;
  return n;
}

std::string Report::str() const {
  std::ostringstream os;
  for (const auto& s : steps) {
    os << "STEP " << s.id << (s.ok ? " OK" : " FAIL") << " rule=" << to_string(s.rule);
    if (!s.ok) {
      if (!s.diff.is_zero()) os << " diff=" << s.diff.str();
      if (!s.message.empty()) os << " (" << s.message << ")";
    }
    os << '\n';
  }
  os << (ok ? "CERTIFICATE OK" : "CERTIFICATE FAIL") << '\n';
  return os.str();
}

std::optional<Congruence> apply_rule(const Step& step, const std::vector<const Congruence*>& in,
                                     std::string& message) {
  Congruence out;
  out.id = step.id;
  switch (step.rule) {
    case Rule::kAxiom:
      out = *in[0];
      out.id = step.id;
      break;
    case Rule::kRescale:
      out.lhs = in[0]->lhs;
      out.rhs = in[0]->rhs;
      break;
    case Rule::kRightMul:
      out.lhs = in[0]->lhs * step.multiplier;
      out.rhs = in[0]->rhs * step.multiplier;
      break;
    case Rule::kAdd:
      out.lhs = in[0]->lhs + in[1]->lhs;
      out.rhs = in[0]->rhs + in[1]->rhs;
      break;
    case Rule::kScale:
      out.lhs = in[0]->lhs.scale(step.scalar);
      out.rhs = in[0]->rhs.scale(step.scalar);
      break;
    case Rule::kSym:
      out.lhs = in[0]->rhs;
      out.rhs = in[0]->lhs;
      break;
    case Rule::kTrans:
      if (!(in[0]->rhs == in[1]->lhs)) {
        message = "TRANS endpoints differ: " + in[0]->rhs.str() + " vs " + in[1]->lhs.str();
        return std::nullopt;
      }
      out.lhs = in[0]->lhs;
      out.rhs = in[1]->rhs;
      break;
  }
  return out;
}

StepVerdict verify_step(const CongruenceContext& ctx, const Verified& prior, const Step& step) {
  check_arity(step);
  StepVerdict v;
  v.id = step.id;
  v.rule = step.rule;

  std::vector<const Congruence*> inputs;
  for (const auto& ref : step.refs) {
    const Congruence* found = nullptr;
    if (step.rule != Rule::kAxiom) {
      auto it = prior.find(ref);
      if (it != prior.end()) found = &it->second;
    }
    if (!found) {
      for (const auto& ax : ctx.axioms) {
        if (ax.id == ref) found = &ax;
      }
    }
    if (!found) {
      throw CertificateFormatError("step '" + step.id + "' references unknown id '" + ref + "'");
    }
    inputs.push_back(found);
  }

  std::optional<Congruence> computed = apply_rule(step, inputs, v.message);
  if (!computed) return v;
  v.diff = step.result.difference() - computed->difference();
  v.ok = v.diff.is_zero();
  if (!v.ok) v.message = "claimed result does not follow";
  return v;
}

Report verify_certificate(const Certificate& cert) {
  if (cert.version != Certificate::kVersion) {
    throw CertificateFormatError("unsupported certificate version " + std::to_string(cert.version));
  }
  std::set<std::string> ids;
  for (const auto& ax : cert.context.axioms) {
    if (!ids.insert(ax.id).second) throw CertificateFormatError("duplicate id '" + ax.id + "'");
  }

  Report report;
  Verified verified;
  std::set<std::string> failed;
  for (const auto& step : cert.steps) {
    if (!ids.insert(step.id).second) throw CertificateFormatError("duplicate id '" + step.id + "'");
    check_arity(step);

    std::string blocked;
    for (const auto& ref : step.refs) {
      if (failed.count(ref)) blocked = ref;
    }
    StepVerdict v;
    if (!blocked.empty()) {
      v.id = step.id;
      v.rule = step.rule;
      v.message = "depends on failed step '" + blocked + "'";
    } else {
      v = verify_step(cert.context, verified, step);
    }

    if (v.ok) {
      verified[step.id] = step.result;
    } else {
      failed.insert(step.id);
      report.ok = false;
    }
    report.steps.push_back(std::move(v));
  }
  return report;
}

CertificateBuilder::CertificateBuilder(CongruenceContext ctx) { cert_.context = std::move(ctx); }

const Congruence& CertificateBuilder::get(const std::string& id) const {
  auto it = known_.find(id);
  if (it != known_.end()) return it->second;
  for (const auto& ax : cert_.context.axioms) {
    if (ax.id == id) return ax;
  }
  throw std::out_of_range("no congruence named '" + id + "'");
}

const Congruence& CertificateBuilder::push(Step step, const Claim& claim) {
  if (known_.count(step.id)) throw std::logic_error("duplicate step id '" + step.id + "'");
  std::vector<const Congruence*> inputs;
  for (const auto& ref : step.refs) inputs.push_back(&get(ref));
  std::string message;
  std::optional<Congruence> computed = apply_rule(step, inputs, message);
  if (!computed) throw std::logic_error("step '" + step.id + "': " + message);

  step.result = *computed;
  if (!claim.lhs.empty() || !claim.rhs.empty()) {
    step.result.lhs_text = claim.lhs.empty() ? computed->lhs.str() : claim.lhs;
    step.result.rhs_text = claim.rhs.empty() ? computed->rhs.str() : claim.rhs;
    step.result.lhs = parse_ring_elem(step.result.lhs_text);
    step.result.rhs = parse_ring_elem(step.result.rhs_text);
    if (!(step.result.difference() == computed->difference())) {
      throw std::logic_error("step '" + step.id + "': claim does not follow; computed " +
                             computed->str());
    }
  }
  cert_.steps.push_back(step);
  return known_[step.id] = step.result;
}

const Congruence& CertificateBuilder::axiom(const std::string& id, const std::string& axiom_id,
                                            const Claim& c) {
  Step s;
  s.id = id;
  s.rule = Rule::kAxiom;
  s.refs = {axiom_id};
  return push(std::move(s), c);
}

const Congruence& CertificateBuilder::right_mul(const std::string& id, const std::string& p,
                                                const RingElem& w, const Claim& c) {
  Step s;
  s.id = id;
  s.rule = Rule::kRightMul;
  s.refs = {p};
  s.multiplier = w;
  return push(std::move(s), c);
}

const Congruence& CertificateBuilder::add(const std::string& id, const std::string& p,
                                          const std::string& q, const Claim& c) {
  Step s;
  s.id = id;
  s.rule = Rule::kAdd;
  s.refs = {p, q};
  return push(std::move(s), c);
}

const Congruence& CertificateBuilder::scale(const std::string& id, const std::string& p,
                                            const ScalarPoly& k, const Claim& c) {
  Step s;
  s.id = id;
  s.rule = Rule::kScale;
  s.refs = {p};
  s.scalar = k;
  return push(std::move(s), c);
}

const Congruence& CertificateBuilder::sym(const std::string& id, const std::string& p,
                                          const Claim& c) {
  Step s;
  s.id = id;
  s.rule = Rule::kSym;
  s.refs = {p};
  return push(std::move(s), c);
}

const Congruence& CertificateBuilder::trans(const std::string& id, const std::string& p,
                                            const std::string& q, const Claim& c) {
  Step s;
  s.id = id;
  s.rule = Rule::kTrans;
  s.refs = {p, q};
  return push(std::move(s), c);
}

const Congruence& CertificateBuilder::rescale(const std::string& id, const std::string& p,
                                              const Claim& c) {
  Step s;
  s.id = id;
  s.rule = Rule::kRescale;
  s.refs = {p};
  return push(std::move(s), c);
}

std::string certificate_to_json(const Certificate& cert) {
  json j;
  j["version"] = cert.version;
  j["level"] = cert.context.level;
  if (!cert.context.name.empty()) j["context"] = cert.context.name;
  j["axioms"] = json::array();
  for (const auto& ax : cert.context.axioms) {
    json a;
    a["id"] = ax.id;
    a["lhs"] = ax.lhs_spelling();
    a["rhs"] = ax.rhs_spelling();
    j["axioms"].push_back(a);
  }
  j["steps"] = json::array();
  for (const auto& s : cert.steps) {
    json args = json::array();
    for (const auto& r : s.refs) args.push_back(r);
    if (s.rule == Rule::kRightMul) args.push_back(s.multiplier.str());
    if (s.rule == Rule::kScale) args.push_back(s.scalar.str());
    json step;
    step["id"] = s.id;
    step["rule"] = to_string(s.rule);
    step["args"] = args;
    step["result"]["lhs"] = s.result.lhs_spelling();
    step["result"]["rhs"] = s.result.rhs_spelling();
    j["steps"].push_back(step);
  }
  return j.dump(1) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CertificateFormatError("malformed JSON at " + line_col(text, e.byte) + ": " + e.what());
  }

  Certificate cert;
  const json& version = field(j, "version", "certificate");
  const json& level = field(j, "level", "certificate");
  if (!version.is_number_integer() || !level.is_number_integer()) {
    throw CertificateFormatError("certificate: version and level must be integers");
  }
  cert.version = version.get<int>();
  if (cert.version != Certificate::kVersion) {
    throw CertificateFormatError("unsupported certificate version " + std::to_string(cert.version));
  }
  cert.context.level = level.get<long>();
  if (j.contains("context") && j["context"].is_string()) cert.context.name = j["context"];

  const json& axioms = field(j, "axioms", "certificate");
  if (!axioms.is_array()) throw CertificateFormatError("certificate: axioms must be an array");
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    std::string where = "axioms[" + std::to_string(i) + "]";
    Congruence c;
    c.id = string_field(axioms[i], "id", where);
    where += " '" + c.id + "'";
    c.lhs_text = string_field(axioms[i], "lhs", where);
    c.rhs_text = string_field(axioms[i], "rhs", where);
    c.lhs = parse_side(c.lhs_text, cert.context.level, where + " lhs");
    c.rhs = parse_side(c.rhs_text, cert.context.level, where + " rhs");
    cert.context.axioms.push_back(std::move(c));
  }

  const json& steps = field(j, "steps", "certificate");
  if (!steps.is_array()) throw CertificateFormatError("certificate: steps must be an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::string where = "steps[" + std::to_string(i) + "]";
    Step s;
    s.id = string_field(steps[i], "id", where);
    where += " '" + s.id + "'";
    s.rule = rule_from_string(string_field(steps[i], "rule", where));
    const RuleInfo& ri = info(s.rule);

    const json& args = field(steps[i], "args", where);
    if (!args.is_array() || args.size() != ri.refs + (ri.operand ? 1 : 0)) {
      throw CertificateFormatError(where + ": wrong number of args for " + ri.name);
    }
    for (const auto& a : args) {
      if (!a.is_string()) throw CertificateFormatError(where + ": args must be strings");
    }
    for (std::size_t r = 0; r < ri.refs; ++r) s.refs.push_back(args[r].get<std::string>());
    if (s.rule == Rule::kRightMul) {
      s.multiplier = parse_side(args[1].get<std::string>(), cert.context.level, where + " multiplier");
    } else if (s.rule == Rule::kScale) {
      try {
        s.scalar = parse_scalar_poly(args[1].get<std::string>());
      } catch (const ParseError& e) {
        throw CertificateFormatError(where + " scalar: " + e.what());
      }
    }

    const json& result = field(steps[i], "result", where);
    s.result.id = s.id;
    s.result.lhs_text = string_field(result, "lhs", where + " result");
    s.result.rhs_text = string_field(result, "rhs", where + " result");
    s.result.lhs = parse_side(s.result.lhs_text, cert.context.level, where + " result lhs");
    s.result.rhs = parse_side(s.result.rhs_text, cert.context.level, where + " result rhs");
    cert.steps.push_back(std::move(s));
  }
  return cert;
}

}  // namespace converse
