#include "cli.hpp"

#include "converse13/gamma0.hpp"
#include "converse13/numeric.hpp"
#include "converse13/proof13.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace converse::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_axioms(const CongruenceContext& a, const CongruenceContext& b) {
  if (a.level != b.level || a.axioms.size() != b.axioms.size()) return false;
  for (std::size_t i = 0; i < a.axioms.size(); ++i) {
    const Congruence &x = a.axioms[i], &y = b.axioms[i];
    if (x.id != y.id || x.lhs != y.lhs || x.rhs != y.rhs) return false;
  }
  return true;
}

Real parse_real(const std::string& text, const std::string& what) {
  try {
    Real x(text);
    return x;
  } catch (const std::exception&) {
    throw InputError("bad " + what + " '" + text + "'");
  }
}

struct VerifyArgs {
  std::string path;
  std::string context;
  std::string report;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Certificate cert = certificate_from_json(read_file(a.path));
  const std::string name = a.context.empty() ? cert.context.name : a.context;
  CongruenceContext expected;
  try {
    expected = level13::context_by_name(name);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (!same_axioms(cert.context, expected)) {
    throw InputError("certificate axioms do not match the built-in '" + name + "' context");
  }
  const Report report = verify_certificate(cert);
  const std::string text = report.str();
  out << text;
  if (!a.report.empty()) {
    std::ofstream rep(a.report);
    if (!rep) throw InputError("cannot write report '" + a.report + "'");
    rep << text;
  }
  return report.ok ? kPass : kFail;
}

struct FormcheckArgs {
  std::string path;
  long k = 0, N = 0, eps = 0;
  bool k_set = false, N_set = false, eps_set = false;
  unsigned prec = 256;
  double tol = 1e-20;
  std::size_t L = 512;
  long seed = -1;
};

int cmd_formcheck(FormcheckArgs a, std::ostream& out) {
  if (const char* env = std::getenv("HECKE_PREC")) {
    try {
      std::size_t used = 0;
      const long v = std::stol(env, &used);
      if (used != std::string(env).size() || v < 32) throw std::invalid_argument("range");
      a.prec = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw InputError(std::string("bad HECKE_PREC '") + env + "' (expected an integer >= 32)");
    }
  }
  CoefficientFile file;
  {
    std::istringstream in(read_file(a.path));
    file = read_coefficients(in);
  }
  if (a.k_set && a.k != file.k) throw InputError("--k disagrees with the file header");
  if (a.N_set && a.N != file.N) throw InputError("--N disagrees with the file header");
  if (a.eps_set && a.eps != file.eps) throw InputError("--eps disagrees with the file header");
  if (file.series.length() < a.L) {
    throw InputError("file has " + std::to_string(file.series.length()) + " coefficients, need L = " +
                     std::to_string(a.L));
  }
  std::vector<Rational> c(file.series.coeffs().begin(), file.series.coeffs().begin() + a.L);
  const FormData f{QSeries(1, std::move(c)), file.k, file.N, file.eps};

  EvalConfig cfg = EvalConfig::for_level(f.N);
  cfg.precision_bits = a.prec;
  cfg.tol = a.tol;
  if (a.seed >= 0) cfg.add_random_points(static_cast<std::uint64_t>(a.seed), 4, f.N);

  out << "# k=" << f.k << " N=" << f.N << " eps=" << (f.eps > 0 ? "+1" : "-1") << " L=" << a.L
      << " prec=" << a.prec << " tol=" << a.tol << "\n";
  const Verdict v = formcheck(f, cfg);
  for (const auto& line : v.lines) out << line << "\n";
  out << "FORMCHECK " << (v.ok ? "OK" : "FAIL") << "\n";
  return v.ok ? kPass : kFail;
}

int cmd_decompose(const std::string& text, std::size_t budget, std::ostream& out, std::ostream& err) {
  const Mat2 raw = parse_matrix(text);
  if (raw.det().sign() <= 0) {
    err << "not in Gamma0(13): determinant is not positive\n";
    return kFail;
  }
  try {
    out << decompose(ProjMat(raw), budget).str() << "\n";
    return kPass;
  } catch (const NotAMember& e) {
    err << e.what() << "\n";
  } catch (const SearchBudgetExceeded& e) {
    err << e.what() << " (inconclusive)\n";
  }
  return kFail;
}

int cmd_density(const std::string& x_text, const std::string& tol_text, long bound, unsigned prec,
                 std::ostream& out) {
  EvalConfig cfg;
  cfg.precision_bits = prec;
  PrecisionScope scope(prec);
  const Real X = parse_real(x_text, "X");
  const Real tol = parse_real(tol_text, "tol");
  if (X <= 0 || tol <= 0 || bound < 0) throw InputError("need X > 0, tol > 0 and bound >= 0");
  const auto r = density_search(X, tol, bound, cfg);
  if (!r) {
    out << "NOT FOUND within bound " << bound << "\n";
    return kFail;
  }
  out << "(m,n)=(" << r->m << "," << r->n << ") err=" << format_sig3(r->err) << "\n";
  return kPass;
}

int cmd_asym(long k, std::ostream& out) {
  const level13::Blowup b = level13::blowup_check(k);
  if (b.identically_zero) {
    out << "IDENTICALLY ZERO\n";
  } else {
    out << "POLE ORDER " << b.pole_order << (b.leading_coeff_nonzero ? " — NONZERO" : "") << "\n";
  }
  return kPass;
}

struct EtaArgs {
  std::string spec;
  std::size_t L = 0;
  long k = 0, N = 0, eps = 1;
  bool k_set = false, N_set = false;
};

int cmd_eta(const EtaArgs& a, std::ostream& out) {
  const auto spec = parse_eta_spec(a.spec);
  long weight2 = 0, level = 1;
  for (const auto& [m, r] : spec) {
    weight2 += r;
    level = std::lcm(level, m);
  }
  CoefficientFile file;
  file.k = a.k_set ? a.k : weight2 / 2;
  file.N = a.N_set ? a.N : level;
  file.eps = static_cast<int>(a.eps);
  file.series = eta_product(spec, a.L);
  out << write_coefficients(file);
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Replays the level-13 converse theorem certificates and checks forms numerically."};
  app.name("converse13");
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Replay a certificate; prints one line per step");
  verify->add_option("certificate", va.path, "certificate JSON file")->required();
  verify->add_option("--context", va.context, "expected context (f or g); default: the file's own")
      ->check(CLI::IsMember({"f", "g"}));
  verify->add_option("--report", va.report, "also write the report to this file");

  FormcheckArgs fa;
  auto* formcheck_cmd = app.add_subcommand("formcheck", "Check a coefficient file against the theorem's hypotheses");
  formcheck_cmd->add_option("coefficients", fa.path, "coefficient file")->required();
  auto* k_opt = formcheck_cmd->add_option("--k", fa.k, "weight; must match the header");
  auto* n_opt = formcheck_cmd->add_option("--N", fa.N, "level; must match the header");
  auto* e_opt = formcheck_cmd->add_option("--eps", fa.eps, "sign; must match the header")
                    ->check(CLI::IsMember({-1, 1}));
  formcheck_cmd->add_option("--prec", fa.prec, "precision in bits (HECKE_PREC overrides)")
      ->capture_default_str()
      ->check(CLI::Range(32u, 1u << 16));
  formcheck_cmd->add_option("--tol", fa.tol, "residual tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  formcheck_cmd->add_option("--L", fa.L, "coefficients used")->capture_default_str()->check(CLI::Range(30, 1 << 20));
  formcheck_cmd->add_option("--seed", fa.seed, "add 4 seeded random sample points (-1: none)")->capture_default_str();

  std::string matrix;
  std::size_t budget = kDefaultSearchBudget;
  auto* decompose_cmd = app.add_subcommand("decompose", "Write a Gamma0(13) matrix as a word in P, W, g2, g3");
  decompose_cmd->add_option("matrix", matrix, "matrix literal [[a,b],[c,d]]")->required();
  decompose_cmd->add_option("--budget", budget, "search budget")->capture_default_str();

  std::string x_text, tol_text;
  long bound = 1000000;
  unsigned dprec = 256;
  auto* density_cmd = app.add_subcommand("density", "Find (m,n) with Y^(2m + n lambda) within tol of X");
  density_cmd->add_option("X", x_text, "positive target")->required();
  density_cmd->add_option("tol", tol_text, "positive tolerance")->required();
  density_cmd->add_option("--bound", bound, "bound on |m| and |n|")->capture_default_str();
  density_cmd->add_option("--prec", dprec, "precision in bits")->capture_default_str()->check(CLI::Range(32u, 1u << 16));

  long asym_k = 0;
  auto* asym_cmd = app.add_subcommand("asym", "Blow-up of the three-term sum at z = 0 for weight k");
  asym_cmd->add_option("k", asym_k, "even nonzero weight")->required();

  EtaArgs ea;
  auto* eta_cmd = app.add_subcommand("eta", "Print an eta-product coefficient file");
  eta_cmd->add_option("spec", ea.spec, "m^r list such as 1^24")->required();
  eta_cmd->add_option("L", ea.L, "number of coefficients")->required()->check(CLI::Range(1, 1 << 20));
  auto* ek = eta_cmd->add_option("--k", ea.k, "header weight (default: sum r / 2)");
  auto* en = eta_cmd->add_option("--N", ea.N, "header level (default: lcm of m)");
  eta_cmd->add_option("--eps", ea.eps, "header sign")->capture_default_str()->check(CLI::IsMember({-1, 1}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*verify) return cmd_verify(va, out);
    if (*formcheck_cmd) {
      fa.k_set = k_opt->count() > 0;
      fa.N_set = n_opt->count() > 0;
      fa.eps_set = e_opt->count() > 0;
      return cmd_formcheck(fa, out);
    }
    if (*decompose_cmd) return cmd_decompose(matrix, budget, out, err);
    if (*density_cmd) return cmd_density(x_text, tol_text, bound, dprec, out);
    if (*asym_cmd) return cmd_asym(asym_k, out);
    if (*eta_cmd) {
      ea.k_set = ek->count() > 0;
      ea.N_set = en->count() > 0;
      return cmd_eta(ea, out);
    }
  } catch (const std::exception& e) {
    // Every exception that reaches this point is about the input: unreadable
    // or malformed files, bad literals, preconditions of the checks.
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace converse::cli
