// sstqp: instance generation, bound tables, rank-one membership and
// witness construction from the command line.
//
// exit codes: 0 ok, 2 validation error, 3 solver failure, 4 property violation

#include "sstqp/closedform.hpp"
#include "sstqp/generate.hpp"
#include "sstqp/io.hpp"
#include "sstqp/lift.hpp"
#include "sstqp/oracle.hpp"
#include "sstqp/report.hpp"
#include "sstqp/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace sstqp;

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kSolverFailure = 3;
constexpr int kViolation = 4;

struct Args {
  std::string instance;
  std::string rho;
  std::string dist = "uniform";
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::optional<double> tol;
  int oracle_cap = OracleOptions{}.cap;
  int n = 0;
  std::string x;
  std::string kind;
  std::string suite = "all";
};

ToleranceConfig tolerances(const Args& a) {
  ToleranceConfig t;
  if (a.tol) {
    t.eq_tol = t.ineq_tol = t.psd_tol = *a.tol;
    t.validate();
  }
  return t;
}

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
}

int single_rho(const Args& a) {
  const auto rhos = parse_int_list(a.rho);
  if (rhos.size() != 1) throw InvalidArgument("--rho must be a single integer here");
  return rhos.front();
}

InstanceFile load(const Args& a) {
  std::vector<std::string> warnings;
  InstanceFile f = load_instance(a.instance, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  return f;
}

int cmd_gen(const Args& a) {
  std::optional<int> rho;
  if (!a.rho.empty()) rho = single_rho(a);
  const GeneratedInstance g = generate_instance(a.n, parse_distribution(a.dist), rho, a.seed);
  if (g.certificate) g.certificate->validate(tolerances(a));
  emit(a, dump_instance(to_file(g)));
  return kOk;
}

int cmd_bounds(const Args& a) {
  if (a.format != "csv" && a.format != "json") throw InvalidArgument("--format must be csv or json");
  const InstanceFile f = load(a);
  std::vector<int> rhos;
  if (!a.rho.empty()) {
    rhos = parse_int_list(a.rho);
  } else if (f.rho) {
    rhos = {*f.rho};
  } else {
    for (int r = 1; r <= f.Q.n(); ++r) rhos.push_back(r);
  }
  BoundsOptions opts;
  opts.oracle.cap = a.oracle_cap;
  opts.tol = tolerances(a);
  const auto rows = compute_bounds(f.Q, rhos, opts);
  emit(a, a.format == "json" ? bounds_to_json(rows) : bounds_to_csv(rows));

  bool failed = false;
  bool violated = false;
  for (const auto& r : rows) {
    failed = failed || r.r1.failed() || r.r2.failed() || r.r3.failed();
    if (r.sandwich_ok && !*r.sandwich_ok) {
      violated = true;
      std::cerr << "sandwich violated at rho=" << r.rho << '\n';
    }
  }
  if (violated) return kViolation;
  return failed ? kSolverFailure : kOk;
}

int cmd_check_rank_one(const Args& a) {
  const int rho = single_rho(a);
  Vector x;
  if (!a.x.empty()) {
    x = parse_vector(a.x);
  } else if (!a.instance.empty()) {
    // no point given: test the exact rho-sparse minimizer of the instance
    const InstanceFile f = load(a);
    OracleOptions o;
    o.cap = a.oracle_cap;
    x = solve_sparse_stqp_exact(f.Q, rho, o).minimizer;
    std::cout << "x = " << x.transpose() << '\n';
  } else {
    throw InvalidArgument("check-rank-one needs --x or --instance");
  }
  if (rho < 1 || rho > x.size()) throw InvalidArgument("--rho must lie in [1, n]");

  MembershipOptions opts;
  opts.tol = tolerances(a);
  const MembershipVerdict v = rank_one_membership(x, rho, opts);
  std::cout << to_string(v.status) << ": " << v.reason << '\n';
  if (v.status == Membership::kMember && v.witness && !a.out.empty()) {
    write_file(a.out, dump_witness(*v.witness, rho));
  }
  return v.status == Membership::kUnknown ? kSolverFailure : kOk;
}

int cmd_witness(const Args& a) {
  if (a.x.empty()) throw InvalidArgument("witness needs --x");
  const Vector x = parse_vector(a.x);
  const int rho = single_rho(a);
  const ToleranceConfig tol = tolerances(a);
  if (!in_simplex(x, tol)) throw DomainError("x is not in the standard simplex");

  ExtendedLiftedPoint p;
  FeasibilityReport report;
  int out_rho = rho;
  const SymMatrix xx = SymMatrix::outer(x);
  if (a.kind == "r1_rho1") {
    p = witness_r1_rho1(x, tol);
    report = check_r1rho_feasible(p, rho, tol);
  } else if (a.kind == "r2") {
    p = witness_r2(x, SymMatrix(x.size()), rho, tol);
    report = check_r2rho_feasible(p, rho, tol);
  } else if (a.kind == "binary_cover") {
    p = witness_binary_cover(x, xx, rho, tol);
    report = check_r3rho_feasible(p, rho, tol);
  } else if (a.kind == "general") {
    const GeneralConstructParams gp = general_construct_params(x, rho, tol);
    std::cerr << "nu=" << gp.nu << " lambda=" << gp.lambda << " alpha=" << gp.alpha
              << " beta=" << gp.beta << '\n';
    p = witness_general_construct(x, rho, tol);
    report = check_r3rho_feasible(p, rho, tol);
  } else if (a.kind == "lift_step") {
    MembershipOptions mo;
    mo.tol = tol;
    const MembershipVerdict v = rank_one_membership(x, rho, mo);
    if (v.status != Membership::kMember || !v.witness) {
      throw DomainError("lift_step needs x in the rank-one face at rho (" +
                        std::string(to_string(v.status)) + ")");
    }
    p = lift_sparsity_step(*v.witness, rho, tol);
    out_rho = rho + 1;
    report = check_r3rho_feasible(p, out_rho, tol);
  } else {
    throw InvalidArgument("--kind must be one of r1_rho1, r2, binary_cover, general, lift_step");
  }
  emit(a, dump_witness(p, out_rho));
  std::cerr << report.summary() << '\n';
  return report.feasible ? kOk : kViolation;
}

int cmd_verify(const Args& a) {
  bool ok = true;
  for (const auto& r : run_verify_suite(a.suite, a.seed)) {
    std::cout << r.summary();
    ok = ok && r.ok();
  }
  return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse standard quadratic programs: relaxations, bounds and lifted witnesses"};
  app.require_subcommand(1);
  Args a;

  auto tol_opt = [&](CLI::App* c) {
    c->add_option("--tol", a.tol, "Feasibility tolerance (eq, ineq and psd)")->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("-n,--n", a.n, "Dimension")->required()->check(CLI::Range(2, 64));
  gen->add_option("--dist", a.dist, "uniform, gaussian or structured")->capture_default_str();
  gen->add_option("--rho", a.rho, "Sparsity level (required for structured)");
  gen->add_option("--seed", a.seed)->capture_default_str();
  gen->add_option("--out", a.out, "Output file (default stdout)");
  tol_opt(gen);

  auto* bounds = app.add_subcommand("bounds", "Tabulate oracle and relaxation bounds");
  bounds->add_option("--instance", a.instance)->required();
  bounds->add_option("--rho", a.rho, "List such as 1,2,5 or 1-4 (default: the file's rho, else 1..n)");
  bounds->add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  bounds->add_option("--out", a.out);
  bounds->add_option("--oracle-cap", a.oracle_cap)->capture_default_str();
  tol_opt(bounds);

  auto* rank1 = app.add_subcommand("check-rank-one", "Decide whether (x, xx') lifts into R3(rho)");
  rank1->add_option("--x", a.x, "Point, comma separated or a JSON array");
  rank1->add_option("--instance", a.instance, "Use the exact rho-sparse minimizer of this instance");
  rank1->add_option("--rho", a.rho)->required();
  rank1->add_option("--out", a.out, "Witness JSON for members");
  rank1->add_option("--oracle-cap", a.oracle_cap)->capture_default_str();
  tol_opt(rank1);

  auto* wit = app.add_subcommand("witness", "Build a lifted witness and check it");
  wit->add_option("--x", a.x)->required();
  wit->add_option("--rho", a.rho)->required();
  wit->add_option("--kind", a.kind, "r1_rho1, r2, binary_cover, general or lift_step")->required();
  wit->add_option("--out", a.out);
  tol_opt(wit);

  auto* ver = app.add_subcommand("verify-paper", "Run the seeded property suites");
  ver->add_option("suite,--suite", a.suite, "all, rlt, shor, sdprlt or rankone")->capture_default_str();
  ver->add_option("--seed", a.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (*gen) return cmd_gen(a);
    if (*bounds) return cmd_bounds(a);
    if (*rank1) return cmd_check_rank_one(a);
    if (*wit) return cmd_witness(a);
    if (*ver) return cmd_verify(a);
  } catch (const sstqp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}
