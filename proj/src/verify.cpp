#include "sstqp/verify.hpp"

#include "sstqp/closedform.hpp"
#include "sstqp/generate.hpp"
#include "sstqp/lift.hpp"
#include "sstqp/oracle.hpp"
#include "sstqp/relax.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace sstqp {

namespace {

constexpr std::size_t kMaxFailuresKept = 5;

std::string describe(const char* what, int n, int rho, double got, double want) {
  std::ostringstream os;
  os.precision(12);
  os << what << " n=" << n << " rho=" << rho << ": got " << got << ", expected " << want;
  return os.str();
}

SymMatrix non_psd_instance(Rng& rng, int n) {
  for (;;) {
    SymMatrix q(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) q.set(i, j, rng.uniform01());
    }
    if (min_eigenvalue(q) < -1e-3) return q;
  }
}

template <class F>
SuiteReport timed(const std::string& name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport r;
  r.suite = name;
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

void SuiteCheck::record(bool ok, const std::string& detail) {
  if (ok) {
    ++passed;
    return;
  }
  ++failed;
  if (failures.size() < kMaxFailuresKept) failures.push_back(detail);
}

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.failed == 0; });
}

std::string SuiteReport::summary() const {
  std::ostringstream os;
  os << "[" << suite << "] " << (ok() ? "PASS" : "FAIL") << " (" << seconds << " s)\n";
  for (const auto& c : checks) {
    os << "  " << (c.failed ? "FAIL " : "ok   ") << c.name << ": " << c.passed << " passed";
    if (c.failed) os << ", " << c.failed << " failed";
    if (c.skipped) os << ", " << c.skipped << " skipped";
    os << '\n';
    for (const auto& f : c.failures) os << "       " << f << '\n';
  }
  return os.str();
}

SuiteReport verify_rlt(std::uint64_t seed, int instances) {
  return timed("rlt", [&](SuiteReport& rep) {
    SuiteCheck lp{"RLT lifting value equals min diagonal (rho=1) / min entry (rho>=2)"};
    SuiteCheck exact{"RLT exactness predicate matches oracle comparison"};
    for (int k = 0; k < instances; ++k) {
      const int n = 3 + k % 6;
      const auto dist = k % 2 ? Distribution::kGaussian : Distribution::kUniform;
      const SymMatrix Q = generate_instance(n, dist, std::nullopt, seed * 1000 + k).instance.Q;
      const auto chain = bound_chain(Q);
      for (int rho = 1; rho <= n; ++rho) {
        const SolveResult r = solve(build_r1_rho(Q, rho));
        const double want = ell_r1_rho(Q, rho);
        lp.record(r.optimal() && std::fabs(*r.value - want) <= 1e-7,
                  describe("R1(rho)", n, rho, r.value.value_or(NAN), want));
        const bool oracle_says = std::fabs(want - chain[rho - 1]) <= 1e-6;
        exact.record(oracle_says == rlt_exact(Q, rho),
                     describe("rlt_exact", n, rho, rlt_exact(Q, rho), oracle_says));
      }
    }
    rep.checks = {lp, exact};
  });
}

SuiteReport verify_shor(std::uint64_t seed, int psd_instances, int non_psd) {
  return timed("shor", [&](SuiteReport& rep) {
    SuiteCheck indep{"Shor value independent of rho and equal to the unlifted Shor value"};
    SuiteCheck exact{"Shor exactness predicate matches oracle comparison"};
    SuiteCheck unb{"Shor relaxation unbounded for non-PSD Q"};
    Rng rng(seed);
    for (int k = 0; k < psd_instances; ++k) {
      const int n = 2 + k % 5;
      const SymMatrix Q = random_psd(rng, n);
      const SolveResult base = solve(build_r2(Q));
      if (!base.optimal()) {
        indep.record(false, describe("R2 status", n, 0, NAN, 0));
        continue;
      }
      const double ell = solve_stqp_exact(Q).value;
      const auto chain = bound_chain(Q);
      for (int rho = 1; rho <= n; ++rho) {
        const SolveResult r = solve(build_r2_rho(Q, rho));
        indep.record(r.optimal() && std::fabs(*r.value - *base.value) <= 1e-6,
                     describe("R2(rho) vs R2", n, rho, r.value.value_or(NAN), *base.value));
        if (r.optimal()) {
          const bool oracle_says = std::fabs(*r.value - chain[rho - 1]) <= 1e-6;
          const bool pred = shor_exact(Q, ell, chain[rho - 1], {1e-6, 1e-7, 1e-7, 1e-9});
          exact.record(pred == oracle_says, describe("shor_exact", n, rho, pred, oracle_says));
        }
      }
    }
    for (int k = 0; k < non_psd; ++k) {
      const int n = 2 + k % 5;
      const SymMatrix Q = non_psd_instance(rng, n);
      const SolveResult r = solve(build_r2(Q));
      unb.record(r.status == SolveStatus::kUnbounded,
                 "n=" + std::to_string(n) + " status " + std::string(to_string(r.status)));
    }
    rep.checks = {indep, exact, unb};
  });
}

SuiteReport verify_sdprlt(std::uint64_t seed, int instances, int rho1_instances) {
  return timed("sdprlt", [&](SuiteReport& rep) {
    SuiteCheck sandwich{"max(R1(rho), R2(rho)) <= R3(rho) <= l_rho"};
    SuiteCheck cap{"R3(rho) <= l_{2rho-1} for 2 <= rho <= floor((n+1)/2)"};
    SuiteCheck same{"R3(1) equals R1(1)"};
    Rng rng(seed);
    for (int k = 0; k < instances; ++k) {
      const int n = 2 + k % 5;
      const SymMatrix Q = random_psd(rng, n);
      const auto chain = bound_chain(Q);
      for (int rho = 1; rho <= n; ++rho) {
        const SolveResult r1 = solve(build_r1_rho(Q, rho));
        const SolveResult r2 = solve(build_r2_rho(Q, rho));
        const SolveResult r3 = solve(build_r3_rho(Q, rho));
        if (!(r1.optimal() && r2.optimal() && r3.optimal())) {
          sandwich.record(false, describe("solver status", n, rho, NAN, 0));
          continue;
        }
        const double lo = std::max(*r1.value, *r2.value);
        const double l = chain[rho - 1];
        sandwich.record(lo - 1e-6 <= *r3.value && *r3.value <= l + 1e-6,
                        describe("R3(rho) within [max(R1,R2), l_rho]", n, rho, *r3.value, l));
        if (rho >= 2 && rho <= (n + 1) / 2) {
          const double c = chain[2 * rho - 2];
          cap.record(*r3.value <= c + 1e-6, describe("R3(rho) <= l_{2rho-1}", n, rho, *r3.value, c));
        }
      }
    }
    for (int k = 0; k < rho1_instances; ++k) {
      const int n = 2 + k % 5;
      const SymMatrix Q = generate_instance(n, Distribution::kUniform, std::nullopt,
                                            seed * 7919 + k).instance.Q;
      const SolveResult a = solve(build_r3_rho(Q, 1));
      const SolveResult b = solve(build_r1_rho(Q, 1));
      same.record(a.optimal() && b.optimal() && std::fabs(*a.value - *b.value) <= 1e-6,
                  describe("R3(1) vs R1(1)", n, 1, a.value.value_or(NAN), b.value.value_or(NAN)));
    }
    rep.checks = {sandwich, cap, same};
  });
}

SuiteReport verify_rankone(std::uint64_t seed, int points) {
  return timed("rankone", [&](SuiteReport& rep) {
    SuiteCheck mono{"membership at rho implies membership at rho+1"};
    SuiteCheck small{"rho=1 iff nu=1, rho=2 iff nu<=3"};
    SuiteCheck uniform{"uniform point on nu coordinates lifts for rho>=3"};
    SuiteCheck witnesses{"member verdicts carry checker-feasible witnesses"};
    Rng rng(seed);
    for (int k = 0; k < points; ++k) {
      const int n = 6 + k % 3;
      const int nu = 1 + rng.index(n);
      const Vector x = random_simplex_point(rng, n, nu);
      std::vector<Membership> verdicts;
      for (int rho = 1; rho <= n; ++rho) {
        const MembershipVerdict v = rank_one_membership(x, rho);
        verdicts.push_back(v.status);
        if (v.status == Membership::kMember) {
          witnesses.record(v.witness && check_r3rho_feasible(*v.witness, rho).feasible,
                           "n=" + std::to_string(n) + " rho=" + std::to_string(rho));
        }
        if (rho <= 2) {
          const bool expect = rho == 1 ? nu == 1 : nu <= 3;
          small.record(v.status == (expect ? Membership::kMember : Membership::kNonMember),
                       "n=" + std::to_string(n) + " nu=" + std::to_string(nu) + " rho=" +
                           std::to_string(rho) + ": " + v.reason);
        }
      }
      for (int rho = 1; rho < n; ++rho) {
        if (verdicts[rho - 1] != Membership::kMember) continue;
        if (verdicts[rho] == Membership::kUnknown) {
          ++mono.skipped;
          continue;
        }
        mono.record(verdicts[rho] == Membership::kMember,
                    "n=" + std::to_string(n) + " nu=" + std::to_string(nu) + " rho=" +
                        std::to_string(rho));
      }
    }
    for (int n : {6, 8}) {
      for (int rho = 3; rho < n; ++rho) {
        for (int nu = rho + 1; nu <= n; ++nu) {
          Vector x = Vector::Zero(n);
          x.head(nu).setConstant(1.0 / nu);
          const MembershipVerdict v = rank_one_membership(x, rho);
          uniform.record(v.status == Membership::kMember,
                         "n=" + std::to_string(n) + " nu=" + std::to_string(nu) + " rho=" +
                             std::to_string(rho) + ": " + v.reason);
        }
      }
    }
    rep.checks = {mono, small, uniform, witnesses};
  });
}

std::vector<SuiteReport> run_verify_suite(const std::string& name, std::uint64_t seed) {
  const bool all = name == "all";
  if (!all && name != "rlt" && name != "shor" && name != "sdprlt" && name != "rankone") {
    throw InvalidArgument("unknown suite '" + name + "' (all, rlt, shor, sdprlt, rankone)");
  }
  std::vector<SuiteReport> out;
  if (all || name == "rlt") out.push_back(verify_rlt(seed + 1));
  if (all || name == "shor") out.push_back(verify_shor(seed + 2));
  if (all || name == "sdprlt") out.push_back(verify_sdprlt(seed + 3));
  if (all || name == "rankone") out.push_back(verify_rankone(seed + 4));
  return out;
}

}  // namespace sstqp
