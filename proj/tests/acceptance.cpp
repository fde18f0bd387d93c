// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "helpers.hpp"

#include "sstqp/closedform.hpp"
#include "sstqp/generate.hpp"
#include "sstqp/lift.hpp"
#include "sstqp/oracle.hpp"
#include "sstqp/relax.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace sstqp;
using testing::six_point_lift;
using testing::six_point_x;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first few mismatches and a pass count.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 3) {
      if (!first_.empty()) first_ += "; ";
      first_ += what;
    }
  }
  Outcome outcome(const std::string& extra = "") const {
    std::ostringstream os;
    os << (total_ - failed_) << "/" << total_ << " checks";
    if (!extra.empty()) os << ", " << extra;
    if (failed_) os << "; first failures: " << first_;
    return {failed_ == 0 && total_ > 0, os.str()};
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::string first_;
};

std::string where(int n, int rho, double got, double want) {
  std::ostringstream os;
  os.precision(10);
  os << "n=" << n << " rho=" << rho << " got " << got << " want " << want;
  return os.str();
}

std::optional<double> value(const ConicModel& m) {
  const SolveResult r = solve(m);
  if (!r.optimal()) return std::nullopt;
  return r.value;
}

SymMatrix psd_instance(std::uint64_t seed, int n) {
  Rng rng(seed);
  return random_psd(rng, n);
}

SymMatrix non_psd_instance(std::uint64_t seed, int n) {
  for (std::uint64_t s = seed;; s += 1000003) {
    const SymMatrix q = generate_instance(n, Distribution::kGaussian, std::nullopt, s).instance.Q;
    if (min_eigenvalue(q) < -1e-3) return q;
  }
}

// 1: LP value of the RLT lifting collapses to entry minima
Outcome rlt_collapse() {
  Tally t;
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + k % 6;
    const auto dist = k % 2 ? Distribution::kGaussian : Distribution::kUniform;
    const SymMatrix Q = generate_instance(n, dist, std::nullopt, 1000 + k).instance.Q;
    const double min_entry = Q.dense().minCoeff();
    const double min_diag = Q.diagonal().minCoeff();
    for (int rho = 1; rho <= n; ++rho) {
      const auto v = value(build_r1_rho(Q, rho));
      const double want = rho == 1 ? min_diag : min_entry;
      t.check(v && std::fabs(*v - want) <= 1e-7, where(n, rho, v.value_or(NAN), want));
    }
  }
  return t.outcome();
}

// 2: Shor value is the same for every rho; unbounded without PSD
Outcome shor_independence() {
  Tally t;
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 5;
    const SymMatrix Q = psd_instance(2000 + k, n);
    const auto base = value(build_r2(Q));
    t.check(base.has_value(), where(n, 0, NAN, 0));
    if (!base) continue;
    std::vector<double> vals;
    for (int rho = 1; rho <= n; ++rho) {
      const auto v = value(build_r2_rho(Q, rho));
      t.check(v && std::fabs(*v - *base) <= 1e-6, where(n, rho, v.value_or(NAN), *base));
      if (v) vals.push_back(*v);
    }
    for (std::size_t a = 0; a < vals.size(); ++a) {
      for (std::size_t b = a + 1; b < vals.size(); ++b) {
        t.check(std::fabs(vals[a] - vals[b]) <= 1e-6, "pairwise n=" + std::to_string(n));
      }
    }
  }
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 5;
    const SolveResult r = solve(build_r2(non_psd_instance(2500 + k, n)));
    t.check(r.status == SolveStatus::kUnbounded,
            "non-PSD n=" + std::to_string(n) + " " + std::string(to_string(r.status)));
  }
  return t.outcome();
}

// 3: max(R1, R2) <= R3 <= l_rho, and R3 <= l_{2 rho - 1}
Outcome sandwich_and_cap() {
  Tally t;
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 5;
    const SymMatrix Q = psd_instance(3000 + k, n);
    const auto chain = bound_chain(Q);
    for (int rho = 1; rho <= n; ++rho) {
      const auto r1 = value(build_r1_rho(Q, rho));
      const auto r2 = value(build_r2_rho(Q, rho));
      const auto r3 = value(build_r3_rho(Q, rho));
      if (!(r1 && r2 && r3)) {
        t.check(false, "solver failure " + where(n, rho, NAN, 0));
        continue;
      }
      const double l = chain[rho - 1];
      t.check(std::max(*r1, *r2) - 1e-6 <= *r3 && *r3 <= l + 1e-6, where(n, rho, *r3, l));
      if (rho >= 2 && rho <= (n + 1) / 2) {
        t.check(*r3 <= chain[2 * rho - 2] + 1e-6, "cap " + where(n, rho, *r3, chain[2 * rho - 2]));
      }
    }
  }
  return t.outcome();
}

// 4: rounded six-point lift
Outcome rounded_six_point() {
  Tally t;
  ToleranceConfig tol;
  tol.eq_tol = 5e-4;
  tol.ineq_tol = 5e-4;
  tol.psd_tol = 1e-3;
  const FeasibilityReport r = check_r3rho_feasible(six_point_lift(), 3, tol);
  t.check(r.feasible, r.summary());
  const double ratio = max_pair_ratio(six_point_x());
  const double bound = g_rho_bound(3, 6);
  t.check(std::fabs(ratio - 0.6) <= 1e-12, "max ratio " + std::to_string(ratio));
  t.check(std::fabs(bound - 0.5) <= 1e-15, "bound " + std::to_string(bound));
  t.check(!in_G_rho(six_point_x(), 3), "point reported inside G_3");
  std::ostringstream os;
  os << "ratio " << ratio << " vs bound " << bound;
  if (r.min_psd_eigenvalue) os << ", min eig " << *r.min_psd_eigenvalue;
  return t.outcome(os.str());
}

// 5: delta table
Outcome delta_table() {
  Tally t;
  const double want[] = {0.7321, 0.5798, 0.4805};
  std::ostringstream os;
  for (int k = 0; k < 3; ++k) {
    const double d = delta(3, 6 + k);
    t.check(std::fabs(d - want[k]) <= 5e-5, where(6 + k, 3, d, want[k]));
    os << (k ? " " : "") << d;
  }
  return t.outcome(os.str());
}

// 6: rho=1 iff nu=1, rho=2 iff nu<=3, cascade and probe agree
Outcome membership_boundaries() {
  Tally t;
  Rng rng(6000);
  MembershipOptions probe;
  probe.probe_only = true;
  int cases = 0;
  int unknown = 0;
  for (int nu = 1; nu <= 6; ++nu) {
    for (int k = 0; k < 30; ++k) {
      const Vector x = random_simplex_point(rng, 6, nu);
      for (int rho = 1; rho <= 2; ++rho) {
        const bool expect = rho == 1 ? nu == 1 : nu <= 3;
        const MembershipVerdict c = rank_one_membership(x, rho);
        const MembershipVerdict p = rank_one_membership(x, rho, probe);
        ++cases;
        const std::string tag = "nu=" + std::to_string(nu) + " rho=" + std::to_string(rho);
        t.check(c.status == (expect ? Membership::kMember : Membership::kNonMember),
                "cascade " + tag + " " + std::string(to_string(c.status)));
        if (p.status == Membership::kUnknown || c.status == Membership::kUnknown) {
          ++unknown;
          continue;
        }
        t.check(p.status == c.status, "probe disagrees " + tag);
      }
    }
  }
  t.check(unknown * 10 < cases, "unknown verdicts " + std::to_string(unknown));
  return t.outcome(std::to_string(unknown) + "/" + std::to_string(cases) + " unknown");
}

// 7: constructive witnesses
Outcome constructive_witnesses() {
  Tally t;
  Rng rng(7000);
  for (int k = 0; k < 50; ++k) {
    // nu <= rho is the binary cover case, not this construction
    const int rho = 2 + k % 4;
    const int n = 2 * rho + 1;
    const int nu = rho + 1 + rng.index(rho - 1);
    const Vector x = random_simplex_point(rng, n, nu);
    const ExtendedLiftedPoint p = witness_general_construct(x, rho);
    t.check(check_r3rho_feasible(p, rho).feasible, "small support nu=" + std::to_string(nu));
  }
  int h_found = 0;
  for (int tries = 0; h_found < 50 && tries < 100000; ++tries) {
    const int rho = 3 + tries % 2;
    const int n = 2 * rho + 2 + tries % 3;
    const int nu = 2 * rho + rng.index(n - 2 * rho + 1);
    Vector x = Vector::Zero(n);
    for (int i = 0; i < nu; ++i) x[i] = 1.0 + 0.5 * rng.uniform01();
    x /= x.sum();
    if (!in_H_rho(x, rho)) continue;
    ++h_found;
    t.check(check_r3rho_feasible(witness_general_construct(x, rho), rho).feasible,
            "H_rho point nu=" + std::to_string(nu));
  }
  t.check(h_found == 50, "only " + std::to_string(h_found) + " points of H_rho sampled");
  int lifted = 0;
  for (int tries = 0; lifted < 20 && tries < 1000; ++tries) {
    const int rho = 2 + tries % 3;
    const int n = 2 * rho + 2 + tries % 2;
    const Vector x = random_simplex_point(rng, n, n);
    const MembershipVerdict v = rank_one_membership(x, rho);
    if (v.status != Membership::kMember || !v.witness) continue;
    ++lifted;
    const ExtendedLiftedPoint q = lift_sparsity_step(*v.witness, rho);
    t.check(check_r3rho_feasible(q, rho + 1).feasible, "lift step rho=" + std::to_string(rho));
  }
  t.check(lifted == 20, "only " + std::to_string(lifted) + " lift steps");
  return t.outcome();
}

// 8: oracle against grid search, chain monotonicity, planted optima
Outcome oracle_correctness() {
  Tally t;
  const double h = 0.02;
  for (int k = 0; k < 30; ++k) {
    const int n = 2 + k % 3;
    const auto dist = k % 2 ? Distribution::kGaussian : Distribution::kUniform;
    const SymMatrix Q = generate_instance(n, dist, std::nullopt, 8000 + k).instance.Q;
    const auto chain = bound_chain(Q);
    const double err = testing::grid_error_bound(Q, h);
    for (int rho = 1; rho <= n; ++rho) {
      const double grid = testing::grid_min(Q, rho, h);
      t.check(chain[rho - 1] <= grid + 1e-12 && chain[rho - 1] >= grid - err,
              "grid " + where(n, rho, chain[rho - 1], grid));
    }
    for (int r = 1; r < n; ++r) t.check(chain[r] <= chain[r - 1], "chain increases");
  }
  for (int k = 0; k < 20; ++k) {
    const int n = 3 + k % 5;
    const int rho = 1 + k % n;
    const auto g = generate_instance(n, Distribution::kStructured, rho, 8500 + k);
    const double l = solve_sparse_stqp_exact(g.instance.Q, rho).value;
    t.check(g.known_value && std::fabs(l - *g.known_value) <= 1e-6,
            "planted " + where(n, rho, l, g.known_value.value_or(NAN)));
  }
  return t.outcome();
}

// 9: exactness predicates against solved bounds and the oracle
Outcome exactness_predicates() {
  Tally t;
  // predicates decide equality at the same tolerance the criterion compares with
  ToleranceConfig tol;
  tol.eq_tol = 1e-6;
  int rlt_true = 0, shor_true = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + k % 4;
    SymMatrix Q;
    if (k % 3 == 0) {
      Q = psd_instance(9000 + k, n);
    } else {
      Q = generate_instance(n, k % 3 == 1 ? Distribution::kUniform : Distribution::kGaussian,
                            std::nullopt, 9000 + k).instance.Q;
    }
    const auto chain = bound_chain(Q);
    const double ell = chain.back();
    for (int rho = 1; rho <= n; ++rho) {
      const double l = chain[rho - 1];
      const auto r1 = value(build_r1_rho(Q, rho));
      if (!r1) {
        t.check(false, "R1 solver failure " + where(n, rho, NAN, l));
        continue;
      }
      const bool rlt_pred = rlt_exact(Q, rho, tol);
      rlt_true += rlt_pred;
      t.check(rlt_pred == (std::fabs(*r1 - l) <= 1e-6), "rlt_exact " + where(n, rho, *r1, l));

      const SolveResult r2 = solve(build_r2_rho(Q, rho));
      bool shor_cmp;
      if (r2.status == SolveStatus::kUnbounded) {
        shor_cmp = false;
      } else if (r2.optimal()) {
        shor_cmp = std::fabs(*r2.value - l) <= 1e-6;
      } else {
        t.check(false, "R2 solver failure " + where(n, rho, NAN, l));
        continue;
      }
      const bool shor_pred = shor_exact(Q, ell, l, tol);
      shor_true += shor_pred;
      t.check(shor_pred == shor_cmp, "shor_exact " + where(n, rho, r2.value.value_or(NAN), l));
    }
  }
  return t.outcome(std::to_string(rlt_true) + " rlt-exact and " + std::to_string(shor_true) +
                   " shor-exact cells");
}

// 10: R3(1) and R1(1) coincide
Outcome r3_one_equals_r1_one() {
  Tally t;
  for (int k = 0; k < 30; ++k) {
    const int n = 2 + k % 6;
    const auto dist = k % 2 ? Distribution::kGaussian : Distribution::kUniform;
    const SymMatrix Q = generate_instance(n, dist, std::nullopt, 10000 + k).instance.Q;
    const auto a = value(build_r3_rho(Q, 1));
    const auto b = value(build_r1_rho(Q, 1));
    t.check(a && b && std::fabs(*a - *b) <= 1e-6, where(n, 1, a.value_or(NAN), b.value_or(NAN)));
  }
  return t.outcome();
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "RLT lifting collapses to entry minima", 60, rlt_collapse},
      {2, "Shor lifting independent of rho; unbounded without PSD", 120, shor_independence},
      {3, "Sandwich max(R1,R2) <= R3 <= l_rho and cap R3 <= l_{2rho-1}", 180, sandwich_and_cap},
      {4, "Rounded six-point lift is R3(3)-feasible; ratio 0.6 vs 0.5", 1, rounded_six_point},
      {5, "delta(3,6..8) = 0.7321, 0.5798, 0.4805", 1, delta_table},
      {6, "Rank-one membership boundaries for rho = 1, 2 (cascade and probe)", 300,
       membership_boundaries},
      {7, "Constructive witnesses and the sparsity step pass the checker", 60,
       constructive_witnesses},
      {8, "Oracle vs grid search, monotone chain, planted optima", 120, oracle_correctness},
      {9, "Exactness predicates agree with solved bounds", 120, exactness_predicates},
      {10, "R3(1) equals R1(1)", 60, r3_one_equals_r1_one},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      o.ok = false;
      o.detail += "; over time limit " + std::to_string(c.limit_seconds) + " s";
    }
    failed += !o.ok;
    std::printf("%s %2d %s [%.2f s] %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
