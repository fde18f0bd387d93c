#include "helpers.hpp"

#include "sstqp/lift.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace sstqp;
using namespace testing;

TEST_SUITE("core") {

TEST_CASE("support_of") {
  const Support s = support_of(vec({1, 0, 0}));
  CHECK(s.nu == 1);
  CHECK(s.indices == std::vector<int>{0});
  CHECK(support_of(vec({0.5, 0.5, 1e-12})).nu == 2);
  CHECK(support_of(six_point_x()).nu == 6);
}

TEST_CASE("support size is permutation invariant") {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = uni(g) < 0.4 ? 0.0 : uni(g);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g);
    Vector y(n);
    for (int i = 0; i < n; ++i) y[i] = x[perm[i]];
    CHECK(support_of(x).nu == support_of(y).nu);
  }
}

TEST_CASE("in_F_rho") {
  CHECK(in_F_rho(unit(3, 0), 1));
  CHECK_FALSE(in_F_rho(vec({0.5, 0.5, 0}), 1));
  CHECK(in_F_rho(vec({1.0 / 3, 1.0 / 3, 1.0 / 3}), 3));
  CHECK_FALSE(in_F_rho(vec({0.5, 0.6}), 2));
  CHECK_FALSE(in_F_rho(vec({1.2, -0.2}), 2));
}

TEST_CASE("SymMatrix is exactly symmetric and finite") {
  Matrix m(2, 2);
  m << 1, 2, 4, 1;
  const SymMatrix s(m);
  CHECK(s(0, 1) == s(1, 0));
  CHECK(s(0, 1) == doctest::Approx(3.0));
  SymMatrix t(3);
  t.set(0, 2, 5.0);
  CHECK(t(2, 0) == 5.0);
  CHECK_THROWS_AS(t.set(1, 1, std::nan("")), NonFinite);
}

TEST_CASE("instance validation") {
  SparseStqpInstance inst{SymMatrix::identity(3), 4, ""};
  CHECK_THROWS_AS(inst.validate(), InvalidArgument);
  inst.rho = 2;
  CHECK_NOTHROW(inst.validate());
}

TEST_CASE("check_r1rho_feasible") {
  CHECK(check_r1rho_feasible(witness_r1_rho1(vec({0.3, 0.7})), 1).feasible);
  const ExtendedLiftedPoint p = lift_rank_one(unit(3, 0), unit(3, 0) + unit(3, 1));
  CHECK(check_r1rho_feasible(p, 2).feasible);

  // break U e = rho u while keeping everything else intact
  ExtendedLiftedPoint q = p;
  q.U = SymMatrix::diag(q.u);
  const FeasibilityReport r = check_r1rho_feasible(q, 2);
  CHECK_FALSE(r.feasible);
  CHECK(r.violates("Ue=rho*u"));
}

TEST_CASE("check_r2rho_feasible") {
  const Vector x = vec({0.5, 0.5});
  CHECK(check_r2rho_feasible(witness_r2(x, SymMatrix(2), 1), 1).feasible);

  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    const int rho = 1 + trial % n;
    Vector z(n);
    for (int i = 0; i < n; ++i) z[i] = uni(g);
    const Vector xs = z / z.sum();
    const Vector u = xs + (static_cast<double>(rho - 1) / (n - 1)) * (Vector::Ones(n) - xs);
    ExtendedLiftedPoint p = lift_rank_one(xs, u);
    p.U = SymMatrix(Matrix(u * u.transpose())) + SymMatrix::diag(u - u.cwiseProduct(u));
    CHECK(check_r2rho_feasible(p, rho).feasible);
  }

  ExtendedLiftedPoint bad = lift_rank_one(x, x);
  bad.U = SymMatrix(Matrix(x * x.transpose())) + SymMatrix::diag(x - x.cwiseProduct(x));
  bad.X = bad.X - SymMatrix::identity(2) * 1e-3;
  const FeasibilityReport r = check_r2rho_feasible(bad, 1);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.min_psd_eigenvalue);
  CHECK(*r.min_psd_eigenvalue < -ToleranceConfig{}.psd_tol);
}

TEST_CASE("check_r3rho_feasible on the rounded 6-point lift") {
  ToleranceConfig tol;
  tol.eq_tol = 5e-4;
  tol.ineq_tol = 5e-4;
  tol.psd_tol = 1e-3;
  const FeasibilityReport r = check_r3rho_feasible(six_point_lift(), 3, tol);
  CAPTURE(r.summary());
  CHECK(r.feasible);
}

TEST_CASE("check_r3rho_feasible binary cover and the nu=4 obstruction") {
  const Vector x = vec({0.5, 0.5, 0});
  CHECK(check_r3rho_feasible(lift_rank_one(x, vec({1, 1, 0})), 2).feasible);

  // uniform on 4 coordinates cannot lift at rho=2, whatever u is
  const Vector x4 = uniform_on(4, 4);
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Vector u(4);
    for (int i = 0; i < 4; ++i) u[i] = uni(g);
    u *= 2.0 / u.sum();
    CHECK_FALSE(check_r3rho_feasible(lift_rank_one(x4, u), 2).feasible);
  }
  CHECK_FALSE(check_r3rho_feasible(lift_rank_one(x4, Vector::Constant(4, 0.5)), 2).feasible);
}

TEST_CASE("min_eigenvalue") {
  CHECK(min_eigenvalue(SymMatrix::identity(3)) == doctest::Approx(1.0));
  const Vector a = vec({0.5, 0.5});
  const SymMatrix d = SymMatrix::diag(a) - SymMatrix::outer(a);
  CHECK(std::fabs(min_eigenvalue(d)) < 1e-14);
  CHECK(min_eigenvalue(sym({{1, 2}, {2, 1}})) == doctest::Approx(-1.0));
}

TEST_CASE("Diag(a) - aa' is PSD when a >= 0 and e'a <= 1") {
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 9;
    Vector a(n);
    for (int i = 0; i < n; ++i) a[i] = uni(g);
    a *= uni(g) / a.sum();
    CHECK(min_eigenvalue(SymMatrix::diag(a) - SymMatrix::outer(a)) >= -1e-7);
  }
}

TEST_CASE("R3 feasibility implies R1 and R2 feasibility") {
  std::mt19937_64 g(23);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int r3_feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 4;
    const int rho = 1 + trial % n;
    const int nu = 1 + static_cast<int>(uni(g) * n) % n;
    Vector x = Vector::Zero(n);
    for (int i = 0; i < nu; ++i) x[i] = 0.1 + uni(g);
    x /= x.sum();
    ExtendedLiftedPoint p;
    if (nu <= rho) {
      Vector u = Vector::Zero(n);
      u.head(rho).setOnes();
      p = lift_rank_one(x, u);
    } else {
      const MembershipVerdict v = rank_one_membership(x, rho);
      if (!v.witness) continue;
      p = *v.witness;
    }
    if (!check_r3rho_feasible(p, rho).feasible) continue;
    ++r3_feasible;
    CHECK(check_r1rho_feasible(p, rho).feasible);
    CHECK(check_r2rho_feasible(p, rho).feasible);
  }
  CHECK(r3_feasible > 50);
}

TEST_CASE("dimension mismatch is reported") {
  ExtendedLiftedPoint p = lift_rank_one(vec({0.5, 0.5}), vec({1, 1}));
  p.u = vec({1, 1, 0});
  CHECK_THROWS_AS(check_r3rho_feasible(p, 2), DimensionMismatch);
}

TEST_CASE("tolerances must be positive") {
  ToleranceConfig t;
  t.eq_tol = 0.0;
  CHECK_THROWS(t.validate());
}

}
