#include "sstqp/lift.hpp"

#include "sstqp/closedform.hpp"
#include "sstqp/relax.hpp"

#include <cmath>

namespace sstqp {

namespace {

void require_simplex(const Vector& x, const ToleranceConfig& tol, const char* who) {
  if (!in_simplex(x, tol)) throw DomainError(std::string(who) + ": x is not in the simplex");
}

void require_rho(int n, int rho, const char* who) {
  if (rho < 1 || rho > n) throw DomainError(std::string(who) + ": rho must lie in [1, n]");
}

}  // namespace

ExtendedLiftedPoint lift_rank_one(const Vector& x, const Vector& u) {
  if (x.size() != u.size()) throw DimensionMismatch("lift_rank_one: x and u differ in size");
  ExtendedLiftedPoint p;
  p.x = x;
  p.u = u;
  p.X = SymMatrix::outer(x);
  p.U = SymMatrix::outer(u);
  p.R = x * u.transpose();
  return p;
}

ExtendedLiftedPoint witness_r1_rho1(const Vector& x, const ToleranceConfig& tol) {
  require_simplex(x, tol, "witness_r1_rho1");
  const SymMatrix d = SymMatrix::diag(x);
  return {x, x, d, d, d.dense()};
}

ExtendedLiftedPoint witness_r2(const Vector& x, const SymMatrix& M, int rho,
                               const ToleranceConfig& tol) {
  require_simplex(x, tol, "witness_r2");
  const int n = static_cast<int>(x.size());
  if (n < 2) throw DomainError("witness_r2: requires n >= 2");
  require_rho(n, rho, "witness_r2");
  if (M.n() != n) throw DimensionMismatch("witness_r2: M has the wrong order");
  if (min_eigenvalue(M) < -tol.psd_tol) throw DomainError("witness_r2: M is not PSD");
  const Vector u = x + (static_cast<double>(rho - 1) / (n - 1)) * (Vector::Ones(n) - x);
  ExtendedLiftedPoint p;
  p.x = x;
  p.u = u;
  p.X = SymMatrix::outer(x) + M;
  p.R = x * u.transpose();
  p.U = SymMatrix::outer(u) + SymMatrix::diag(u - u.cwiseProduct(u));
  return p;
}

ExtendedLiftedPoint witness_binary_cover(const Vector& x, const SymMatrix& X, int rho,
                                         const ToleranceConfig& tol) {
  require_simplex(x, tol, "witness_binary_cover");
  const int n = static_cast<int>(x.size());
  require_rho(n, rho, "witness_binary_cover");
  if (X.n() != n) throw DimensionMismatch("witness_binary_cover: X has the wrong order");
  const Support s = support_of(x, tol);
  if (s.nu > rho) throw DomainError("witness_binary_cover: ||x||_0 exceeds rho");
  Vector u = Vector::Zero(n);
  for (int i : s.indices) u[i] = 1.0;
  int missing = rho - s.nu;
  for (int i = 0; i < n && missing > 0; ++i) {
    if (u[i] == 0.0) {
      u[i] = 1.0;
      --missing;
    }
  }
  ExtendedLiftedPoint p;
  p.x = x;
  p.u = u;
  p.X = X;
  p.R = x * u.transpose();
  p.U = SymMatrix::outer(u);
  return p;
}

GeneralConstructParams general_construct_params(const Vector& x, int rho,
                                                const ToleranceConfig& tol) {
  require_simplex(x, tol, "general construction");
  const Support s = support_of(x, tol);
  const int nu = s.nu;
  if (nu <= rho || nu < 3 || rho < 2) {
    throw DomainError("general construction: requires ||x||_0 >= rho + 1 >= 3");
  }
  const double r = rho;
  const double v = nu;
  GeneralConstructParams g;
  g.nu = nu;
  g.lambda = (r - 1.0) / (v - 1.0);
  g.alpha = (v - r) * (v - r - 1.0) / ((v - 1.0) * (v - 2.0));
  g.beta = (v - r) * (r - 1.0) / (v - 2.0);
  g.a = Vector::Zero(x.size());
  for (int i : s.indices) g.a[i] = (1.0 - x[i]) / (v - 1.0);
  return g;
}

ExtendedLiftedPoint witness_general_construct(const Vector& x, int rho,
                                              const ToleranceConfig& tol) {
  const GeneralConstructParams g = general_construct_params(x, rho, tol);
  const Support s = support_of(x, tol);
  const auto n = x.size();
  Vector u = Vector::Zero(n);
  for (int i : s.indices) u[i] = x[i] + g.lambda * (1.0 - x[i]);
  ExtendedLiftedPoint p;
  p.x = x;
  p.u = u;
  p.X = SymMatrix::outer(x);
  p.R = x * u.transpose();
  p.U = SymMatrix::outer(u) +
        (SymMatrix::diag(x) - SymMatrix::outer(x)) * g.alpha +
        (SymMatrix::diag(g.a) - SymMatrix::outer(g.a)) * g.beta;
  return p;
}

AffineFamilyCoefficients affine_family_coefficients(int rho, int nu) {
  if (rho < 2 || nu < rho + 1 || nu < 3) {
    throw DomainError("affine family: requires nu >= rho + 1 >= 3");
  }
  const double r = rho;
  const double v = nu;
  AffineFamilyCoefficients f;
  f.tau = (v - r) / (v - 1.0);
  f.b = (r - f.tau) / v;
  f.c = (r - 1.0) * (v - r) / ((v - 1.0) * (v - 2.0));
  f.d = (r - 1.0) * (r - 2.0) / ((v - 1.0) * (v - 2.0));
  return f;
}

ExtendedLiftedPoint lift_sparsity_step(const ExtendedLiftedPoint& p, int rho,
                                       const ToleranceConfig& tol) {
  p.check_dimensions();
  const int n = p.n();
  if (rho < 2 || rho >= n) throw DomainError("lift_sparsity_step: requires 2 <= rho < n");
  const int nu = support_of(p.x, tol).nu;
  if (nu <= 2 * rho + 1) throw DomainError("lift_sparsity_step: requires ||x||_0 > 2 rho + 1");
  const Matrix xx = p.x * p.x.transpose();
  if ((p.X.dense() - xx).cwiseAbs().maxCoeff() > tol.eq_tol) {
    throw DomainError("lift_sparsity_step: X is not xx'");
  }
  const FeasibilityReport rep = check_r3rho_feasible(p, rho, tol);
  if (!rep.feasible) {
    throw DomainError("lift_sparsity_step: input is not feasible at rho: " + rep.summary());
  }

  const Support us = support_of(p.u, tol);
  const double mu = us.nu - rho;
  Vector s = Vector::Zero(n);
  for (int i : us.indices) s[i] = (1.0 - p.u[i]) / mu;
  const Vector up = p.u + s;

  ExtendedLiftedPoint q;
  q.x = p.x;
  q.u = up;
  q.X = p.X;
  q.R = p.x * up.transpose();
  q.U = SymMatrix::outer(up) + (p.U - SymMatrix::outer(p.u)) * ((mu - 2.0) / mu) +
        SymMatrix::diag(s) - SymMatrix::outer(s);
  return q;
}

Vector u_lower_bound_residuals(const ExtendedLiftedPoint& p, int rho) {
  p.check_dimensions();
  const double r = rho;
  Vector out(p.n());
  for (int i = 0; i < p.n(); ++i) {
    out[i] = (r - 2.0) * p.u[i] + 2.0 * p.R(i, i) + (1.0 - r) * p.x[i] - p.X(i, i);
  }
  return out;
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::kMember:
      return "member";
    case Membership::kNonMember:
      return "non_member";
    case Membership::kUnknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

MembershipVerdict probe(const Vector& x, int rho, const MembershipOptions& opts,
                        const std::string& prefix) {
  const ConicSolver& solver = opts.solver ? *opts.solver : default_solver();
  const ConicModel model = build_rank_one_probe(x, rho);
  const SolveResult res = solver.solve(model, opts.solver_options);
  MembershipVerdict v;
  const std::string tag = prefix + "SDP probe: " + std::string(to_string(res.status));
  switch (res.status) {
    case SolveStatus::kOptimal: {
      ExtendedLiftedPoint w = probe_witness(x, model, *res.point);
      const FeasibilityReport rep = check_r3rho_feasible(w, rho, opts.tol);
      if (rep.feasible) {
        v.status = Membership::kMember;
        v.witness = std::move(w);
        v.reason = tag;
      } else {
        v.reason = tag + ", extracted witness fails the checker: " + rep.summary();
      }
      break;
    }
    case SolveStatus::kInfeasible:
      v.status = Membership::kNonMember;
      v.reason = tag + " (" + res.stats.message + ")";
      break;
    default:
      v.reason = tag + " (" + res.stats.message + ")";
      break;
  }
  return v;
}

std::optional<MembershipVerdict> accept_if_feasible(ExtendedLiftedPoint w, int rho,
                                                    const ToleranceConfig& tol,
                                                    std::string reason) {
  if (!check_r3rho_feasible(w, rho, tol).feasible) return std::nullopt;
  MembershipVerdict v;
  v.status = Membership::kMember;
  v.witness = std::move(w);
  v.reason = std::move(reason);
  return v;
}

}  // namespace

MembershipVerdict rank_one_membership(const Vector& x, int rho, const MembershipOptions& opts) {
  const ToleranceConfig& tol = opts.tol;
  require_simplex(x, tol, "rank_one_membership");
  const int n = static_cast<int>(x.size());
  require_rho(n, rho, "rank_one_membership");
  if (opts.probe_only) return probe(x, rho, opts, "");

  const int nu = support_of(x, tol).nu;
  const SymMatrix xx = SymMatrix::outer(x);
  std::string fallback;

  auto cover = [&](const char* why) {
    return accept_if_feasible(witness_binary_cover(x, xx, rho, tol), rho, tol, why);
  };
  auto general = [&](const char* why) {
    return accept_if_feasible(witness_general_construct(x, rho, tol), rho, tol, why);
  };

  if (rho == 1) {
    if (nu == 1) {
      if (auto w = cover("rho = 1: x is a vertex, binary cover")) return *w;
      fallback = "binary cover failed the checker; ";
    } else {
      MembershipVerdict v;
      v.status = Membership::kNonMember;
      v.reason = "rho = 1: only vertices lift (||x||_0 = " + std::to_string(nu) + ")";
      return v;
    }
  } else if (rho == 2) {
    if (nu >= 4) {
      MembershipVerdict v;
      v.status = Membership::kNonMember;
      v.reason = "rho = 2: u_i >= (1 + x_i)/2 on the support forces ||x||_0 <= 3";
      return v;
    }
    if (nu <= 2) {
      if (auto w = cover("||x||_0 <= rho: binary cover")) return *w;
    } else if (auto w = general("rho = 2, ||x||_0 = 3: general construction")) {
      return *w;
    }
    fallback = "construction failed the checker; ";
  } else if (nu <= rho) {
    if (auto w = cover("||x||_0 <= rho: binary cover")) return *w;
    fallback = "binary cover failed the checker; ";
  } else {
    const char* why = nullptr;
    if (nu <= 2 * rho - 1) {
      why = "general construction: ||x||_0 <= 2 rho - 1";
    } else if (rho > (n + 1) / 2) {
      why = "general construction: rho > floor((n+1)/2)";
    } else if (rho <= n / 2 && in_H_rho(x, rho, tol)) {
      why = "general construction: x in H_rho";
    } else if (rho <= n / 2 && in_G_rho(x, rho, tol)) {
      why = "general construction: x in G_rho";
    }
    if (why) {
      if (auto w = general(why)) return *w;
      fallback = "general construction failed the checker; ";
    }
  }
  return probe(x, rho, opts, fallback);
}

}  // namespace sstqp
