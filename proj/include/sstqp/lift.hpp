#pragma once

// Explicit lifted points (x, u, X, U, R) and the rank-one membership
// decision for the projection of the SDP-RLT set.

#include "sstqp/conic.hpp"
#include "sstqp/core.hpp"

#include <optional>
#include <string>

namespace sstqp {

ExtendedLiftedPoint lift_rank_one(const Vector& x, const Vector& u);

/// (x, x, Diag x, Diag x, Diag x)
ExtendedLiftedPoint witness_r1_rho1(const Vector& x, const ToleranceConfig& tol = {});

/// u = x + ((rho-1)/(n-1))(e - x), X = xx' + M, R = xu', U = uu' + Diag(u - u.u)
ExtendedLiftedPoint witness_r2(const Vector& x, const SymMatrix& M, int rho,
                               const ToleranceConfig& tol = {});

/// Binary u covering supp(x), padded with the smallest free indices.
ExtendedLiftedPoint witness_binary_cover(const Vector& x, const SymMatrix& X, int rho,
                                         const ToleranceConfig& tol = {});

struct GeneralConstructParams {
  int nu = 0;
  double lambda = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  Vector a;
};

GeneralConstructParams general_construct_params(const Vector& x, int rho,
                                                const ToleranceConfig& tol = {});

/// u_i = x_i + lambda (1 - x_i) on the support,
/// U = uu' + alpha (Diag x - xx') + beta (Diag a - aa'), X = xx', R = xu'.
ExtendedLiftedPoint witness_general_construct(const Vector& x, int rho,
                                              const ToleranceConfig& tol = {});

/// Coefficients of the affine family u_i = tau x_i + b, U_ij = c x_i + c x_j + d
/// (i != j on the support) that the construction above belongs to.
struct AffineFamilyCoefficients {
  double tau = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};
AffineFamilyCoefficients affine_family_coefficients(int rho, int nu);

/// Maps a rank-one point feasible at rho to one feasible at rho + 1.
/// Requires rho >= 2 and ||x||_0 > 2 rho + 1.
ExtendedLiftedPoint lift_sparsity_step(const ExtendedLiftedPoint& p, int rho,
                                       const ToleranceConfig& tol = {});

/// (rho-2) u_i + 2 R_ii + (1-rho) x_i - X_ii; a negative entry certifies
/// infeasibility.
Vector u_lower_bound_residuals(const ExtendedLiftedPoint& p, int rho);

enum class Membership { kMember, kNonMember, kUnknown };

std::string_view to_string(Membership m);

struct MembershipVerdict {
  Membership status = Membership::kUnknown;
  std::optional<ExtendedLiftedPoint> witness;
  std::string reason;
};

struct MembershipOptions {
  ToleranceConfig tol;
  SolverOptions solver_options;
  const ConicSolver* solver = nullptr;  // default_solver() when null
  // skip the rule-based shortcuts and go straight to the probe
  bool probe_only = false;
};

MembershipVerdict rank_one_membership(const Vector& x, int rho,
                                      const MembershipOptions& opts = {});

}  // namespace sstqp
