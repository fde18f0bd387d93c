#pragma once

// Closed-form bounds, exactness tests and the G_rho / H_rho sufficient sets.

#include "sstqp/core.hpp"

namespace sstqp {

/// min_k Q_kk, the value of the 1-sparse problem.
double ell_1(const SymMatrix& Q);
/// Value of the 2-sparse problem: best edge minimizer, or ell_1 if no edge
/// has an interior minimizer.
double ell_2(const SymMatrix& Q);
/// min_{i<=j} Q_ij
double ell_r1(const SymMatrix& Q);
double ell_r1_rho(const SymMatrix& Q, int rho);

bool rlt_exact(const SymMatrix& Q, int rho, const ToleranceConfig& tol = {});
bool min_diag_condition(const SymMatrix& Q, const ToleranceConfig& tol = {});

/// Shor lifting is exact iff Q is PSD and the sparse optimum equals the
/// unrestricted one. The two optimal values are supplied by the caller.
bool shor_exact(const SymMatrix& Q, double ell, double ell_rho,
                const ToleranceConfig& tol = {});
bool is_psd(const SymMatrix& Q, const ToleranceConfig& tol = {});

struct GrhoParams {
  int rho = 0;
  int nu = 0;
  double tau = 0.0;
  double delta = 0.0;
};

// both require rho >= 3 and nu >= 2 rho
double tau(int rho, int nu);
double delta(int rho, int nu);
GrhoParams grho_params(int rho, int nu);

/// max over i<j with x_i x_j > 0 of x_i x_j / (1 - x_i - x_j); 0 when fewer
/// than two positive entries.
double max_pair_ratio(const Vector& x, const ToleranceConfig& tol = {});

/// Right-hand side of the G_rho test, (rho-1)(rho-2)/((nu-2)(nu-2rho+1)).
/// Defined for nu > 2 rho - 1.
double g_rho_bound(int rho, int nu);

bool in_G_rho(const Vector& x, int rho, const ToleranceConfig& tol = {});
bool in_H_rho(const Vector& x, int rho, const ToleranceConfig& tol = {});

/// Q = P + N + lambda E with x a minimizer of value lambda.
struct DecompositionCertificate {
  Vector x;
  SymMatrix P;
  SymMatrix N;
  double lambda = 0.0;

  /// Throws CertificateInvalid naming the first failed condition.
  void validate(const ToleranceConfig& tol = {}) const;
};

struct ExactInstance {
  SymMatrix Q;
  double known_value = 0.0;
};

ExactInstance build_exact_instance(const DecompositionCertificate& cert,
                                   const ToleranceConfig& tol = {});

}  // namespace sstqp
