#include "sstqp/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sstqp {

namespace {

bool near(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

void require_simplex(const Vector& x, const ToleranceConfig& tol, const char* who) {
  if (!in_simplex(x, tol)) throw DomainError(std::string(who) + ": x is not in the simplex");
}

}  // namespace

double ell_1(const SymMatrix& Q) { return Q.diagonal().minCoeff(); }

double ell_2(const SymMatrix& Q) {
  double best = ell_1(Q);
  for (int i = 0; i < Q.n(); ++i) {
    for (int j = i + 1; j < Q.n(); ++j) {
      const double qii = Q(i, i);
      const double qjj = Q(j, j);
      const double qij = Q(i, j);
      if (qij < std::min(qii, qjj)) {
        best = std::min(best, (qii * qjj - qij * qij) / (qii + qjj - 2.0 * qij));
      }
    }
  }
  return best;
}

double ell_r1(const SymMatrix& Q) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < Q.n(); ++i) {
    for (int j = i; j < Q.n(); ++j) m = std::min(m, Q(i, j));
  }
  return m;
}

double ell_r1_rho(const SymMatrix& Q, int rho) {
  if (rho < 1 || rho > Q.n()) throw InvalidArgument("ell_r1_rho: rho must lie in [1, n]");
  return rho == 1 ? ell_1(Q) : ell_r1(Q);
}

bool min_diag_condition(const SymMatrix& Q, const ToleranceConfig& tol) {
  return near(ell_r1(Q), ell_1(Q), tol.eq_tol);
}

bool rlt_exact(const SymMatrix& Q, int rho, const ToleranceConfig& tol) {
  if (rho < 1 || rho > Q.n()) throw InvalidArgument("rlt_exact: rho must lie in [1, n]");
  return rho == 1 || min_diag_condition(Q, tol);
}

bool is_psd(const SymMatrix& Q, const ToleranceConfig& tol) {
  return min_eigenvalue(Q) >= -tol.psd_tol * std::max(1.0, Q.dense().norm());
}

bool shor_exact(const SymMatrix& Q, double ell, double ell_rho, const ToleranceConfig& tol) {
  return is_psd(Q, tol) && near(ell, ell_rho, tol.eq_tol);
}

double tau(int rho, int nu) {
  if (rho < 3 || nu < 2 * rho) throw DomainError("tau: requires rho >= 3 and nu >= 2 rho");
  return g_rho_bound(rho, nu);
}

double delta(int rho, int nu) {
  const double t = tau(rho, nu);
  return 2.0 * (std::sqrt(t * t + t) - t);
}

GrhoParams grho_params(int rho, int nu) { return {rho, nu, tau(rho, nu), delta(rho, nu)}; }

double g_rho_bound(int rho, int nu) {
  if (nu <= 2 * rho - 1 || nu < 3) throw DomainError("G_rho bound: requires nu > 2 rho - 1");
  const double r = rho;
  const double v = nu;
  return (r - 1.0) * (r - 2.0) / ((v - 2.0) * (v - 2.0 * r + 1.0));
}

double max_pair_ratio(const Vector& x, const ToleranceConfig& tol) {
  const Support s = support_of(x, tol);
  double best = 0.0;
  for (int a = 0; a < s.nu; ++a) {
    for (int b = a + 1; b < s.nu; ++b) {
      const double xi = x[s.indices[a]];
      const double xj = x[s.indices[b]];
      const double slack = 1.0 - xi - xj;
      const double r = slack > 0 ? xi * xj / slack : std::numeric_limits<double>::infinity();
      best = std::max(best, r);
    }
  }
  return best;
}

bool in_G_rho(const Vector& x, int rho, const ToleranceConfig& tol) {
  require_simplex(x, tol, "in_G_rho");
  const int n = static_cast<int>(x.size());
  if (rho < 2 || rho > n / 2) throw DomainError("in_G_rho: requires 2 <= rho <= floor(n/2)");
  const int nu = support_of(x, tol).nu;
  if (nu <= 2 * rho - 1) return false;
  const double bound = g_rho_bound(rho, nu);
  return max_pair_ratio(x, tol) <= bound + tol.ineq_tol;
}

bool in_H_rho(const Vector& x, int rho, const ToleranceConfig& tol) {
  require_simplex(x, tol, "in_H_rho");
  const int n = static_cast<int>(x.size());
  if (rho < 3 || rho > n / 2) throw DomainError("in_H_rho: requires 3 <= rho <= floor(n/2)");
  const int nu = support_of(x, tol).nu;
  if (nu < 2 * rho) return false;
  Vector sorted = x;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<>());
  return sorted[0] + sorted[1] <= delta(rho, nu) + tol.ineq_tol;
}

void DecompositionCertificate::validate(const ToleranceConfig& tol) const {
  const auto n = x.size();
  if (P.n() != n || N.n() != n) throw CertificateInvalid("dimension mismatch between x, P, N");
  if (!std::isfinite(lambda)) throw CertificateInvalid("lambda is not finite");
  if (!in_simplex(x, tol)) throw CertificateInvalid("x is not in the simplex");
  if (min_eigenvalue(P) < -tol.psd_tol) throw CertificateInvalid("P is not PSD");
  if ((P.dense() * x).cwiseAbs().maxCoeff() > tol.eq_tol) throw CertificateInvalid("Px != 0");
  if (N.dense().minCoeff() < -tol.ineq_tol) throw CertificateInvalid("N has a negative entry");
  if (std::fabs(x.dot(N.dense() * x)) > tol.eq_tol) throw CertificateInvalid("x'Nx != 0");
}

ExactInstance build_exact_instance(const DecompositionCertificate& cert,
                                   const ToleranceConfig& tol) {
  cert.validate(tol);
  const auto n = static_cast<int>(cert.x.size());
  return {cert.P + cert.N + SymMatrix::ones(n) * cert.lambda, cert.lambda};
}

}  // namespace sstqp
