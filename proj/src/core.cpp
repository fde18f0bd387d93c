#include "sstqp/core.hpp"

#include "sstqp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sstqp {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw NonFinite(std::string(what) + ": non-finite entry");
}

// Records max(0, -min(values)) when it exceeds tol.
void check_nonneg(FeasibilityReport& r, const char* name, const double* data,
                  std::size_t n, double tol) {
  const double m = kernels::active().min_value(data, n);
  if (m < -tol) r.violations.push_back({name, -m});
}

void check_zero(FeasibilityReport& r, const char* name, const Vector& residual,
                double tol) {
  const double m = residual.size() ? residual.cwiseAbs().maxCoeff() : 0.0;
  if (m > tol) r.violations.push_back({name, m});
}

void check_zero(FeasibilityReport& r, const char* name, double residual, double tol) {
  if (std::fabs(residual) > tol) r.violations.push_back({name, std::fabs(residual)});
}

void finalize(FeasibilityReport& r) { r.feasible = r.violations.empty(); }

}  // namespace

SymMatrix::SymMatrix(int n) : m_(Matrix::Zero(n, n)) {
  if (n < 0) throw InvalidArgument("SymMatrix: negative order");
}

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("SymMatrix: matrix not square");
  require_finite(m, "SymMatrix");
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(int n) { return SymMatrix(Matrix::Identity(n, n)); }

SymMatrix SymMatrix::ones(int n) { return SymMatrix(Matrix::Ones(n, n)); }

SymMatrix SymMatrix::diag(const Vector& d) { return SymMatrix(Matrix(d.asDiagonal())); }

SymMatrix SymMatrix::outer(const Vector& a) { return SymMatrix(Matrix(a * a.transpose())); }

void SymMatrix::set(int i, int j, double v) {
  if (!std::isfinite(v)) throw NonFinite("SymMatrix::set: non-finite value");
  m_(i, j) = v;
  m_(j, i) = v;
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
  if (o.n() != n()) throw DimensionMismatch("SymMatrix +: order mismatch");
  SymMatrix r;
  r.m_ = m_ + o.m_;
  return r;
}

SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
  if (o.n() != n()) throw DimensionMismatch("SymMatrix -: order mismatch");
  SymMatrix r;
  r.m_ = m_ - o.m_;
  return r;
}

SymMatrix SymMatrix::operator*(double s) const {
  SymMatrix r;
  r.m_ = m_ * s;
  return r;
}

void SparseStqpInstance::validate() const {
  if (Q.n() < 1) throw InvalidArgument("instance: empty Q");
  if (rho < 1 || rho > Q.n()) {
    throw InvalidArgument("instance: rho must lie in [1, n]");
  }
}

void ExtendedLiftedPoint::check_dimensions() const {
  const auto n = x.size();
  if (u.size() != n || X.n() != n || U.n() != n || R.rows() != n || R.cols() != n) {
    throw DimensionMismatch("lifted point: blocks must all have order " +
                            std::to_string(n));
  }
}

void ToleranceConfig::validate() const {
  if (!(eq_tol > 0 && ineq_tol > 0 && psd_tol > 0 && support_tol > 0)) {
    throw InvalidArgument("tolerances must be strictly positive");
  }
}

bool FeasibilityReport::violates(std::string_view constraint) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.constraint == constraint; });
}

std::string FeasibilityReport::summary() const {
  std::ostringstream os;
  os << (feasible ? "feasible" : "infeasible");
  if (min_psd_eigenvalue) os << " (min eig " << *min_psd_eigenvalue << ")";
  for (const auto& v : violations) os << "\n  " << v.constraint << ": " << v.residual;
  return os.str();
}

Support support_of(const Vector& x, const ToleranceConfig& tol) {
  Support s;
  for (int i = 0; i < x.size(); ++i) {
    if (std::fabs(x[i]) > tol.support_tol) s.indices.push_back(i);
  }
  s.nu = static_cast<int>(s.indices.size());
  return s;
}

bool in_simplex(const Vector& x, const ToleranceConfig& tol) {
  if (x.size() < 1 || !x.allFinite()) return false;
  if (std::fabs(x.sum() - 1.0) > tol.eq_tol) return false;
  return x.minCoeff() >= -tol.ineq_tol;
}

bool in_F_rho(const Vector& x, int rho, const ToleranceConfig& tol) {
  return in_simplex(x, tol) && support_of(x, tol).nu <= rho;
}

double min_eigenvalue(const SymMatrix& m) {
  require_finite(m.dense(), "min_eigenvalue");
  if (m.n() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

SymMatrix moment_block(const ExtendedLiftedPoint& p) {
  p.check_dimensions();
  const int n = p.n();
  Matrix b(2 * n + 1, 2 * n + 1);
  b(0, 0) = 1.0;
  b.block(0, 1, 1, n) = p.x.transpose();
  b.block(0, n + 1, 1, n) = p.u.transpose();
  b.block(1, 0, n, 1) = p.x;
  b.block(n + 1, 0, n, 1) = p.u;
  b.block(1, 1, n, n) = p.X.dense();
  b.block(1, n + 1, n, n) = p.R;
  b.block(n + 1, 1, n, n) = p.R.transpose();
  b.block(n + 1, n + 1, n, n) = p.U.dense();
  return SymMatrix(b);
}

namespace {

void add_r1rho_violations(FeasibilityReport& r, const ExtendedLiftedPoint& p,
                          int rho, const ToleranceConfig& tol) {
  const int n = p.n();
  const Vector e = Vector::Ones(n);
  const Matrix& X = p.X.dense();
  const Matrix& U = p.U.dense();
  const Matrix& R = p.R;
  const auto nn = static_cast<std::size_t>(n) * n;

  check_zero(r, "e'x=1", p.x.sum() - 1.0, tol.eq_tol);
  check_zero(r, "e'u=rho", p.u.sum() - rho, tol.eq_tol);
  const Vector gap = p.u - p.x;
  check_nonneg(r, "x<=u", gap.data(), n, tol.ineq_tol);
  check_nonneg(r, "x>=0", p.x.data(), n, tol.ineq_tol);
  check_zero(r, "diag(U)=u", Vector(U.diagonal() - p.u), tol.eq_tol);
  check_zero(r, "Xe=x", Vector(X * e - p.x), tol.eq_tol);
  check_zero(r, "R'e=u", Vector(R.transpose() * e - p.u), tol.eq_tol);
  check_zero(r, "Re=rho*x", Vector(R * e - rho * p.x), tol.eq_tol);
  check_zero(r, "Ue=rho*u", Vector(U * e - rho * p.u), tol.eq_tol);
  const Matrix rlt = X - R.transpose() - R + U;
  check_nonneg(r, "X-R'-R+U>=0", rlt.data(), nn, tol.ineq_tol);
  const Matrix xr = R.transpose() - X;
  check_nonneg(r, "X-R'<=0", xr.data(), nn, tol.ineq_tol);
  const Matrix ru = U - R;
  check_nonneg(r, "R-U<=0", ru.data(), nn, tol.ineq_tol);
  check_nonneg(r, "X>=0", X.data(), nn, tol.ineq_tol);
  check_nonneg(r, "R>=0", R.data(), nn, tol.ineq_tol);
  check_nonneg(r, "U>=0", U.data(), nn, tol.ineq_tol);
}

void add_psd_violation(FeasibilityReport& r, const ExtendedLiftedPoint& p,
                       const ToleranceConfig& tol) {
  const double lmin = min_eigenvalue(moment_block(p));
  r.min_psd_eigenvalue = lmin;
  if (lmin < -tol.psd_tol) r.violations.push_back({"block_psd", -lmin});
}

}  // namespace

FeasibilityReport check_r1rho_feasible(const ExtendedLiftedPoint& p, int rho,
                                       const ToleranceConfig& tol) {
  p.check_dimensions();
  FeasibilityReport r;
  add_r1rho_violations(r, p, rho, tol);
  finalize(r);
  return r;
}

FeasibilityReport check_r2rho_feasible(const ExtendedLiftedPoint& p, int rho,
                                       const ToleranceConfig& tol) {
  p.check_dimensions();
  const int n = p.n();
  FeasibilityReport r;
  check_zero(r, "e'x=1", p.x.sum() - 1.0, tol.eq_tol);
  check_zero(r, "e'u=rho", p.u.sum() - rho, tol.eq_tol);
  check_zero(r, "diag(U)=u", Vector(p.U.diagonal() - p.u), tol.eq_tol);
  check_nonneg(r, "x>=0", p.x.data(), n, tol.ineq_tol);
  const Vector gap = p.u - p.x;
  check_nonneg(r, "x<=u", gap.data(), n, tol.ineq_tol);
  add_psd_violation(r, p, tol);
  finalize(r);
  return r;
}

FeasibilityReport check_r3rho_feasible(const ExtendedLiftedPoint& p, int rho,
                                       const ToleranceConfig& tol) {
  p.check_dimensions();
  FeasibilityReport r;
  add_r1rho_violations(r, p, rho, tol);
  add_psd_violation(r, p, tol);
  finalize(r);
  return r;
}

}  // namespace sstqp
