#pragma once

// Domain types for the sparse standard quadratic program and feasibility
// checkers for the lifted RLT, Shor and SDP-RLT formulations.

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sstqp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class CertificateInvalid : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Dense real symmetric matrix. Symmetry is exact: the constructor from a
/// dense matrix averages the two triangles, and set() writes both entries.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);
  explicit SymMatrix(const Matrix& m);

  static SymMatrix identity(int n);
  static SymMatrix ones(int n);
  static SymMatrix diag(const Vector& d);
  static SymMatrix outer(const Vector& a);

  int n() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v);
  const Matrix& dense() const { return m_; }
  Vector diagonal() const { return m_.diagonal(); }

  SymMatrix operator+(const SymMatrix& o) const;
  SymMatrix operator-(const SymMatrix& o) const;
  SymMatrix operator*(double s) const;

 private:
  Matrix m_;
};

struct SparseStqpInstance {
  SymMatrix Q;
  int rho = 1;
  std::string label;

  int n() const { return Q.n(); }
  void validate() const;
};

struct Support {
  std::vector<int> indices;
  int nu = 0;
};

struct LiftedPoint {
  Vector x;
  SymMatrix X;
};

/// Full variable tuple (x, u, X, U, R) of the sparse formulations.
struct ExtendedLiftedPoint {
  Vector x;
  Vector u;
  SymMatrix X;
  SymMatrix U;
  Matrix R;

  int n() const { return static_cast<int>(x.size()); }
  void check_dimensions() const;
};

struct ToleranceConfig {
  double eq_tol = 1e-7;
  double ineq_tol = 1e-7;
  double psd_tol = 1e-7;
  double support_tol = 1e-9;

  void validate() const;
};

struct Violation {
  std::string constraint;
  double residual = 0.0;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;
  std::optional<double> min_psd_eigenvalue;

  bool violates(std::string_view constraint) const;
  std::string summary() const;
};

Support support_of(const Vector& x, const ToleranceConfig& tol = {});

/// Membership in the standard simplex (no sparsity requirement).
bool in_simplex(const Vector& x, const ToleranceConfig& tol = {});
bool in_F_rho(const Vector& x, int rho, const ToleranceConfig& tol = {});

/// Smallest eigenvalue of a symmetric matrix. Throws NonFinite on NaN/inf.
double min_eigenvalue(const SymMatrix& m);

/// The (2n+1) block [[1, x', u'], [x, X, R], [u, R', U]].
SymMatrix moment_block(const ExtendedLiftedPoint& p);

FeasibilityReport check_r1rho_feasible(const ExtendedLiftedPoint& p, int rho,
                                       const ToleranceConfig& tol = {});
FeasibilityReport check_r2rho_feasible(const ExtendedLiftedPoint& p, int rho,
                                       const ToleranceConfig& tol = {});
FeasibilityReport check_r3rho_feasible(const ExtendedLiftedPoint& p, int rho,
                                       const ToleranceConfig& tol = {});

}  // namespace sstqp
