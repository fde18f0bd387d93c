#pragma once

// A small conic modeling layer (linear equalities, componentwise
// nonnegativity, PSD blocks over named variable blocks) and a dense
// primal-dual interior-point backend.

#include "sstqp/core.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sstqp {

/// Affine expression  constant + sum coef * var.
struct LinExpr {
  std::vector<std::pair<int, double>> terms;
  double constant = 0.0;

  LinExpr() = default;
  LinExpr(double c) : constant(c) {}  // NOLINT: implicit by design of the algebra

  static LinExpr var(int index, double coef = 1.0);

  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(double s);

  bool is_constant() const { return terms.empty(); }
  double evaluate(const Vector& point) const;
  // merges duplicate indices and drops zero coefficients
  void compact();
};

LinExpr operator+(LinExpr a, const LinExpr& b);
LinExpr operator-(LinExpr a, const LinExpr& b);
LinExpr operator*(double s, LinExpr a);

enum class BlockKind { kVector, kSymmetric, kMatrix };

/// A named group of scalar decision variables. Symmetric blocks store the
/// upper triangle only; index(i, j) and index(j, i) coincide.
struct VarBlock {
  std::string name;
  BlockKind kind = BlockKind::kVector;
  int rows = 0;
  int cols = 1;
  int offset = 0;

  int size() const;
  int index(int i, int j = 0) const;
  LinExpr operator()(int i, int j = 0) const { return LinExpr::var(index(i, j)); }
};

struct LinearConstraint {
  std::string family;
  LinExpr expr;
};

/// Symmetric matrix of affine expressions required to be PSD.
struct PsdConstraint {
  std::string name;
  int dim = 0;
  std::vector<LinExpr> upper;  // row-major upper triangle, dim*(dim+1)/2

  PsdConstraint() = default;
  PsdConstraint(std::string name, int dim);
  LinExpr& at(int i, int j);
  const LinExpr& at(int i, int j) const;
};

class ConicModel {
 public:
  VarBlock add_vector(std::string name, int n);
  VarBlock add_symmetric(std::string name, int n);
  VarBlock add_matrix(std::string name, int rows, int cols);

  const VarBlock& block(std::string_view name) const;
  bool has_block(std::string_view name) const;
  const std::vector<VarBlock>& blocks() const { return blocks_; }
  int num_vars() const { return num_vars_; }

  void set_objective(LinExpr objective);
  /// expr == 0
  void add_equality(std::string family, LinExpr expr);
  /// expr >= 0
  void add_nonneg(std::string family, LinExpr expr);
  void add_psd(PsdConstraint block);

  const LinExpr& objective() const { return objective_; }
  const std::vector<LinearConstraint>& equalities() const { return equalities_; }
  const std::vector<LinearConstraint>& inequalities() const { return inequalities_; }
  const std::vector<PsdConstraint>& psd_blocks() const { return psd_; }

  std::size_t count_equalities(std::string_view family) const;
  std::size_t count_inequalities(std::string_view family) const;

  /// Plain-text interchange format, see docs/conic_format.md.
  void write_text(std::ostream& os) const;
  static ConicModel read_text(std::istream& is);

 private:
  VarBlock add_block(std::string name, BlockKind kind, int rows, int cols);
  void check_expr(const LinExpr& e) const;

  std::vector<VarBlock> blocks_;
  int num_vars_ = 0;
  LinExpr objective_;
  std::vector<LinearConstraint> equalities_;
  std::vector<LinearConstraint> inequalities_;
  std::vector<PsdConstraint> psd_;
};

enum class SolveStatus { kOptimal, kUnbounded, kInfeasible, kNumericalFailure };

std::string_view to_string(SolveStatus s);

struct SolverStats {
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  double dual_value = 0.0;
  std::string message;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::optional<double> value;
  std::optional<Vector> point;
  SolverStats stats;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

Vector extract_vector(const ConicModel& m, const Vector& point, std::string_view block);
SymMatrix extract_symmetric(const ConicModel& m, const Vector& point, std::string_view block);
Matrix extract_matrix(const ConicModel& m, const Vector& point, std::string_view block);

struct SolverOptions {
  double feastol = 1e-9;
  double abstol = 1e-9;
  double reltol = 1e-9;
  int max_iterations = 150;
  // accepted as optimal when the method stalls short of the tolerances above
  double fallback_tol = 1e-7;
};

/// Narrow backend contract: model in, classified result out. Breakdown is
/// reported as kNumericalFailure, never thrown.
class ConicSolver {
 public:
  virtual ~ConicSolver() = default;
  virtual SolveResult solve(const ConicModel& model, const SolverOptions& opts) const = 0;
};

/// Homogeneous self-dual interior-point method with Nesterov-Todd scaling
/// on the nonnegative orthant and the PSD cone. Dense, intended for models
/// with at most a few hundred variables.
class InteriorPointSolver final : public ConicSolver {
 public:
  SolveResult solve(const ConicModel& model, const SolverOptions& opts) const override;
};

const ConicSolver& default_solver();

SolveResult solve(const ConicModel& model, const SolverOptions& opts = {});

}  // namespace sstqp
