#pragma once

// Bound comparison table: oracle value, relaxation values and exactness
// flags for each requested rho.

#include "sstqp/conic.hpp"
#include "sstqp/core.hpp"
#include "sstqp/oracle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sstqp {

struct BoundCell {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::optional<double> value;
  double millis = 0.0;

  /// number, "unbounded", "infeasible" or "failure"
  std::string text() const;
  bool failed() const { return status == SolveStatus::kNumericalFailure; }
};

struct BoundReportRow {
  int rho = 0;
  std::optional<double> ell_rho_oracle;
  BoundCell r1;
  BoundCell r2;
  BoundCell r3;
  bool rlt_exact = false;
  std::optional<bool> shor_exact;  // needs the oracle
  std::optional<bool> r3_exact;    // needs the oracle
  // absent when a needed cell failed
  std::optional<bool> sandwich_ok;
  double oracle_millis = 0.0;
};

struct BoundsOptions {
  OracleOptions oracle;
  SolverOptions solver;
  ToleranceConfig tol;
  double sandwich_tol = 1e-6;
  double exact_tol = 1e-6;
};

std::vector<BoundReportRow> compute_bounds(const SymMatrix& Q, const std::vector<int>& rhos,
                                           const BoundsOptions& opts = {});

std::string bounds_to_csv(const std::vector<BoundReportRow>& rows);
std::string bounds_to_json(const std::vector<BoundReportRow>& rows);

}  // namespace sstqp
