#pragma once

// Exact reference values by enumerating simplex faces. On each support K the
// candidate is the solution of [2 Q_K, e; e', 0] (x_K, mu) = (0, 1), kept
// when the system is nonsingular and x_K is strictly positive.

#include "sstqp/core.hpp"

#include <vector>

namespace sstqp {

struct OracleOptions {
  // Full enumeration is allowed up to this order. A rho-restricted run is
  // allowed while sum_{k<=rho} C(n,k) <= 2^cap - 1.
  int cap = 16;
  double support_tol = ToleranceConfig{}.support_tol;
};

struct Candidate {
  Support support;
  Vector point;
  double value = 0.0;
};

struct OracleResult {
  double value = 0.0;
  Vector minimizer;
  long long candidates_examined = 0;
};

OracleResult solve_stqp_exact(const SymMatrix& Q, const OracleOptions& opts = {});
OracleResult solve_sparse_stqp_exact(const SymMatrix& Q, int rho,
                                     const OracleOptions& opts = {});

/// [l_1(Q), ..., l_n(Q)] from one pass over all supports.
std::vector<double> bound_chain(const SymMatrix& Q, const OracleOptions& opts = {});

/// Best KKT candidate on every support size up to max_size (index k-1 holds
/// the best over supports of size exactly k; absent sizes get +inf value).
std::vector<Candidate> best_by_support_size(const SymMatrix& Q, int max_size,
                                            const OracleOptions& opts = {});

}  // namespace sstqp
