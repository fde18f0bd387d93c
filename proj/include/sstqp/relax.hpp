#pragma once

// Builders for the RLT (LP), Shor (SDP) and SDP-RLT relaxations of the
// standard quadratic program, with and without the cardinality lifting.
// Variable blocks are named "x", "X" and, for the lifted models, "u", "U",
// "R" (R is a full n x n block).

#include "sstqp/conic.hpp"
#include "sstqp/core.hpp"

namespace sstqp {

ConicModel build_r1(const SymMatrix& Q);
ConicModel build_r1_rho(const SymMatrix& Q, int rho);
ConicModel build_r2(const SymMatrix& Q);
ConicModel build_r2_rho(const SymMatrix& Q, int rho);
ConicModel build_r3(const SymMatrix& Q);
ConicModel build_r3_rho(const SymMatrix& Q, int rho);

/// Reads the (x, u, X, U, R) tuple of a lifted model out of a solver point.
ExtendedLiftedPoint extract_lifted(const ConicModel& m, const Vector& point);

/// Feasibility model for (x, xx') in the projection of the lifted SDP-RLT
/// set. With X = xx' the PSD block forces R = xu', so the unknowns are u and
/// U only, and the block reduces to [[1, u'], [u, U]] >= 0. Every linear
/// family of the lifted RLT system is kept after substitution; rows that
/// become constant are dropped by the solver (or reported infeasible when
/// violated).
ConicModel build_rank_one_probe(const Vector& x, int rho);

/// Recovers the full tuple from a probe solution.
ExtendedLiftedPoint probe_witness(const Vector& x, const ConicModel& probe,
                                  const Vector& point);

SolveResult feasibility_probe_rank_one(const Vector& x, int rho,
                                       const SolverOptions& opts = {},
                                       const ConicSolver& solver = default_solver());

}  // namespace sstqp
