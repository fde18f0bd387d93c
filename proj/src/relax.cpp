#include "sstqp/relax.hpp"

namespace sstqp {

namespace {

struct Blocks {
  VarBlock x, u, X, U, R;
};

void require_rho(int n, int rho) {
  if (rho < 1 || rho > n) throw InvalidArgument("rho must lie in [1, n]");
}

void set_frobenius_objective(ConicModel& m, const SymMatrix& Q, const VarBlock& X) {
  const int n = Q.n();
  LinExpr obj;
  for (int i = 0; i < n; ++i) {
    obj += Q(i, i) * X(i, i);
    for (int j = i + 1; j < n; ++j) {
      if (Q(i, j) != 0.0) obj += (2.0 * Q(i, j)) * X(i, j);
    }
  }
  obj.compact();
  m.set_objective(std::move(obj));
}

LinExpr sum_of(const VarBlock& v, int n) {
  LinExpr s;
  for (int i = 0; i < n; ++i) s += v(i);
  return s;
}

// e'x = 1, Xe = x, x >= 0, X >= 0
void add_rlt_base(ConicModel& m, const VarBlock& x, const VarBlock& X, int n) {
  m.add_equality("e'x=1", sum_of(x, n) - 1.0);
  for (int i = 0; i < n; ++i) {
    LinExpr r = -1.0 * x(i);
    for (int j = 0; j < n; ++j) r += X(i, j);
    m.add_equality("Xe=x", r);
  }
  for (int i = 0; i < n; ++i) m.add_nonneg("x>=0", x(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.add_nonneg("X>=0", X(i, j));
  }
}

Blocks declare_lifted(ConicModel& m, int n) {
  Blocks b;
  b.x = m.add_vector("x", n);
  b.u = m.add_vector("u", n);
  b.X = m.add_symmetric("X", n);
  b.U = m.add_symmetric("U", n);
  b.R = m.add_matrix("R", n, n);
  return b;
}

void add_rlt_lifted(ConicModel& m, const Blocks& b, int n, int rho) {
  const auto& [x, u, X, U, R] = b;
  m.add_equality("e'x=1", sum_of(x, n) - 1.0);
  m.add_equality("e'u=rho", sum_of(u, n) - static_cast<double>(rho));
  for (int i = 0; i < n; ++i) m.add_nonneg("x<=u", u(i) - x(i));
  for (int i = 0; i < n; ++i) m.add_nonneg("x>=0", x(i));
  for (int i = 0; i < n; ++i) m.add_equality("diag(U)=u", U(i, i) - u(i));
  for (int i = 0; i < n; ++i) {
    LinExpr xe = -1.0 * x(i);
    LinExpr rte = -1.0 * u(i);
    LinExpr re = -static_cast<double>(rho) * x(i);
    LinExpr ue = -static_cast<double>(rho) * u(i);
    for (int j = 0; j < n; ++j) {
      xe += X(i, j);
      rte += R(j, i);
      re += R(i, j);
      ue += U(i, j);
    }
    m.add_equality("Xe=x", xe);
    m.add_equality("R'e=u", rte);
    m.add_equality("Re=rho*x", re);
    m.add_equality("Ue=rho*u", ue);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.add_nonneg("X-R'-R+U>=0", X(i, j) - R(j, i) - R(i, j) + U(i, j));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.add_nonneg("X-R'<=0", R(j, i) - X(i, j));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.add_nonneg("R-U<=0", U(i, j) - R(i, j));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.add_nonneg("X>=0", X(i, j));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.add_nonneg("R>=0", R(i, j));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.add_nonneg("U>=0", U(i, j));
  }
}

// [[1, x'], [x, X]]
PsdConstraint shor_block(const VarBlock& x, const VarBlock& X, int n) {
  PsdConstraint p("[1,x';x,X]", n + 1);
  p.at(0, 0) = 1.0;
  for (int i = 0; i < n; ++i) {
    p.at(0, i + 1) = x(i);
    for (int j = i; j < n; ++j) p.at(i + 1, j + 1) = X(i, j);
  }
  return p;
}

// [[1, x', u'], [x, X, R], [u, R', U]]
PsdConstraint lifted_block(const Blocks& b, int n) {
  PsdConstraint p("[1,x',u';x,X,R;u,R',U]", 2 * n + 1);
  p.at(0, 0) = 1.0;
  for (int i = 0; i < n; ++i) {
    p.at(0, 1 + i) = b.x(i);
    p.at(0, 1 + n + i) = b.u(i);
    for (int j = 0; j < n; ++j) {
      if (j >= i) {
        p.at(1 + i, 1 + j) = b.X(i, j);
        p.at(1 + n + i, 1 + n + j) = b.U(i, j);
      }
      p.at(1 + i, 1 + n + j) = b.R(i, j);
    }
  }
  return p;
}

}  // namespace

ConicModel build_r1(const SymMatrix& Q) {
  const int n = Q.n();
  ConicModel m;
  const VarBlock x = m.add_vector("x", n);
  const VarBlock X = m.add_symmetric("X", n);
  set_frobenius_objective(m, Q, X);
  add_rlt_base(m, x, X, n);
  return m;
}

ConicModel build_r1_rho(const SymMatrix& Q, int rho) {
  const int n = Q.n();
  require_rho(n, rho);
  ConicModel m;
  const Blocks b = declare_lifted(m, n);
  set_frobenius_objective(m, Q, b.X);
  add_rlt_lifted(m, b, n, rho);
  return m;
}

ConicModel build_r2(const SymMatrix& Q) {
  const int n = Q.n();
  ConicModel m;
  const VarBlock x = m.add_vector("x", n);
  const VarBlock X = m.add_symmetric("X", n);
  set_frobenius_objective(m, Q, X);
  m.add_equality("e'x=1", sum_of(x, n) - 1.0);
  for (int i = 0; i < n; ++i) m.add_nonneg("x>=0", x(i));
  m.add_psd(shor_block(x, X, n));
  return m;
}

ConicModel build_r2_rho(const SymMatrix& Q, int rho) {
  const int n = Q.n();
  require_rho(n, rho);
  ConicModel m;
  const Blocks b = declare_lifted(m, n);
  set_frobenius_objective(m, Q, b.X);
  m.add_equality("e'x=1", sum_of(b.x, n) - 1.0);
  m.add_equality("e'u=rho", sum_of(b.u, n) - static_cast<double>(rho));
  for (int i = 0; i < n; ++i) m.add_equality("diag(U)=u", b.U(i, i) - b.u(i));
  for (int i = 0; i < n; ++i) m.add_nonneg("x<=u", b.u(i) - b.x(i));
  for (int i = 0; i < n; ++i) m.add_nonneg("x>=0", b.x(i));
  m.add_psd(lifted_block(b, n));
  return m;
}

ConicModel build_r3(const SymMatrix& Q) {
  ConicModel m = build_r1(Q);
  m.add_psd(shor_block(m.block("x"), m.block("X"), Q.n()));
  return m;
}

ConicModel build_r3_rho(const SymMatrix& Q, int rho) {
  const int n = Q.n();
  require_rho(n, rho);
  ConicModel m;
  const Blocks b = declare_lifted(m, n);
  set_frobenius_objective(m, Q, b.X);
  add_rlt_lifted(m, b, n, rho);
  m.add_psd(lifted_block(b, n));
  return m;
}

ExtendedLiftedPoint extract_lifted(const ConicModel& m, const Vector& point) {
  ExtendedLiftedPoint p;
  p.x = extract_vector(m, point, "x");
  p.u = extract_vector(m, point, "u");
  p.X = extract_symmetric(m, point, "X");
  p.U = extract_symmetric(m, point, "U");
  p.R = extract_matrix(m, point, "R");
  return p;
}

ConicModel build_rank_one_probe(const Vector& x, int rho) {
  const int n = static_cast<int>(x.size());
  require_rho(n, rho);
  if (!x.allFinite()) throw NonFinite("probe: non-finite x");
  ConicModel m;
  const VarBlock u = m.add_vector("u", n);
  const VarBlock U = m.add_symmetric("U", n);
  m.set_objective(LinExpr(0.0));

  // X = xx', R = xu' substituted into every family
  auto Xc = [&](int i, int j) { return x[i] * x[j]; };
  auto R = [&](int i, int j) { return LinExpr::var(u.index(j), x[i]); };
  const double r = static_cast<double>(rho);

  m.add_equality("e'x=1", LinExpr(x.sum() - 1.0));
  m.add_equality("e'u=rho", sum_of(u, n) - r);
  for (int i = 0; i < n; ++i) m.add_nonneg("x<=u", u(i) - x[i]);
  for (int i = 0; i < n; ++i) m.add_nonneg("x>=0", LinExpr(x[i]));
  for (int i = 0; i < n; ++i) m.add_equality("diag(U)=u", U(i, i) - u(i));
  for (int i = 0; i < n; ++i) {
    LinExpr xe(-x[i]);
    LinExpr rte = -1.0 * u(i);
    LinExpr re(-r * x[i]);
    LinExpr ue = -r * u(i);
    for (int j = 0; j < n; ++j) {
      xe += Xc(i, j);
      rte += R(j, i);
      re += R(i, j);
      ue += U(i, j);
    }
    for (LinExpr* e : {&xe, &rte, &re, &ue}) e->compact();
    m.add_equality("Xe=x", xe);
    m.add_equality("R'e=u", rte);
    m.add_equality("Re=rho*x", re);
    m.add_equality("Ue=rho*u", ue);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      LinExpr e = Xc(i, j) - R(j, i) - R(i, j) + U(i, j);
      e.compact();
      m.add_nonneg("X-R'-R+U>=0", e);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      LinExpr e = R(j, i) - Xc(i, j);
      e.compact();
      m.add_nonneg("X-R'<=0", e);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      LinExpr e = U(i, j) - R(i, j);
      e.compact();
      m.add_nonneg("R-U<=0", e);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.add_nonneg("X>=0", LinExpr(Xc(i, j)));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      LinExpr e = R(i, j);
      e.compact();
      m.add_nonneg("R>=0", e);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.add_nonneg("U>=0", U(i, j));
  }

  PsdConstraint p("[1,u';u,U]", n + 1);
  p.at(0, 0) = 1.0;
  for (int i = 0; i < n; ++i) {
    p.at(0, i + 1) = u(i);
    for (int j = i; j < n; ++j) p.at(i + 1, j + 1) = U(i, j);
  }
  m.add_psd(std::move(p));
  return m;
}

ExtendedLiftedPoint probe_witness(const Vector& x, const ConicModel& probe,
                                  const Vector& point) {
  ExtendedLiftedPoint p;
  p.x = x;
  p.u = extract_vector(probe, point, "u");
  p.U = extract_symmetric(probe, point, "U");
  p.X = SymMatrix::outer(x);
  p.R = x * p.u.transpose();
  return p;
}

SolveResult feasibility_probe_rank_one(const Vector& x, int rho, const SolverOptions& opts,
                                       const ConicSolver& solver) {
  if (!in_simplex(x)) throw DomainError("probe: x is not in the simplex");
  return solver.solve(build_rank_one_probe(x, rho), opts);
}

}  // namespace sstqp
