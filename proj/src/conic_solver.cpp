// Homogeneous self-dual embedding, Mehrotra predictor-corrector, Nesterov-Todd
// scaling. Standard form:
//
//   minimize c'x  s.t.  Ax = b,  Gx + s = h,  s in K
//
// with K a product of one nonnegative orthant and PSD cones. PSD slacks are
// stored in svec form (upper triangle, off-diagonals scaled by sqrt 2) so the
// Euclidean inner product equals the trace inner product.

#include "sstqp/conic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace sstqp {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInf = std::numeric_limits<double>::infinity();

int svec_dim(int k) { return k * (k + 1) / 2; }

int svec_index(int k, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * k - i * (i - 1) / 2 + (j - i);
}

Matrix smat(const Vector& v, int offset, int k) {
  Matrix m(k, k);
  int idx = offset;
  for (int i = 0; i < k; ++i) {
    m(i, i) = v[idx++];
    for (int j = i + 1; j < k; ++j) {
      m(i, j) = m(j, i) = v[idx++] / kSqrt2;
    }
  }
  return m;
}

void svec_into(const Matrix& m, Vector& v, int offset) {
  const int k = static_cast<int>(m.rows());
  int idx = offset;
  for (int i = 0; i < k; ++i) {
    v[idx++] = m(i, i);
    for (int j = i + 1; j < k; ++j) v[idx++] = 0.5 * (m(i, j) + m(j, i)) * kSqrt2;
  }
}

struct Cones {
  int l = 0;
  std::vector<int> s;  // orders of the PSD blocks

  int rows() const {
    int m = l;
    for (int k : s) m += svec_dim(k);
    return m;
  }
  int degree() const {
    int d = l;
    for (int k : s) d += k;
    return d;
  }
};

struct StandardForm {
  Vector c;
  double c0 = 0.0;
  Matrix A;
  Vector b;
  Matrix G;
  Vector h;
  Cones cones;
};

// Largest t with v + t*e in the cone boundary, i.e. -(min eigenvalue).
double cone_deficit(const Cones& k, const Vector& v) {
  double worst = -kInf;
  if (k.l > 0) worst = std::max(worst, -v.head(k.l).minCoeff());
  int off = k.l;
  for (int d : k.s) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(smat(v, off, d), Eigen::EigenvaluesOnly);
    worst = std::max(worst, -es.eigenvalues()[0]);
    off += svec_dim(d);
  }
  return worst;
}

void add_identity(const Cones& k, Vector& v, double t) {
  for (int i = 0; i < k.l; ++i) v[i] += t;
  int off = k.l;
  for (int d : k.s) {
    for (int i = 0; i < d; ++i) v[off + svec_index(d, i, i)] += t;
    off += svec_dim(d);
  }
}

// Nesterov-Todd scaling W with W s = W^{-T} z = lambda. For a PSD block,
// W(s) = rinv s rinv' and W^{-T}(z) = r' z r, with lambda diagonal.
struct Scaling {
  Vector w;  // orthant part
  std::vector<Matrix> r;
  std::vector<Matrix> rinv;
  Vector lambda;  // l entries then k entries per PSD block

  static Scaling identity(const Cones& k) {
    Scaling sc;
    sc.w = Vector::Ones(k.l);
    sc.lambda = Vector::Ones(k.degree());
    for (int d : k.s) {
      sc.r.push_back(Matrix::Identity(d, d));
      sc.rinv.push_back(Matrix::Identity(d, d));
    }
    return sc;
  }

  static bool compute(const Cones& k, const Vector& s, const Vector& z, Scaling& sc) {
    sc.w.resize(k.l);
    sc.lambda.resize(k.degree());
    sc.r.clear();
    sc.rinv.clear();
    for (int i = 0; i < k.l; ++i) {
      if (!(s[i] > 0 && z[i] > 0)) return false;
      sc.w[i] = std::sqrt(z[i] / s[i]);
      sc.lambda[i] = std::sqrt(z[i] * s[i]);
    }
    int off = k.l;
    int loff = k.l;
    for (int d : k.s) {
      Eigen::LLT<Matrix> ls(smat(s, off, d));
      Eigen::LLT<Matrix> lz(smat(z, off, d));
      if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
      const Matrix l1 = ls.matrixL();
      const Matrix l2 = lz.matrixL();
      Eigen::JacobiSVD<Matrix> svd(l2.transpose() * l1, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Vector lam = svd.singularValues();
      if (!(lam.minCoeff() > 0) || !lam.allFinite()) return false;
      const Vector isq = lam.cwiseSqrt().cwiseInverse();
      sc.r.push_back(l1 * svd.matrixV() * isq.asDiagonal());
      sc.rinv.push_back(isq.asDiagonal() * svd.matrixU().transpose() * l2.transpose());
      sc.lambda.segment(loff, d) = lam;
      off += svec_dim(d);
      loff += d;
    }
    return true;
  }

  // W v
  Vector apply_w(const Cones& k, const Vector& v) const {
    Vector out(v.size());
    out.head(k.l) = w.cwiseProduct(v.head(k.l));
    int off = k.l;
    for (std::size_t b = 0; b < k.s.size(); ++b) {
      const int d = k.s[b];
      svec_into(rinv[b] * smat(v, off, d) * rinv[b].transpose(), out, off);
      off += svec_dim(d);
    }
    return out;
  }

  // W^{-T} v
  Vector apply_winvt(const Cones& k, const Vector& v) const {
    Vector out(v.size());
    out.head(k.l) = v.head(k.l).cwiseQuotient(w);
    int off = k.l;
    for (std::size_t b = 0; b < k.s.size(); ++b) {
      const int d = k.s[b];
      svec_into(r[b].transpose() * smat(v, off, d) * r[b], out, off);
      off += svec_dim(d);
    }
    return out;
  }

  // W^{-1} v
  Vector apply_winv(const Cones& k, const Vector& v) const {
    Vector out(v.size());
    out.head(k.l) = v.head(k.l).cwiseQuotient(w);
    int off = k.l;
    for (std::size_t b = 0; b < k.s.size(); ++b) {
      const int d = k.s[b];
      svec_into(r[b] * smat(v, off, d) * r[b].transpose(), out, off);
      off += svec_dim(d);
    }
    return out;
  }

  // W' v
  Vector apply_wt(const Cones& k, const Vector& v) const {
    Vector out(v.size());
    out.head(k.l) = w.cwiseProduct(v.head(k.l));
    int off = k.l;
    for (std::size_t b = 0; b < k.s.size(); ++b) {
      const int d = k.s[b];
      svec_into(rinv[b].transpose() * smat(v, off, d) * rinv[b], out, off);
      off += svec_dim(d);
    }
    return out;
  }

  // W applied to each column of g
  Matrix apply_w_columns(const Cones& k, const Matrix& g) const {
    Matrix out(g.rows(), g.cols());
    out.topRows(k.l) = w.asDiagonal() * g.topRows(k.l);
    int off = k.l;
    Vector tmp(g.rows());
    for (std::size_t b = 0; b < k.s.size(); ++b) {
      const int d = k.s[b];
      const int len = svec_dim(d);
      for (Eigen::Index j = 0; j < g.cols(); ++j) {
        if (g.col(j).segment(off, len).isZero(0.0)) {
          out.col(j).segment(off, len).setZero();
          continue;
        }
        tmp.segment(off, len) = g.col(j).segment(off, len);
        svec_into(rinv[b] * smat(tmp, off, d) * rinv[b].transpose(), tmp, off);
        out.col(j).segment(off, len) = tmp.segment(off, len);
      }
      off += len;
    }
    return out;
  }
};

// In the scaled space the iterate is lambda; these implement the Jordan
// algebra operations around it.
struct ScaledOps {
  const Cones& k;
  const Vector& lambda;

  // lambda^{-1} <> v  (inverse of v -> lambda o v)
  Vector inv_prod(const Vector& v) const {
    Vector out(v.size());
    for (int i = 0; i < k.l; ++i) out[i] = v[i] / lambda[i];
    int off = k.l;
    int loff = k.l;
    for (int d : k.s) {
      Matrix m = smat(v, off, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m(i, j) *= 2.0 / (lambda[loff + i] + lambda[loff + j]);
      }
      svec_into(m, out, off);
      off += svec_dim(d);
      loff += d;
    }
    return out;
  }

  // a o b
  Vector prod(const Vector& a, const Vector& b) const {
    Vector out(a.size());
    out.head(k.l) = a.head(k.l).cwiseProduct(b.head(k.l));
    int off = k.l;
    for (int d : k.s) {
      const Matrix ma = smat(a, off, d);
      const Matrix mb = smat(b, off, d);
      svec_into(0.5 * (ma * mb + mb * ma), out, off);
      off += svec_dim(d);
    }
    return out;
  }

  // lambda o lambda
  Vector lambda_sq() const {
    Vector out = Vector::Zero(k.rows());
    for (int i = 0; i < k.l; ++i) out[i] = lambda[i] * lambda[i];
    int off = k.l;
    int loff = k.l;
    for (int d : k.s) {
      for (int i = 0; i < d; ++i) out[off + svec_index(d, i, i)] = lambda[loff + i] * lambda[loff + i];
      off += svec_dim(d);
      loff += d;
    }
    return out;
  }

  // largest t with lambda + t v in the cone (may be +inf)
  double max_step(const Vector& v) const {
    double t = kInf;
    for (int i = 0; i < k.l; ++i) {
      if (v[i] < 0) t = std::min(t, -lambda[i] / v[i]);
    }
    int off = k.l;
    int loff = k.l;
    for (int d : k.s) {
      const Vector isq = lambda.segment(loff, d).cwiseSqrt().cwiseInverse();
      const Matrix m = isq.asDiagonal() * smat(v, off, d) * isq.asDiagonal();
      Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
      const double g = es.eigenvalues()[0];
      if (g < 0) t = std::min(t, -1.0 / g);
      off += svec_dim(d);
      loff += d;
    }
    return t;
  }
};

// Reduced KKT system in scaled form. With dzt = W^{-T} dz the system
//   A'dy + G'dz = rx,  A dx = ry,  G dx - W^{-1}W^{-T} dz = rz
// becomes dzt = WG dx - W rz, and the caller passes wrz = W rz.
class KktSystem {
 public:
  KktSystem(const StandardForm& f, const Scaling& sc) : f_(f), sc_(sc) {}

  bool factor() {
    const auto n = f_.G.cols();
    const auto p = f_.A.rows();
    wg_ = sc_.apply_w_columns(f_.cones, f_.G);
    m_.resize(n + p, n + p);
    m_.topLeftCorner(n, n) = wg_.transpose() * wg_;
    m_.topRightCorner(n, p) = f_.A.transpose();
    m_.bottomLeftCorner(p, n) = f_.A;
    m_.bottomRightCorner(p, p).setZero();
    if (!m_.allFinite()) return false;
    lu_.compute(m_);
    const double rc = lu_.rcond();
    return rc > 1e-300;
  }

  bool solve(const Vector& rx, const Vector& ry, const Vector& wrz, Vector& dx, Vector& dy,
             Vector& dzt) const {
    const auto n = f_.G.cols();
    const auto p = f_.A.rows();
    Vector rhs(n + p);
    rhs.head(n) = rx + wg_.transpose() * wrz;
    rhs.tail(p) = ry;
    Vector sol = lu_.solve(rhs);
    for (int it = 0; it < 2; ++it) {
      const Vector res = rhs - m_ * sol;
      sol += lu_.solve(res);
    }
    if (!sol.allFinite()) return false;
    dx = sol.head(n);
    dy = sol.tail(p);
    dzt = wg_ * dx - wrz;
    return dzt.allFinite();
  }

 private:
  const StandardForm& f_;
  const Scaling& sc_;
  Matrix wg_;
  Matrix m_;
  Eigen::PartialPivLU<Matrix> lu_;
};

// Builds the standard form. Returns false (with a message) when a
// constant-only constraint is violated, which certifies infeasibility.
bool to_standard_form(const ConicModel& model, StandardForm& f, std::string& why) {
  const int n = model.num_vars();
  f.c = Vector::Zero(n);
  for (const auto& [i, c] : model.objective().terms) f.c[i] += c;
  f.c0 = model.objective().constant;

  constexpr double kConstTol = 1e-12;
  std::vector<const LinExpr*> eqs;
  for (const auto& e : model.equalities()) {
    if (e.expr.is_constant()) {
      if (std::fabs(e.expr.constant) > kConstTol) {
        why = "constant equality '" + e.family + "' violated";
        return false;
      }
      continue;
    }
    eqs.push_back(&e.expr);
  }
  std::vector<const LinExpr*> ineqs;
  for (const auto& e : model.inequalities()) {
    if (e.expr.is_constant()) {
      if (e.expr.constant < -kConstTol) {
        why = "constant inequality '" + e.family + "' violated";
        return false;
      }
      continue;
    }
    ineqs.push_back(&e.expr);
  }

  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(eqs.size()), n);
  Vector b(static_cast<Eigen::Index>(eqs.size()));
  for (std::size_t r = 0; r < eqs.size(); ++r) {
    for (const auto& [i, c] : eqs[r]->terms) a(static_cast<Eigen::Index>(r), i) += c;
    b[static_cast<Eigen::Index>(r)] = -eqs[r]->constant;
  }

  // drop linearly dependent equality rows, checking consistency
  if (a.rows() > 0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(a.transpose());
    qr.setThreshold(1e-10);
    const auto rank = qr.rank();
    std::vector<int> keep;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = 0; i < rank; ++i) keep.push_back(perm[i]);
    std::sort(keep.begin(), keep.end());
    Matrix ar(static_cast<Eigen::Index>(keep.size()), n);
    Vector br(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      ar.row(static_cast<Eigen::Index>(i)) = a.row(keep[i]);
      br[static_cast<Eigen::Index>(i)] = b[keep[i]];
    }
    if (rank < a.rows()) {
      Eigen::ColPivHouseholderQR<Matrix> qk(ar.transpose());
      for (Eigen::Index r = 0; r < a.rows(); ++r) {
        if (std::binary_search(keep.begin(), keep.end(), static_cast<int>(r))) continue;
        const Vector coef = qk.solve(Vector(a.row(r).transpose()));
        const double implied = coef.dot(br);
        if (std::fabs(implied - b[r]) > 1e-9 * (1.0 + std::fabs(b[r]))) {
          why = "inconsistent linear equalities";
          return false;
        }
      }
    }
    f.A = std::move(ar);
    f.b = std::move(br);
  } else {
    f.A = Matrix::Zero(0, n);
    f.b = Vector::Zero(0);
  }

  f.cones.l = static_cast<int>(ineqs.size());
  for (const auto& p : model.psd_blocks()) f.cones.s.push_back(p.dim);
  const int m = f.cones.rows();
  f.G = Matrix::Zero(m, n);
  f.h = Vector::Zero(m);
  for (int r = 0; r < f.cones.l; ++r) {
    for (const auto& [i, c] : ineqs[static_cast<std::size_t>(r)]->terms) f.G(r, i) -= c;
    f.h[r] = ineqs[static_cast<std::size_t>(r)]->constant;
  }
  int off = f.cones.l;
  for (const auto& p : model.psd_blocks()) {
    for (int i = 0; i < p.dim; ++i) {
      for (int j = i; j < p.dim; ++j) {
        const double scale = i == j ? 1.0 : kSqrt2;
        const int row = off + svec_index(p.dim, i, j);
        const LinExpr& e = p.at(i, j);
        for (const auto& [v, c] : e.terms) f.G(row, v) -= scale * c;
        f.h[row] = scale * e.constant;
      }
    }
    off += svec_dim(p.dim);
  }
  return true;
}

}  // namespace

SolveResult InteriorPointSolver::solve(const ConicModel& model, const SolverOptions& opts) const {
  SolveResult result;
  StandardForm f;
  std::string why;
  if (!to_standard_form(model, f, why)) {
    result.status = SolveStatus::kInfeasible;
    result.stats.message = why;
    return result;
  }
  const Cones& k = f.cones;
  const int m = k.rows();
  const auto nv = f.c.size();
  if (m == 0) {
    result.stats.message = "model has no conic constraints";
    return result;
  }

  const double resx0 = std::max(1.0, f.c.norm());
  const double resy0 = std::max(1.0, f.b.size() ? f.b.norm() : 0.0);
  const double resz0 = std::max(1.0, f.h.norm());
  const int degree = k.degree();

  // starting point
  Vector x, y, z, s;
  {
    const Scaling id = Scaling::identity(k);
    KktSystem kkt(f, id);
    if (!kkt.factor()) {
      result.stats.message = "singular KKT system at start";
      return result;
    }
    Vector zp;
    Vector x2;
    Vector y0;
    if (!kkt.solve(Vector::Zero(nv), f.b, f.h, x, y0, zp) ||
        !kkt.solve(-f.c, Vector::Zero(f.b.size()), Vector::Zero(m), x2, y, z)) {
      result.stats.message = "start-point solve failed";
      return result;
    }
    s = -zp;
    const double ts = cone_deficit(k, s);
    if (ts >= -1e-8 * std::max(s.norm(), 1.0)) add_identity(k, s, 1.0 + ts);
    const double tz = cone_deficit(k, z);
    if (tz >= -1e-8 * std::max(z.norm(), 1.0)) add_identity(k, z, 1.0 + tz);
  }
  double tau = 1.0;
  double kappa = 1.0;

  struct Measures {
    double pres, dres, gap, relgap, pcost, dcost;
    std::optional<double> pinf, dinf;
  } mz{};

  auto measure = [&]() {
    const Vector hrx = f.A.transpose() * y + f.G.transpose() * z;
    const Vector hry = f.A * x;
    const Vector hrz = s + f.G * x;
    const double cx = f.c.dot(x);
    const double by = f.b.dot(y);
    const double hz = f.h.dot(z);
    const double resx = (hrx + f.c * tau).norm() / tau;
    const double resy = f.b.size() ? (hry - f.b * tau).norm() / tau : 0.0;
    const double resz = (hrz - f.h * tau).norm() / tau;
    mz.pres = std::max(resy / resy0, resz / resz0);
    mz.dres = resx / resx0;
    mz.gap = s.dot(z) / (tau * tau);
    mz.pcost = cx / tau;
    mz.dcost = -(by + hz) / tau;
    mz.relgap = kInf;
    if (mz.pcost < 0) {
      mz.relgap = mz.gap / -mz.pcost;
    } else if (mz.dcost > 0) {
      mz.relgap = mz.gap / mz.dcost;
    }
    mz.pinf.reset();
    mz.dinf.reset();
    if (hz + by < 0) mz.pinf = hrx.norm() / resx0 / (-(hz + by));
    if (cx < 0) {
      const double hy = f.b.size() ? hry.norm() / resy0 : 0.0;
      mz.dinf = std::max(hy, hrz.norm() / resz0) / (-cx);
    }
  };

  auto finish_optimal = [&](const char* msg) {
    result.status = SolveStatus::kOptimal;
    result.value = mz.pcost + f.c0;
    result.point = Vector(x / tau);
    result.stats.dual_value = mz.dcost + f.c0;
    result.stats.message = msg;
  };

  auto record = [&](int it) {
    result.stats.iterations = it;
    result.stats.primal_residual = mz.pres;
    result.stats.dual_residual = mz.dres;
    result.stats.gap = mz.gap;
  };

  // iterates can drift away again after getting close; keep the best one
  struct Snapshot {
    Vector x, y, z, s;
    double tau = 0.0, kappa = 0.0;
    double merit = kInf;
    int it = 0;
  } best;
  auto merit = [&]() { return std::max({mz.pres, mz.dres, std::min(mz.gap, mz.relgap)}); };

  auto stalled = [&](int it, const char* msg) -> SolveResult {
    measure();
    if (best.merit < merit()) {
      x = best.x;
      y = best.y;
      z = best.z;
      s = best.s;
      tau = best.tau;
      kappa = best.kappa;
      measure();
    }
    record(it);
    const double tol = opts.fallback_tol;
    if (mz.pres <= tol && mz.dres <= tol && (mz.gap <= tol || mz.relgap <= tol)) {
      finish_optimal("optimal to reduced accuracy");
    } else {
      result.status = SolveStatus::kNumericalFailure;
      result.stats.message = msg;
    }
    return result;
  };

  for (int it = 0; it <= opts.max_iterations; ++it) {
    measure();
    record(it);
    if (!std::isfinite(mz.pres) || !std::isfinite(mz.dres) || !std::isfinite(mz.gap)) {
      result.status = SolveStatus::kNumericalFailure;
      result.stats.message = "non-finite iterate";
      return result;
    }
    if (mz.pres <= opts.feastol && mz.dres <= opts.feastol &&
        (mz.gap <= opts.abstol || mz.relgap <= opts.reltol)) {
      finish_optimal("optimal");
      return result;
    }
    if (merit() < best.merit) best = {x, y, z, s, tau, kappa, merit(), it};
    if (it - best.it >= 8 && best.merit <= opts.fallback_tol) return stalled(it, "no progress");
    if (mz.pinf && *mz.pinf <= opts.feastol) {
      result.status = SolveStatus::kInfeasible;
      result.stats.message = "primal infeasibility certificate";
      return result;
    }
    if (mz.dinf && *mz.dinf <= opts.feastol) {
      result.status = SolveStatus::kUnbounded;
      result.stats.message = "dual infeasibility certificate (improving ray)";
      return result;
    }
    if (std::getenv("SSTQP_IPM_TRACE")) {
      std::fprintf(stderr, "%3d pcost=%.6e dcost=%.6e pres=%.2e dres=%.2e gap=%.2e tau=%.2e kappa=%.2e\n",
                   it, mz.pcost, mz.dcost, mz.pres, mz.dres, mz.gap, tau, kappa);
    }
    if (it == opts.max_iterations) break;

    Scaling sc;
    if (!Scaling::compute(k, s, z, sc)) return stalled(it, "scaling breakdown");
    KktSystem kkt(f, sc);
    if (!kkt.factor()) return stalled(it, "KKT factorization failed");
    const ScaledOps ops{k, sc.lambda};

    const Vector rx = f.A.transpose() * y + f.G.transpose() * z + f.c * tau;
    const Vector ry = f.A * x - f.b * tau;
    const Vector rz = s + f.G * x - f.h * tau;
    const double rt = kappa + f.c.dot(x) + f.b.dot(y) + f.h.dot(z);
    const double mu = (s.dot(z) + kappa * tau) / (degree + 1);

    Vector x1, y1, z1;
    if (!kkt.solve(-f.c, f.b, sc.apply_w(k, f.h), x1, y1, z1)) {
      return stalled(it, "KKT solve failed");
    }
    const Vector z1t = z1;
    z1 = sc.apply_wt(k, z1t);
    const Vector wrz = sc.apply_w(k, rz);
    const double denom = f.c.dot(x1) + f.b.dot(y1) + f.h.dot(z1) - kappa / tau;

    const Vector lam_vec = [&] {
      // lambda expressed as a cone vector (svec of diag for PSD blocks)
      Vector v = Vector::Zero(m);
      v.head(k.l) = sc.lambda.head(k.l);
      int off = k.l, loff = k.l;
      for (int d : k.s) {
        for (int i = 0; i < d; ++i) v[off + svec_index(d, i, i)] = sc.lambda[loff + i];
        off += svec_dim(d);
        loff += d;
      }
      return v;
    }();
    const Vector lam_sq = ops.lambda_sq();
    Vector e = Vector::Zero(m);
    add_identity(k, e, 1.0);

    Vector dsa, dza;
    double dtaua = 0.0, dkappaa = 0.0, sigma = 0.0;
    Vector dx, dy, dz, ds_t, dz_t;
    double dtau = 0.0, dkappa = 0.0, alpha = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
      const bool affine = pass == 0;
      const double scale = affine ? 1.0 : 1.0 - sigma;
      Vector dsv;
      double dk;
      if (affine) {
        dsv = -lam_vec;
        dk = -kappa * tau;
      } else {
        dsv = ops.inv_prod(-lam_sq + sigma * mu * e - ops.prod(dsa, dza));
        dk = -kappa * tau + sigma * mu - dkappaa * dtaua;
      }
      Vector x0, y0, z0;
      Vector z0t;
      if (!kkt.solve(-scale * rx, -scale * ry, -scale * wrz - dsv, x0, y0, z0t)) {
        return stalled(it, "KKT solve failed");
      }
      z0 = sc.apply_wt(k, z0t);
      const double bt = -scale * rt;
      dtau = (bt - dk / tau - (f.c.dot(x0) + f.b.dot(y0) + f.h.dot(z0))) / denom;
      dx = x0 + dtau * x1;
      dy = y0 + dtau * y1;
      dz = z0 + dtau * z1;
      dkappa = (dk - kappa * dtau) / tau;
      dz_t = z0t + dtau * z1t;
      ds_t = dsv - dz_t;

      double amax = std::min(ops.max_step(ds_t), ops.max_step(dz_t));
      if (dtau < 0) amax = std::min(amax, -tau / dtau);
      if (dkappa < 0) amax = std::min(amax, -kappa / dkappa);
      if (affine) {
        const double aa = std::min(1.0, amax);
        sigma = std::pow(1.0 - aa, 3);
        dsa = ds_t;
        dza = dz_t;
        dtaua = dtau;
        dkappaa = dkappa;
      } else {
        alpha = std::min(1.0, 0.99 * amax);
      }
    }
    if (!(alpha > 1e-12)) return stalled(it + 1, "step length collapsed");

    const Vector ds = sc.apply_winv(k, ds_t);
    x += alpha * dx;
    y += alpha * dy;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dtau;
    kappa += alpha * dkappa;
  }
  return stalled(opts.max_iterations, "iteration limit reached");
}

const ConicSolver& default_solver() {
  static const InteriorPointSolver solver;
  return solver;
}

SolveResult solve(const ConicModel& model, const SolverOptions& opts) {
  return default_solver().solve(model, opts);
}

}  // namespace sstqp
