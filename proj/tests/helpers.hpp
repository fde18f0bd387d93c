#pragma once

// Test-side reference data and brute-force oracles. Nothing here calls the
// library's oracle or closed forms.

#include "sstqp/core.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace testing {

using sstqp::ExtendedLiftedPoint;
using sstqp::Matrix;
using sstqp::SymMatrix;
using sstqp::Vector;

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

inline SymMatrix sym(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double d : r) m(i, j++) = d;
    ++i;
  }
  return SymMatrix(m);
}

inline Vector unit(int n, int k) {
  Vector e = Vector::Zero(n);
  e[k] = 1.0;
  return e;
}

inline Vector uniform_on(int n, int nu) {
  Vector x = Vector::Zero(n);
  x.head(nu).setConstant(1.0 / nu);
  return x;
}

// A 6-point x with a lift (u, U) rounded to 4 decimals.
inline Vector six_point_x() { return vec({0.6, 0.2, 0.05, 0.05, 0.05, 0.05}); }

inline ExtendedLiftedPoint six_point_lift() {
  const Vector x = six_point_x();
  const Vector u = vec({0.8866, 0.5512, 0.3905, 0.3906, 0.3906, 0.3905});
  const SymMatrix U = sym({{0.8866, 0.4674, 0.3264, 0.3265, 0.3265, 0.3264},
                           {0.4674, 0.5512, 0.1588, 0.1588, 0.1588, 0.1588},
                           {0.3264, 0.1588, 0.3905, 0.0986, 0.0986, 0.0986},
                           {0.3265, 0.1588, 0.0986, 0.3906, 0.0986, 0.0986},
                           {0.3265, 0.1588, 0.0986, 0.0986, 0.3906, 0.0986},
                           {0.3264, 0.1588, 0.0986, 0.0986, 0.0986, 0.3905}});
  ExtendedLiftedPoint p;
  p.x = x;
  p.u = u;
  p.X = SymMatrix(Matrix(x * x.transpose()));
  p.U = U;
  p.R = x * u.transpose();
  return p;
}

inline SymMatrix random_symmetric(std::mt19937_64& g, int n, bool gaussian) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> nrm(0.0, 1.0);
  SymMatrix q(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) q.set(i, j, gaussian ? nrm(g) : uni(g));
  }
  return q;
}

inline SymMatrix random_psd(std::mt19937_64& g, int n) {
  std::normal_distribution<double> nrm(0.0, 1.0);
  Matrix b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = nrm(g);
  }
  return SymMatrix(Matrix(b * b.transpose() / n));
}

// Visits every point of the simplex grid {k h : sum = 1} in dimension n.
inline void for_each_grid_point(int n, int steps, const std::function<void(const Vector&)>& f) {
  Vector x(n);
  std::vector<int> k(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      k[i] = left;
      for (int j = 0; j < n; ++j) x[j] = static_cast<double>(k[j]) / steps;
      f(x);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, steps);
}

// min x'Qx over grid points with at most rho nonzeros.
inline double grid_min(const SymMatrix& Q, int rho, double h) {
  const int n = Q.n();
  const int steps = static_cast<int>(std::lround(1.0 / h));
  double best = std::numeric_limits<double>::infinity();
  for_each_grid_point(n, steps, [&](const Vector& x) {
    if ((x.array() > 0).count() > rho) return;
    best = std::min(best, x.dot(Q.dense() * x));
  });
  return best;
}

// Any minimizer is within h*sqrt(n) of a grid point with no larger support,
// and |f(x) - f(y)| <= 2 ||Q||_2 ||x - y|| on the simplex.
inline double grid_error_bound(const SymMatrix& Q, double h) {
  const double q2 = Q.dense().jacobiSvd().singularValues()[0];
  return 2.0 * q2 * h * std::sqrt(static_cast<double>(Q.n()));
}

}  // namespace testing
