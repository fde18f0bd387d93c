#include "sstqp/oracle.hpp"

#include "sstqp/kernels.hpp"

#include <cmath>
#include <limits>

namespace sstqp {

namespace {

constexpr double kTieTol = 1e-12;

double supports_up_to(int n, int k) {
  double total = 0.0;
  double c = 1.0;
  for (int j = 1; j <= k; ++j) {
    c = c * (n - j + 1) / j;
    total += c;
  }
  return total;
}

void check_cap(int n, int max_size, const OracleOptions& opts) {
  const double allowed = std::ldexp(1.0, opts.cap) - 1.0;
  if (max_size >= n ? n > opts.cap : supports_up_to(n, max_size) > allowed) {
    throw CapExceeded("oracle: n = " + std::to_string(n) + " with support size <= " +
                      std::to_string(max_size) + " exceeds the enumeration cap (" +
                      std::to_string(opts.cap) + ")");
  }
}

// Lexicographic successor of a k-combination of {0..n-1}; false at the end.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

bool better(double candidate, double incumbent) {
  if (!std::isfinite(incumbent)) return true;
  return candidate < incumbent - kTieTol * std::max(1.0, std::fabs(incumbent));
}

}  // namespace

std::vector<Candidate> best_by_support_size(const SymMatrix& Q, int max_size,
                                            const OracleOptions& opts) {
  const int n = Q.n();
  if (max_size < 1 || max_size > n) throw InvalidArgument("oracle: support size out of range");
  check_cap(n, max_size, opts);

  const Matrix& q = Q.dense();
  std::vector<Candidate> best(static_cast<std::size_t>(max_size));
  for (auto& b : best) b.value = std::numeric_limits<double>::infinity();

  Vector full(n);
  for (int k = 1; k <= max_size; ++k) {
    Candidate& slot = best[static_cast<std::size_t>(k - 1)];
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[i] = i;
    Matrix kkt(k + 1, k + 1);
    Vector rhs = Vector::Zero(k + 1);
    rhs[k] = 1.0;
    do {
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) kkt(a, b) = 2.0 * q(comb[a], comb[b]);
        kkt(a, k) = 1.0;
        kkt(k, a) = 1.0;
      }
      kkt(k, k) = 0.0;
      Eigen::FullPivLU<Matrix> lu(kkt);
      lu.setThreshold(1e-12);
      if (!lu.isInvertible()) continue;
      const Vector sol = lu.solve(rhs);
      const Vector xk = sol.head(k);
      if (!(xk.minCoeff() > opts.support_tol)) continue;
      full.setZero();
      for (int a = 0; a < k; ++a) full[comb[a]] = xk[a];
      const double v = kernels::quad_form(q.data(), {full.data(), static_cast<std::size_t>(n)});
      if (better(v, slot.value)) {
        slot.value = v;
        slot.point = full;
        slot.support.indices = comb;
        slot.support.nu = k;
      }
    } while (next_combination(comb, n));
  }
  return best;
}

namespace {

OracleResult minimum_over(const std::vector<Candidate>& by_size, long long examined) {
  OracleResult r;
  r.value = std::numeric_limits<double>::infinity();
  for (const auto& c : by_size) {
    if (better(c.value, r.value)) {
      r.value = c.value;
      r.minimizer = c.point;
    }
  }
  r.candidates_examined = examined;
  return r;
}

}  // namespace

OracleResult solve_stqp_exact(const SymMatrix& Q, const OracleOptions& opts) {
  return solve_sparse_stqp_exact(Q, Q.n(), opts);
}

OracleResult solve_sparse_stqp_exact(const SymMatrix& Q, int rho, const OracleOptions& opts) {
  if (rho < 1 || rho > Q.n()) throw InvalidArgument("oracle: rho must lie in [1, n]");
  const auto by_size = best_by_support_size(Q, rho, opts);
  return minimum_over(by_size, static_cast<long long>(supports_up_to(Q.n(), rho)));
}

std::vector<double> bound_chain(const SymMatrix& Q, const OracleOptions& opts) {
  const auto by_size = best_by_support_size(Q, Q.n(), opts);
  std::vector<double> chain;
  double running = std::numeric_limits<double>::infinity();
  for (const auto& c : by_size) {
    running = std::min(running, c.value);
    chain.push_back(running);
  }
  return chain;
}

}  // namespace sstqp
