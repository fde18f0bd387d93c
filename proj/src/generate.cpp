#include "sstqp/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace sstqp {

double Rng::uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int Rng::index(int k) { return std::min(k - 1, static_cast<int>(uniform01() * k)); }

Distribution parse_distribution(const std::string& name) {
  if (name == "uniform") return Distribution::kUniform;
  if (name == "gaussian") return Distribution::kGaussian;
  if (name == "structured") return Distribution::kStructured;
  throw InvalidArgument("unknown distribution '" + name + "' (uniform, gaussian, structured)");
}

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::kUniform:
      return "uniform";
    case Distribution::kGaussian:
      return "gaussian";
    case Distribution::kStructured:
      return "structured";
  }
  return "uniform";
}

Vector random_simplex_point(Rng& rng, int n, int nu) {
  if (nu < 1 || nu > n) throw InvalidArgument("random_simplex_point: nu must lie in [1, n]");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int t = 0; t < nu; ++t) std::swap(perm[t], perm[t + rng.index(n - t)]);
  Vector x = Vector::Zero(n);
  for (int t = 0; t < nu; ++t) x[perm[t]] = 0.1 + rng.uniform01();
  return x / x.sum();
}

SymMatrix random_psd(Rng& rng, int n) {
  Matrix b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = rng.gaussian();
  }
  return SymMatrix(Matrix(b * b.transpose() / n));
}

namespace {

SymMatrix iid_symmetric(Rng& rng, int n, bool gaussian) {
  SymMatrix q(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) q.set(i, j, gaussian ? rng.gaussian() : rng.uniform01());
  }
  return q;
}

DecompositionCertificate structured_certificate(Rng& rng, int n, int rho) {
  DecompositionCertificate c;
  c.x = random_simplex_point(rng, n, rho);

  Matrix v(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) v(i, j) = rng.gaussian();
  }
  const Matrix proj = Matrix::Identity(n, n) - c.x * c.x.transpose() / c.x.squaredNorm();
  c.P = SymMatrix(Matrix(proj * v * v.transpose() * proj / n));

  c.N = SymMatrix(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double draw = rng.uniform01();
      if (c.x[i] * c.x[j] == 0.0) c.N.set(i, j, draw);
    }
  }
  c.lambda = rng.gaussian();
  return c;
}

}  // namespace

GeneratedInstance generate_instance(int n, Distribution dist, std::optional<int> rho,
                                    std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("gen: n must be at least 2");
  if (rho && (*rho < 1 || *rho > n)) throw InvalidArgument("gen: rho must lie in [1, n]");
  Rng rng(seed);
  GeneratedInstance g;
  g.seed = seed;
  g.instance.rho = rho.value_or(n);
  g.instance.label = std::string(to_string(dist)) + "-n" + std::to_string(n) + "-s" +
                     std::to_string(seed);
  switch (dist) {
    case Distribution::kUniform:
    case Distribution::kGaussian:
      g.instance.Q = iid_symmetric(rng, n, dist == Distribution::kGaussian);
      break;
    case Distribution::kStructured: {
      if (!rho) throw InvalidArgument("gen: structured instances need --rho");
      DecompositionCertificate c = structured_certificate(rng, n, *rho);
      const ExactInstance e = build_exact_instance(c);
      g.instance.Q = e.Q;
      g.known_value = e.known_value;
      g.certificate = std::move(c);
      break;
    }
  }
  return g;
}

}  // namespace sstqp
