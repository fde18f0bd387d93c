#pragma once

// Seeded instance generators. The stream of draws is fixed so that other
// implementations can reproduce instances bit for bit; see
// docs/generators.md.

#include "sstqp/closedform.hpp"
#include "sstqp/core.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace sstqp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// (next() >> 11) * 2^-53, in [0, 1)
  double uniform01();
  /// Box-Muller, cosine branch only: one normal per two uniforms.
  double gaussian();
  /// floor(uniform01() * k), in [0, k)
  int index(int k);

 private:
  std::mt19937_64 gen_;
};

enum class Distribution { kUniform, kGaussian, kStructured };

Distribution parse_distribution(const std::string& name);
std::string_view to_string(Distribution d);

struct GeneratedInstance {
  SparseStqpInstance instance;
  std::uint64_t seed = 0;
  std::optional<double> known_value;
  std::optional<DecompositionCertificate> certificate;
};

/// uniform / gaussian: iid upper triangle, row by row, mirrored.
/// structured: Q = P + N + lambda E with a known rho-sparse minimizer.
GeneratedInstance generate_instance(int n, Distribution dist, std::optional<int> rho,
                                    std::uint64_t seed);

/// Random point of the simplex with exactly nu positive entries.
Vector random_simplex_point(Rng& rng, int n, int nu);

/// Q = B B' / n with B iid standard normal.
SymMatrix random_psd(Rng& rng, int n);

}  // namespace sstqp
