#include "sstqp/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace k = sstqp::kernels;

namespace {

std::vector<double> draw(std::mt19937_64& g, std::size_t n) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

double abs_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] * b[i]);
  return s;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference against naive loops") {
  std::mt19937_64 g(1);
  for (std::size_t n : {0u, 1u, 2u, 5u, 17u}) {
    const auto a = draw(g, n);
    const auto b = draw(g, n);
    double dot = 0.0;
    double mn = std::numeric_limits<double>::infinity();
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += a[i] * b[i];
      mn = std::min(mn, a[i]);
      diff = std::max(diff, std::fabs(a[i] - b[i]));
    }
    CHECK(k::scalar::dot(a.data(), b.data(), n) == doctest::Approx(dot).epsilon(1e-14));
    CHECK(k::scalar::min_value(a.data(), n) == mn);
    CHECK(k::scalar::max_abs_diff(a.data(), b.data(), n) == diff);
  }
  const double q[] = {2, 1, 1, 3};
  const double x[] = {1, 2};
  CHECK(k::scalar::quad_form(q, x, 2) == 2 + 4 + 12);
}

TEST_CASE("AVX2 variants agree with the scalar reference") {
  const k::KernelTable* v = k::avx2_table();
  if (v == nullptr) {
    MESSAGE("AVX2 not available on this machine or build; equivalence not exercised");
    return;
  }
  const k::KernelTable& s = k::scalar_table();
  std::mt19937_64 g(2);
  for (std::size_t n = 0; n <= 70; ++n) {
    const auto a = draw(g, n);
    const auto b = draw(g, n);
    const double tol = 1e-14 * (1.0 + abs_dot(a, b));
    CHECK(std::fabs(v->dot(a.data(), b.data(), n) - s.dot(a.data(), b.data(), n)) <= tol);
    CHECK(v->min_value(a.data(), n) == s.min_value(a.data(), n));
    CHECK(v->max_abs_diff(a.data(), b.data(), n) == s.max_abs_diff(a.data(), b.data(), n));

    if (n > 24) continue;
    auto q = draw(g, n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) q[i * n + j] = q[j * n + i];
    }
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) scale += std::fabs(q[i * n + j] * a[i] * a[j]);
    }
    CHECK(std::fabs(v->quad_form(q.data(), a.data(), n) - s.quad_form(q.data(), a.data(), n)) <=
          1e-14 * scale);
  }
}

TEST_CASE("min_value handles infinities and signed zeros") {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> a = {inf, 3.0, -inf, 2.0, 1.0, 0.0, 7.0};
  CHECK(k::active().min_value(a.data(), a.size()) == -inf);
  CHECK(k::active().min_value(a.data(), 0) == inf);
}

TEST_CASE("dispatch picks a named table") {
  const std::string name = k::active().name;
  CHECK((name == "scalar" || name == "avx2"));
}

}
