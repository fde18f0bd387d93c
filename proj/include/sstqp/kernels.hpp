#pragma once

// Data-parallel inner loops used by the oracle, the closed forms and the
// feasibility checkers. Each kernel has a portable scalar reference and an
// AVX2 variant; the variant is picked once at runtime from CPU features.

#include <cstddef>
#include <span>

namespace sstqp::kernels {

struct KernelTable {
  const char* name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // x' Q x for a dense n x n matrix stored contiguously (row- or
  // column-major; Q must be symmetric for the two to agree)
  double (*quad_form)(const double* q, const double* x, std::size_t n);
  // smallest element; +inf for n == 0
  double (*min_value)(const double* a, std::size_t n);
  // max_i |a[i] - b[i]|
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double quad_form(const double* q, const double* x, std::size_t n);
double min_value(const double* a, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SSTQP_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double quad_form(const double* q, const double* x, std::size_t n);
double min_value(const double* a, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#endif

const KernelTable& scalar_table();
// nullptr when the CPU (or the build target) lacks AVX2+FMA
const KernelTable* avx2_table();

/// Table chosen at first use. SSTQP_FORCE_SCALAR=1 in the environment
/// pins the scalar reference.
const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double min_value(std::span<const double> a) {
  return active().min_value(a.data(), a.size());
}
inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  return active().max_abs_diff(a.data(), b.data(), a.size());
}
inline double quad_form(const double* q, std::span<const double> x) {
  return active().quad_form(q, x.data(), x.size());
}

}  // namespace sstqp::kernels
