#include "sstqp/kernels.hpp"

#include <cmath>
#include <limits>

namespace sstqp::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double quad_form(const double* q, const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    s += x[i] * dot(q + i * n, x, n);
  }
  return s;
}

double min_value(const double* a, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = a[i] < m ? a[i] : m;
  return m;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    m = d > m ? d : m;
  }
  return m;
}

}  // namespace sstqp::kernels::scalar
