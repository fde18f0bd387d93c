#include "sstqp/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace sstqp::kernels {

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &scalar::dot, &scalar::quad_form,
                                 &scalar::min_value, &scalar::max_abs_diff};
  return table;
}

const KernelTable* avx2_table() {
#if defined(SSTQP_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{"avx2", &avx2::dot, &avx2::quad_form,
                                 &avx2::min_value, &avx2::max_abs_diff};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* force = std::getenv("SSTQP_FORCE_SCALAR");
  if (force != nullptr && std::strcmp(force, "0") != 0 && *force != '\0') {
    return scalar_table();
  }
  if (const KernelTable* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace sstqp::kernels
