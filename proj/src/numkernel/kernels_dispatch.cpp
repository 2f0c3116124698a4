#include <cstdlib>
#include <string_view>

#include "evenspin/numkernel/kernels.hpp"

namespace evenspin::kernels {

namespace {

struct Table {
  Backend backend;
  void (*gemm)(const cplx*, const cplx*, cplx*, std::size_t, std::size_t, std::size_t);
  void (*axpy)(cplx, const cplx*, cplx*, std::size_t);
  double (*max_abs_diff)(const cplx*, const cplx*, std::size_t);
  double (*sum_sq_abs)(const cplx*, std::size_t);
};

bool cpu_has_avx2() {
#if defined(EVENSPIN_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Table select_table() {
  const char* forced = std::getenv("EVENSPIN_KERNELS");
  const bool force_scalar = forced != nullptr && std::string_view(forced) == "scalar";
  if (!force_scalar && cpu_has_avx2()) {
    return {Backend::avx2, &avx2::gemm, &avx2::axpy, &avx2::max_abs_diff, &avx2::sum_sq_abs};
  }
  return {Backend::scalar, &scalar::gemm, &scalar::axpy, &scalar::max_abs_diff,
          &scalar::sum_sq_abs};
}

const Table& table() {
  static const Table t = select_table();
  return t;
}

}  // namespace

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
  static const bool available = cpu_has_avx2();
  return available;
}

Backend active_backend() { return table().backend; }

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t n, std::size_t k, std::size_t m) {
  table().gemm(a, b, c, n, k, m);
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len) { table().axpy(alpha, x, y, len); }

double max_abs_diff(const cplx* x, const cplx* y, std::size_t len) {
  return table().max_abs_diff(x, y, len);
}

double sum_sq_abs(const cplx* x, std::size_t len) { return table().sum_sq_abs(x, len); }

}  // namespace evenspin::kernels
