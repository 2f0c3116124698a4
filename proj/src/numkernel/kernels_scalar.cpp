#include "evenspin/numkernel/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace evenspin::kernels::scalar {

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t n, std::size_t k, std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    cplx* crow = c + i * m;
    std::fill(crow, crow + m, cplx{});
    for (std::size_t l = 0; l < k; ++l) {
      const cplx ail = a[i * k + l];
      const cplx* brow = b + l * m;
      for (std::size_t j = 0; j < m; ++j) crow[j] += ail * brow[j];
    }
  }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

double max_abs_diff(const cplx* x, const cplx* y, std::size_t len) {
  double best = 0.0;
  for (std::size_t i = 0; i < len; ++i) best = std::max(best, std::abs(x[i] - y[i]));
  return best;
}

double sum_sq_abs(const cplx* x, std::size_t len) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) acc += std::norm(x[i]);
  return acc;
}

}  // namespace evenspin::kernels::scalar
