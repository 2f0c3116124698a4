#pragma once

// Inner loops of the dense complex kernel. Each routine has a scalar
// reference implementation and an AVX2/FMA variant; the dispatching entry
// points pick one at first use based on the running CPU.
//
// Storage is interleaved std::complex<double>, row-major.

#include <complex>
#include <cstddef>
#include <string_view>

namespace evenspin::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

/// True when the AVX2 table was compiled in and the CPU reports avx2+fma.
bool avx2_available();

/// Backend used by the dispatching functions below. Fixed for the lifetime of
/// the process; EVENSPIN_KERNELS=scalar in the environment forces the
/// reference path.
Backend active_backend();

/// c[n x m] = a[n x k] * b[k x m]. `c` must not alias `a` or `b`.
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t n, std::size_t k, std::size_t m);

/// y += alpha * x
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);

/// max_i |x_i - y_i|
double max_abs_diff(const cplx* x, const cplx* y, std::size_t len);

/// sum_i |x_i|^2
double sum_sq_abs(const cplx* x, std::size_t len);

namespace scalar {
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t n, std::size_t k, std::size_t m);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);
double max_abs_diff(const cplx* x, const cplx* y, std::size_t len);
double sum_sq_abs(const cplx* x, std::size_t len);
}  // namespace scalar

// Only call these when avx2_available() is true.
namespace avx2 {
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t n, std::size_t k, std::size_t m);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t len);
double max_abs_diff(const cplx* x, const cplx* y, std::size_t len);
double sum_sq_abs(const cplx* x, std::size_t len);
}  // namespace avx2

}  // namespace evenspin::kernels
