#pragma once

// Shared helpers for the unit tests: seeded random operators and a naive
// matrix product used as an oracle for the kernels.

#include <cmath>
#include <random>

#include "evenspin/dirac.hpp"
#include "evenspin/numkernel/cmatrix.hpp"

namespace testing {

using evenspin::CMatrix;
using evenspin::cplx;
using evenspin::Vec3;

class Rand {
 public:
  explicit Rand(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  cplx complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
  Vec3 vec(double half) { return {uniform(-half, half), uniform(-half, half), uniform(-half, half)}; }
  Vec3 unit() {
    for (;;) {
      const Vec3 v = vec(1.0);
      const double r = evenspin::norm(v);
      if (r > 1e-3 && r <= 1.0) return (1.0 / r) * v;
    }
  }
  CMatrix matrix(std::size_t r, std::size_t c) {
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = complex();
    return m;
  }
  CMatrix hermitian(std::size_t n) {
    const CMatrix a = matrix(n, n);
    return 0.5 * (a + a.adjoint());
  }
  evenspin::FourMomentum momentum(double m_lo, double m_hi, double p_half = 3.0) {
    return evenspin::FourMomentum::make(uniform(m_lo, m_hi), vec(p_half));
  }

 private:
  std::mt19937_64 g_;
};

inline CMatrix naive_product(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s{};
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline CMatrix comm(const CMatrix& a, const CMatrix& b) { return naive_product(a, b) - naive_product(b, a); }

}  // namespace testing
