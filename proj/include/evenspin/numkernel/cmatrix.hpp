#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "evenspin/numkernel/tolerance.hpp"

namespace evenspin {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Dense complex matrix, row-major. The carrier for every operator in the
/// library (4x4 bispinor and four-vector matrices, 16x16 two-particle
/// operators, column vectors as n x 1).
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  /// Row-wise literal: CMatrix::from_rows({{1, 0}, {0, -1}}).
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix diagonal(std::span<const cplx> diag);
  static CMatrix column(std::span<const cplx> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  std::span<const cplx> entries() const { return data_; }

  CMatrix adjoint() const;
  cplx trace() const;
  /// Column `c` as an n x 1 matrix.
  CMatrix col(std::size_t c) const;
  /// Largest entry magnitude.
  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);
  /// this += s * o
  CMatrix& add_scaled(cplx s, const CMatrix& o);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_{0};
  std::size_t cols_{0};
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a);
CMatrix operator*(CMatrix a, cplx s);
CMatrix operator*(cplx s, CMatrix a);
inline CMatrix operator*(double s, CMatrix a) { return std::move(a) * cplx{s}; }
inline CMatrix operator*(CMatrix a, double s) { return std::move(a) * cplx{s}; }
CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// max_ij |a_ij - b_ij|; throws ShapeError on mismatched shapes.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Elementwise |a - b| <= abs_eps + rel_eps * max(|a|, |b|). Symmetric in a, b.
bool approx_eq(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});

/// max_ij |a_ij - conj(a_ji)|
double hermiticity_residual(const CMatrix& a);
bool is_hermitian(const CMatrix& a, const Tolerance& tol = {});

/// <x|y> for column vectors.
cplx inner(const CMatrix& x, const CMatrix& y);
/// <x|A|x> for a column vector x.
cplx expectation(const CMatrix& a, const CMatrix& x);

}  // namespace evenspin
