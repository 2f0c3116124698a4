#include "evenspin/numkernel/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "evenspin/errors.hpp"
#include "evenspin/numkernel/kernels.hpp"

namespace evenspin {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(fmt::format("{}: shape {}x{} vs {}x{}", what, a.rows(), a.cols(), b.rows(),
                                 b.cols()));
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError(fmt::format("CMatrix: {} entries for a {}x{} matrix", data_.size(), rows_,
                                 cols_));
  }
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<cplx> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("CMatrix::from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return {r, c, std::move(data)};
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::column(std::span<const cplx> entries) {
  return {entries.size(), 1, std::vector<cplx>(entries.begin(), entries.end())};
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx CMatrix::trace() const {
  if (!is_square()) throw ShapeError("trace of a non-square matrix");
  cplx t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

CMatrix CMatrix::col(std::size_t c) const {
  if (c >= cols_) throw ShapeError(fmt::format("column {} out of range ({})", c, cols_));
  CMatrix out(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) out(r, 0) = (*this)(r, c);
  return out;
}

double CMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

double CMatrix::frobenius_norm() const {
  return std::sqrt(kernels::sum_sq_abs(data_.data(), data_.size()));
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix& CMatrix::operator+=(const CMatrix& o) { return add_scaled(1.0, o); }

CMatrix& CMatrix::operator-=(const CMatrix& o) { return add_scaled(-1.0, o); }

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix& CMatrix::add_scaled(cplx s, const CMatrix& o) {
  require_same_shape(*this, o, "add");
  kernels::axpy(s, o.data(), data(), data_.size());
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return std::move(a += b); }
CMatrix operator-(CMatrix a, const CMatrix& b) { return std::move(a -= b); }
CMatrix operator-(CMatrix a) { return std::move(a *= -1.0); }
CMatrix operator*(CMatrix a, cplx s) { return std::move(a *= s); }
CMatrix operator*(cplx s, CMatrix a) { return std::move(a *= s); }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError(fmt::format("multiply: {}x{} times {}x{}", a.rows(), a.cols(), b.rows(),
                                 b.cols()));
  }
  CMatrix c(a.rows(), b.cols());
  kernels::gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  return kernels::max_abs_diff(a.data(), b.data(), a.size());
}

bool approx_eq(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const cplx x = a.data()[i];
    const cplx y = b.data()[i];
    if (!tol.accepts(std::abs(x - y), std::max(std::abs(x), std::abs(y)))) return false;
  }
  return true;
}

double hermiticity_residual(const CMatrix& a) {
  if (!a.is_square()) throw ShapeError("hermiticity of a non-square matrix");
  double best = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r; c < a.cols(); ++c)
      best = std::max(best, std::abs(a(r, c) - std::conj(a(c, r))));
  return best;
}

bool is_hermitian(const CMatrix& a, const Tolerance& tol) {
  return a.is_square() && tol.accepts(hermiticity_residual(a), a.max_abs());
}

cplx inner(const CMatrix& x, const CMatrix& y) {
  if (x.cols() != 1 || y.cols() != 1 || x.rows() != y.rows()) {
    throw ShapeError("inner: expected column vectors of equal length");
  }
  cplx acc{};
  for (std::size_t i = 0; i < x.rows(); ++i) acc += std::conj(x(i, 0)) * y(i, 0);
  return acc;
}

cplx expectation(const CMatrix& a, const CMatrix& x) { return inner(x, a * x); }

}  // namespace evenspin
