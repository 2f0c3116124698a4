#include "evenspin/numkernel/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "evenspin/errors.hpp"

namespace evenspin {

namespace {

void require_square_pair(const CMatrix& a, const CMatrix& b, const char* what) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw ShapeError(fmt::format("{}: need square matrices of equal size, got {}x{} and {}x{}",
                                 what, a.rows(), a.cols(), b.rows(), b.cols()));
  }
}

void require_finite(const CMatrix& m, const char* what) {
  if (!m.all_finite()) throw InvariantViolation(fmt::format("{}: non-finite entry", what));
}

double one_norm(const CMatrix& a) {
  double best = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) s += std::abs(a(r, c));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  require_square_pair(a, b, "commutator");
  CMatrix out = a * b;
  out -= b * a;
  require_finite(out, "commutator");
  return out;
}

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) {
  require_square_pair(a, b, "anticommutator");
  CMatrix out = a * b;
  out += b * a;
  require_finite(out, "anticommutator");
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t p = b.rows();
  const std::size_t q = b.cols();
  CMatrix out(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) out(i * p + k, j * q + l) = aij * b(k, l);
    }
  require_finite(out, "kron");
  return out;
}

CMatrix expm(const CMatrix& a) {
  if (!a.is_square()) throw ShapeError("expm of a non-square matrix");
  const std::size_t n = a.rows();
  require_finite(a, "expm input");

  const double norm = one_norm(a);
  int squarings = 0;
  if (norm >= 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5))) + 1;
  const CMatrix scaled = a * std::ldexp(1.0, -squarings);

  // Taylor series; with ||scaled||_1 < 0.5 the terms fall below 1e-18 of the
  // sum well before the cap.
  CMatrix sum = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = term * scaled;
    term *= 1.0 / k;
    sum += term;
    if (term.max_abs() <= 1e-18 * sum.max_abs()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  require_finite(sum, "expm");
  return sum;
}

CMatrix phase_fixed(const CMatrix& v, double rel_eps) {
  const double scale = v.max_abs();
  for (std::size_t i = 0; i < v.rows(); ++i) {
    const double mag = std::abs(v(i, 0));
    if (mag > rel_eps * scale) return v * (std::conj(v(i, 0)) / mag);
  }
  return v;
}

CMatrix outer_projector(const CMatrix& v) {
  const double nrm2 = inner(v, v).real();
  if (!(nrm2 > 0.0)) throw DomainError("outer_projector of a zero vector");
  return (v * v.adjoint()) * (1.0 / nrm2);
}

CMatrix SpinSpectrum::projector(std::size_t index) const {
  const EigenCluster& c = clusters.at(index);
  const std::size_t n = eigenvectors.rows();
  CMatrix p(n, n);
  for (std::size_t k = c.first; k < c.first + c.multiplicity; ++k) {
    const CMatrix v = eigenvectors.col(k);
    p += v * v.adjoint();
  }
  return p;
}

std::size_t SpinSpectrum::cluster_near(double value) const {
  if (clusters.empty()) throw DomainError("empty spectrum");
  std::size_t best = 0;
  for (std::size_t i = 1; i < clusters.size(); ++i)
    if (std::abs(clusters[i].value - value) < std::abs(clusters[best].value - value)) best = i;
  return best;
}

CMatrix SpinSpectrum::projector_near(double value) const { return projector(cluster_near(value)); }

SpinSpectrum hermitian_eigensystem(const CMatrix& a, const Tolerance& tol) {
  if (!a.is_square() || a.rows() == 0) {
    throw ContractError(fmt::format("hermitian_eigensystem: {}x{} is not square", a.rows(),
                                    a.cols()));
  }
  require_finite(a, "hermitian_eigensystem input");
  const double herm = hermiticity_residual(a);
  if (!tol.accepts(herm, a.max_abs())) {
    throw ContractError(
        fmt::format("hermitian_eigensystem: matrix not Hermitian (residual {:.3e})", herm));
  }

  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = a(r, c);
  // Symmetrise so roundoff-level anti-Hermitian parts do not leak in.
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw InvariantViolation("hermitian_eigensystem: eigensolver did not converge");
  }

  const auto count = static_cast<std::size_t>(n);
  std::vector<double> values(count);
  std::vector<CMatrix> vectors;
  vectors.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    values[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    CMatrix v(count, 1);
    for (std::size_t r = 0; r < count; ++r)
      v(r, 0) = solver.eigenvectors()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
    vectors.push_back(phase_fixed(v));
  }

  const double spectral_norm =
      std::max(std::abs(values.front()), std::abs(values.back()));
  const double cluster_gap = 1e-8 * spectral_norm;

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });

  SpinSpectrum out;
  out.eigenvectors = CMatrix(count, count);
  out.eigenvalues.reserve(count);
  std::size_t start = 0;
  while (start < count) {
    std::size_t stop = start + 1;
    while (stop < count && values[order[stop]] - values[order[stop - 1]] <= cluster_gap) ++stop;
    double mean = 0.0;
    for (std::size_t k = start; k < stop; ++k) {
      const std::size_t src = order[k];
      mean += values[src];
      out.eigenvalues.push_back(values[src]);
      for (std::size_t r = 0; r < count; ++r) out.eigenvectors(r, k) = vectors[src](r, 0);
    }
    out.clusters.push_back({mean / static_cast<double>(stop - start), stop - start, start});
    start = stop;
  }
  return out;
}

}  // namespace evenspin
