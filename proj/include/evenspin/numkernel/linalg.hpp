#pragma once

#include <cstddef>
#include <vector>

#include "evenspin/numkernel/cmatrix.hpp"
#include "evenspin/numkernel/tolerance.hpp"

namespace evenspin {

/// AB - BA
CMatrix commutator(const CMatrix& a, const CMatrix& b);
/// AB + BA
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

/// Kronecker product; the first factor carries the slow index:
/// (A kron B)(i*p + k, j*q + l) = A(i,j) B(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Matrix exponential by scaling and squaring around a truncated Taylor
/// series. The scaled matrix has 1-norm below 0.5.
CMatrix expm(const CMatrix& a);

/// A group of numerically equal eigenvalues.
struct EigenCluster {
  double value;            // mean of the members
  std::size_t multiplicity;
  std::size_t first;       // index of the first member in SpinSpectrum::eigenvalues
};

/// Eigen-decomposition of a Hermitian operator.
///
/// `eigenvalues` ascend; `eigenvectors` holds the matching orthonormal
/// columns, each phase-fixed so its first non-negligible component is real
/// and positive. The basis inside a degenerate cluster is the solver's.
struct SpinSpectrum {
  std::vector<double> eigenvalues;
  CMatrix eigenvectors;
  std::vector<EigenCluster> clusters;

  std::size_t dimension() const { return eigenvalues.size(); }
  /// Orthogonal projector onto the eigenspace of cluster `index`.
  CMatrix projector(std::size_t index) const;
  /// Projector onto the cluster whose value is nearest to `value`.
  CMatrix projector_near(double value) const;
  /// Index of the cluster nearest to `value`.
  std::size_t cluster_near(double value) const;
};

/// Diagonalise a Hermitian matrix. Eigenvalues closer than
/// 1e-8 * ||A||_2 are reported as one cluster.
/// Throws ContractError when A is not square or not Hermitian within `tol`.
SpinSpectrum hermitian_eigensystem(const CMatrix& a, const Tolerance& tol = {});

/// Rotate `v` (column vector) by a global phase so its first component with
/// magnitude above `rel_eps * max_i |v_i|` is real and positive.
CMatrix phase_fixed(const CMatrix& v, double rel_eps = 1e-10);

/// Rank-one projector |v><v| / <v|v>.
CMatrix outer_projector(const CMatrix& v);

}  // namespace evenspin
