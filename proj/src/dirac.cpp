#include "evenspin/dirac.hpp"

#include <cmath>
#include <fmt/format.h>

#include "evenspin/errors.hpp"

namespace evenspin {

namespace {

CMatrix block2(const CMatrix& tl, const CMatrix& tr, const CMatrix& bl, const CMatrix& br) {
  CMatrix out(4, 4);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      out(r, c) = tl(r, c);
      out(r, c + 2) = tr(r, c);
      out(r + 2, c) = bl(r, c);
      out(r + 2, c + 2) = br(r, c);
    }
  return out;
}

DiracBasis make_basis() {
  const auto& s = pauli();
  const CMatrix one = CMatrix::identity(2);
  const CMatrix zero = CMatrix::zeros(2, 2);

  DiracBasis b;
  b.gamma[0] = block2(one, zero, zero, -one);
  for (std::size_t k = 0; k < 3; ++k) {
    b.gamma[k + 1] = block2(zero, s[k], -s[k], zero);
    b.alpha[k] = b.gamma[0] * b.gamma[k + 1];
    b.spin[k] = 0.5 * block2(s[k], zero, zero, s[k]);
  }
  b.gamma5 = -kI * (b.gamma[0] * b.gamma[1] * b.gamma[2] * b.gamma[3]);
  return b;
}

}  // namespace

FourMomentum FourMomentum::make(double mass, const Vec3& momentum) {
  if (!std::isfinite(mass) || mass < 0.0) {
    throw DomainError(fmt::format("mass must be finite and >= 0 (got {})", mass));
  }
  if (!is_finite(momentum)) throw DomainError("momentum must be finite");
  const double p_mag = norm(momentum);
  if (mass == 0.0 && p_mag == 0.0) {
    throw DomainError("massless particle at rest (m = 0, p = 0) is excluded: p0 would vanish");
  }
  const double energy = std::sqrt(p_mag * p_mag + mass * mass);
  return {mass, momentum, energy, p_mag};
}

FourMomentum FourMomentum::from_components(double mass, const Vec3& momentum, double energy) {
  FourMomentum fm = make(mass, momentum);
  const double shell = energy * energy - fm.p_mag_ * fm.p_mag_ - mass * mass;
  if (!(energy > 0.0) || std::abs(shell) > 1e-12 * energy * energy) {
    throw DomainError(
        fmt::format("off-shell four-momentum: p0^2 - |p|^2 - m^2 = {:.3e}", shell));
  }
  return fm;
}

Vec3 FourMomentum::direction() const {
  if (at_rest()) throw DomainError("momentum direction undefined at rest");
  return (1.0 / p_mag_) * p_;
}

const std::array<CMatrix, 3>& pauli() {
  static const std::array<CMatrix, 3> s{
      CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}),
      CMatrix::from_rows({{0.0, -kI}, {kI, 0.0}}),
      CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}),
  };
  return s;
}

const DiracBasis& dirac_basis() {
  static const DiracBasis basis = make_basis();
  return basis;
}

CMatrix dot(const Vec3& a, const std::array<CMatrix, 3>& v) {
  CMatrix out = CMatrix::zeros(v[0].rows(), v[0].cols());
  for (std::size_t k = 0; k < 3; ++k)
    if (a[k] != 0.0) out.add_scaled(a[k], v[k]);
  return out;
}

DiracOperatorSet build_dirac_set(const FourMomentum& fm) {
  const DiracBasis& b = dirac_basis();

  // alpha_k = -2 gamma5 S_k must hold exactly; otherwise the massless
  // Hamiltonian is not omega.S and every precession identity flips sign.
  for (std::size_t k = 0; k < 3; ++k) {
    const double r = max_abs_diff(b.alpha[k], -2.0 * (b.gamma5 * b.spin[k]));
    if (r != 0.0) {
      throw ContractError(fmt::format(
          "gamma5 convention broken: alpha_{} != -2 gamma5 S_{} (residual {:.3e})", k + 1, k + 1,
          r));
    }
  }

  DiracOperatorSet d;
  d.gamma = b.gamma;
  d.gamma5 = b.gamma5;
  d.alpha = b.alpha;
  d.spin = b.spin;
  d.energy = fm.energy();
  d.H = dot(fm.momentum(), b.alpha);
  d.H.add_scaled(fm.mass(), b.gamma[0]);
  d.lambda = d.H * (1.0 / d.energy);
  const CMatrix one = CMatrix::identity(4);
  d.pi_plus = 0.5 * (one + d.lambda);
  d.pi_minus = 0.5 * (one - d.lambda);
  return d;
}

CMatrix even_part(const CMatrix& a, const DiracOperatorSet& dset) {
  return 0.5 * (a + dset.lambda * a * dset.lambda);
}

CMatrix even_part_projected(const CMatrix& a, const DiracOperatorSet& dset) {
  return dset.pi_plus * a * dset.pi_plus + dset.pi_minus * a * dset.pi_minus;
}

CMatrix odd_part(const CMatrix& a, const DiracOperatorSet& dset) {
  return 0.5 * (a - dset.lambda * a * dset.lambda);
}

CMatrix slash(const FourMomentum& fm, const DiracOperatorSet& dset) {
  CMatrix out = fm.energy() * dset.gamma[0];
  for (std::size_t k = 0; k < 3; ++k) out.add_scaled(-fm.momentum()[k], dset.gamma[k + 1]);
  return out;
}

}  // namespace evenspin
