#pragma once

// Standard (Dirac) representation of the bispinor operators and the
// momentum-dependent bundle {H, lambda, Pi+, Pi-}. Natural units.

#include <array>

#include "evenspin/numkernel/cmatrix.hpp"
#include "evenspin/vec3.hpp"

namespace evenspin {

/// On-shell four-momentum with positive energy p0 = sqrt(|p|^2 + m^2).
class FourMomentum {
 public:
  /// Throws DomainError for negative/non-finite mass, non-finite momentum, or
  /// the excluded massless particle at rest.
  static FourMomentum make(double mass, const Vec3& momentum);
  /// Same as make() but also checks a caller-supplied energy against the mass
  /// shell (relative 1e-12 on p0^2).
  static FourMomentum from_components(double mass, const Vec3& momentum, double energy);

  double mass() const { return mass_; }
  const Vec3& momentum() const { return p_; }
  double energy() const { return energy_; }
  double p_mag() const { return p_mag_; }
  bool at_rest() const { return p_mag_ == 0.0; }
  /// p/|p|; throws DomainError at rest.
  Vec3 direction() const;
  /// m^2 / p0^2, the little-algebra structure constant.
  double contraction_param() const { return (mass_ * mass_) / (energy_ * energy_); }
  /// Same mass, momentum -p.
  FourMomentum reversed() const { return make(mass_, -p_); }

 private:
  FourMomentum(double mass, const Vec3& p, double energy, double p_mag)
      : mass_(mass), p_(p), energy_(energy), p_mag_(p_mag) {}

  double mass_;
  Vec3 p_;
  double energy_;
  double p_mag_;
};

/// Pauli matrices sigma_1..3 (2x2).
const std::array<CMatrix, 3>& pauli();

/// Momentum-independent Dirac matrices in the standard representation.
struct DiracBasis {
  std::array<CMatrix, 4> gamma;  // gamma^0..gamma^3
  CMatrix gamma5;
  std::array<CMatrix, 3> alpha;  // gamma^0 gamma^k
  std::array<CMatrix, 3> spin;   // diag(sigma, sigma) / 2
};

/// gamma^0 = diag(1,1,-1,-1), gamma^k = [[0, s_k], [-s_k, 0]],
/// gamma5 = -i gamma^0 gamma^1 gamma^2 gamma^3 = -[[0, 1], [1, 0]].
///
/// The gamma5 sign is the one for which alpha_k = -2 gamma5 S_k, i.e. the
/// massless Hamiltonian alpha.p equals omega.S with omega = -2 gamma5 p.
const DiracBasis& dirac_basis();

struct DiracOperatorSet {
  std::array<CMatrix, 4> gamma;
  CMatrix gamma5;
  std::array<CMatrix, 3> alpha;
  std::array<CMatrix, 3> spin;
  CMatrix H;        // alpha.p + m gamma^0
  CMatrix lambda;   // sign of energy, H / p0
  CMatrix pi_plus;  // (1 + lambda) / 2
  CMatrix pi_minus; // (1 - lambda) / 2
  double energy{0.0};
};

/// Throws ContractError when the gamma5 convention check fails.
DiracOperatorSet build_dirac_set(const FourMomentum& fm);

/// (A + lambda A lambda) / 2, the part of A that preserves the sign of energy.
CMatrix even_part(const CMatrix& a, const DiracOperatorSet& dset);
/// Pi+ A Pi+ + Pi- A Pi-; equal to even_part() as an identity.
CMatrix even_part_projected(const CMatrix& a, const DiracOperatorSet& dset);
/// (A - lambda A lambda) / 2
CMatrix odd_part(const CMatrix& a, const DiracOperatorSet& dset);

/// a.V = sum_k a_k V_k
CMatrix dot(const Vec3& a, const std::array<CMatrix, 3>& v);

/// Feynman slash p_mu gamma^mu = p0 gamma^0 - p.gamma (metric +,-,-,-).
CMatrix slash(const FourMomentum& fm, const DiracOperatorSet& dset);

}  // namespace evenspin
