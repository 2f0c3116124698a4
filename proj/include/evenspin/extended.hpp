#pragma once

// Even angular velocity, the precession form of the Dirac Hamiltonian, the
// kinetic moment of inertia of massless fields and the Robinson-congruence
// radius with its circle geometry.

#include <array>
#include <cstddef>
#include <vector>

#include "evenspin/dirac.hpp"
#include "evenspin/report.hpp"

namespace evenspin {

struct ExtendedQuantities {
  std::array<CMatrix, 3> omega;          // -2 gamma5 p
  std::array<CMatrix, 3> Omega;          // even part of omega
  std::array<CMatrix, 3> even_velocity;  // c = (v.p) p / |p|^2, massless only
  CMatrix Ik;                            // s (p.S) / |p|^2, massless only
  double r_s{0.0};                       // s / |p|, massless only
  double helicity_s{0.0};
};

/// omega = -2 gamma5 p
std::array<CMatrix, 3> angular_velocity(const DiracOperatorSet& dset, const FourMomentum& fm);

/// i[H, S] = omega x S, componentwise; for m = 0 also H = omega.S.
Report verify_precession(const DiracOperatorSet& dset, const FourMomentum& fm,
                         const Tolerance& tol = {});

/// omega and Omega = (1 + m gamma.n/|p|) / (1 + m^2/|p|^2) omega.
/// Throws DomainError at p = 0.
ExtendedQuantities build_even_velocity_set(const DiracOperatorSet& dset, const FourMomentum& fm);

/// H = (1 + m^2/|p|^2) Omega.Sp = beta^-2 Omega.S = beta^-2 Omega.Sp, with
/// beta^2 = |p|^2/p0^2; [Omega_i, H] = 0; Omega equals the even part of omega.
Report verify_hamiltonian_identities(const DiracOperatorSet& dset, const FourMomentum& fm,
                                     const ExtendedQuantities& eq, const Tolerance& tol = {});

/// max_k max_ij |Omega_k - omega_k|
double omega_deviation(const ExtendedQuantities& eq);

/// Massless quantities for helicity s: even velocity, Ik, r_s.
/// Throws DomainError unless m = 0 (and |p| > 0, guaranteed by FourMomentum).
ExtendedQuantities massless_extended_set(const DiracOperatorSet& dset, const FourMomentum& fm,
                                         double s);

/// H = c.p, H = omega.S, |p| r_s = s and, for the Dirac case s = 1/2,
/// <Psi+|Ik omega^2|Psi+> = <Psi+|H|Psi+> on the positive-energy,
/// positive-helicity state.
Report verify_massless_identities(const DiracOperatorSet& dset, const FourMomentum& fm,
                                  const ExtendedQuantities& eq, const Tolerance& tol = {});

/// r_s = hbar s / |p| in natural units; signed with the helicity.
double robinson_radius(double s, double p_mag);

struct RobinsonPoint {
  std::size_t frame;
  double t;
  double x;
  double y;
  double z;
  double phase;  // radians
};

/// Points on the Robinson circle of radius |r_s| in the plane orthogonal to
/// n, centred at t n. Sample k of frame f sits at angle
/// 2 pi k / n_samples + sign(s) |p| t, with t = f * dt. dt <= 0 selects |r_s|/8.
/// Throws DomainError for m != 0, s = 0, n_samples < 3 or n_frames < 1.
std::vector<RobinsonPoint> robinson_circle_samples(const FourMomentum& fm, double s,
                                                   std::size_t n_samples, std::size_t n_frames,
                                                   double dt = 0.0);

}  // namespace evenspin
