#include "evenspin/extended.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "evenspin/errors.hpp"
#include "evenspin/even_spin.hpp"
#include "evenspin/little_algebra.hpp"
#include "evenspin/numkernel/linalg.hpp"

namespace evenspin {

namespace {

CMatrix dot_ops(const std::array<CMatrix, 3>& a, const std::array<CMatrix, 3>& b) {
  CMatrix out = CMatrix::zeros(a[0].rows(), b[0].cols());
  for (std::size_t k = 0; k < 3; ++k) out += a[k] * b[k];
  return out;
}

}  // namespace

std::array<CMatrix, 3> angular_velocity(const DiracOperatorSet& dset, const FourMomentum& fm) {
  std::array<CMatrix, 3> omega;
  for (std::size_t k = 0; k < 3; ++k) omega[k] = (-2.0 * fm.momentum()[k]) * dset.gamma5;
  return omega;
}

Report verify_precession(const DiracOperatorSet& dset, const FourMomentum& fm,
                         const Tolerance& tol) {
  const auto omega = angular_velocity(dset, fm);
  const auto& S = dset.spin;
  const double scale = std::max(1.0, fm.energy());
  Report r;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3;
    const std::size_t k = (i + 2) % 3;
    const CMatrix lhs = kI * commutator(dset.H, S[i]);
    const CMatrix rhs = omega[j] * S[k] - omega[k] * S[j];
    r.add(fmt::format("precession-{}", i + 1), "i[H, S] = omega x S, omega = -2 gamma5 p",
          "precession", max_abs_diff(lhs, rhs), tol.bound(scale));
  }
  if (fm.mass() == 0.0) {
    r.add("massless-H=omega.S", "H = omega.S (m = 0)", "massless-hamiltonian",
          max_abs_diff(dset.H, dot_ops(omega, S)), tol.bound(scale));
  }
  return r;
}

ExtendedQuantities build_even_velocity_set(const DiracOperatorSet& dset, const FourMomentum& fm) {
  if (fm.at_rest()) throw DomainError("even angular velocity needs |p| > 0");
  ExtendedQuantities eq;
  eq.omega = angular_velocity(dset, fm);
  const double m = fm.mass();
  const double p = fm.p_mag();
  const CMatrix g_n = dot(fm.direction(), std::array<CMatrix, 3>{dset.gamma[1], dset.gamma[2],
                                                                 dset.gamma[3]});
  CMatrix factor = CMatrix::identity(4);
  factor.add_scaled(m / p, g_n);
  factor *= 1.0 / (1.0 + (m * m) / (p * p));
  for (std::size_t k = 0; k < 3; ++k) eq.Omega[k] = factor * eq.omega[k];
  return eq;
}

Report verify_hamiltonian_identities(const DiracOperatorSet& dset, const FourMomentum& fm,
                                     const ExtendedQuantities& eq, const Tolerance& tol) {
  const EvenSpinForms forms = even_spin_forms(dset, fm);
  const auto& sp = forms.projector;
  const double p = fm.p_mag();
  const double p0 = fm.energy();
  const double mass_factor = 1.0 + (fm.mass() * fm.mass()) / (p * p);
  const double inv_beta_sq = (p0 * p0) / (p * p);
  const double scale = std::max(1.0, p0);

  Report r;
  const CMatrix omega_sp = dot_ops(eq.Omega, sp);
  const CMatrix omega_s = dot_ops(eq.Omega, dset.spin);
  r.add("NH:H=(1+m^2/p^2)Omega.Sp", "H = (1 + m^2/|p|^2) Omega.Sp", "precession-hamiltonian",
        max_abs_diff(dset.H, mass_factor * omega_sp), tol.bound(scale));
  r.add("NH:H=beta^-2 Omega.S", "H = beta^-2 Omega.S", "precession-hamiltonian",
        max_abs_diff(dset.H, inv_beta_sq * omega_s), tol.bound(scale));
  r.add("NH:H=beta^-2 Omega.Sp", "H = beta^-2 Omega.Sp", "precession-hamiltonian",
        max_abs_diff(dset.H, inv_beta_sq * omega_sp), tol.bound(scale));
  for (std::size_t k = 0; k < 3; ++k) {
    r.add(fmt::format("[Omega{},H]", k + 1), "[Omega_i, H] = 0", "even-angular-velocity",
          commutator(eq.Omega[k], dset.H).max_abs(), tol.bound(scale * scale));
    r.add(fmt::format("Omega{}=even(omega)", k + 1), "Omega = (omega + lambda omega lambda)/2",
          "even-angular-velocity", max_abs_diff(eq.Omega[k], even_part(eq.omega[k], dset)),
          tol.bound(eq.omega[k].max_abs()));
  }
  return r;
}

double omega_deviation(const ExtendedQuantities& eq) {
  double d = 0.0;
  for (std::size_t k = 0; k < 3; ++k) d = std::max(d, max_abs_diff(eq.Omega[k], eq.omega[k]));
  return d;
}

double robinson_radius(double s, double p_mag) {
  if (!(p_mag > 0.0)) throw DomainError("robinson_radius needs |p| > 0");
  return s / p_mag;
}

ExtendedQuantities massless_extended_set(const DiracOperatorSet& dset, const FourMomentum& fm,
                                         double s) {
  if (fm.mass() != 0.0) {
    throw DomainError(fmt::format("massless quantities need m = 0 (got m = {})", fm.mass()));
  }
  ExtendedQuantities eq = build_even_velocity_set(dset, fm);
  const Vec3& p = fm.momentum();
  const double p_sq = fm.p_mag() * fm.p_mag();
  const CMatrix v_dot_p = dot(p, dset.alpha);
  for (std::size_t k = 0; k < 3; ++k) eq.even_velocity[k] = (p[k] / p_sq) * v_dot_p;
  eq.Ik = (s / p_sq) * dot(p, dset.spin);
  eq.r_s = robinson_radius(s, fm.p_mag());
  eq.helicity_s = s;
  return eq;
}

Report verify_massless_identities(const DiracOperatorSet& dset, const FourMomentum& fm,
                                  const ExtendedQuantities& eq, const Tolerance& tol) {
  if (fm.mass() != 0.0) throw DomainError("verify_massless_identities needs m = 0");
  const double scale = std::max(1.0, fm.energy());
  Report r;

  CMatrix c_dot_p = CMatrix::zeros(4, 4);
  for (std::size_t k = 0; k < 3; ++k) c_dot_p.add_scaled(fm.momentum()[k], eq.even_velocity[k]);
  r.add("H=c.p", "H = c.p, c = (v.p) p / |p|^2", "massless-hamiltonian",
        max_abs_diff(dset.H, c_dot_p), tol.bound(scale));
  r.add("H=omega.S", "H = omega.S", "massless-hamiltonian",
        max_abs_diff(dset.H, dot_ops(eq.omega, dset.spin)), tol.bound(scale));
  r.add("|p| r_s = s", "|p| r_s = hbar s", "uncertainty-radius",
        std::abs(fm.p_mag() * eq.r_s - eq.helicity_s),
        4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(eq.helicity_s)));

  if (eq.helicity_s == 0.5) {
    const FrameTriad triad = triad_for(fm);
    const EvenSpinSet es = build_even_spin(dset, fm, triad);
    const CMatrix psi = even_spin_eigenvectors(es, triad.n, fm, triad).psi_plus;
    const CMatrix omega_sq = dot_ops(eq.omega, eq.omega);
    const double lhs = expectation(eq.Ik * omega_sq, psi).real();
    const double h = expectation(dset.H, psi).real();
    r.add("H=Ik omega^2", "<Psi+| Ik omega^2 |Psi+> = <Psi+| H |Psi+>", "moment-of-inertia",
          std::abs(lhs - h), tol.bound(scale));
  }
  return r;
}

std::vector<RobinsonPoint> robinson_circle_samples(const FourMomentum& fm, double s,
                                                   std::size_t n_samples, std::size_t n_frames,
                                                   double dt) {
  if (fm.mass() != 0.0) throw DomainError("Robinson circles are defined for m = 0 only");
  if (s == 0.0 || !std::isfinite(s)) throw DomainError("Robinson circles need helicity s != 0");
  if (n_samples < 3) throw DomainError("need at least 3 samples per circle");
  if (n_frames < 1) throw DomainError("need at least one frame");

  const FrameTriad triad = build_triad(fm.momentum());
  const double radius = std::abs(robinson_radius(s, fm.p_mag()));
  const double step = dt > 0.0 ? dt : radius / 8.0;
  const double rate = (s > 0.0 ? 1.0 : -1.0) * fm.p_mag();

  std::vector<RobinsonPoint> out;
  out.reserve(n_samples * n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const double t = static_cast<double>(f) * step;
    const Vec3 centre = t * triad.n;
    for (std::size_t k = 0; k < n_samples; ++k) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(n_samples) +
                           rate * t;
      const Vec3 x = centre + radius * (std::cos(phase) * triad.m + std::sin(phase) * triad.l);
      out.push_back({f, t, x.x, x.y, x.z, phase});
    }
  }
  return out;
}

}  // namespace evenspin
