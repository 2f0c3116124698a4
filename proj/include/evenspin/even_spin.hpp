#pragma once

// The even spin operator Sp = (S + lambda S lambda)/2 of a free Dirac
// particle, its triad components, spectra and eigenvectors, and the
// Pauli-Lubanski vector on momentum eigenstates.

#include <array>
#include <string>
#include <vector>

#include "evenspin/dirac.hpp"
#include "evenspin/little_algebra.hpp"
#include "evenspin/numkernel/linalg.hpp"
#include "evenspin/report.hpp"

namespace evenspin {

/// The three independent constructions of Sp (lab components).
struct EvenSpinForms {
  std::array<CMatrix, 3> projector;        // (S + lambda S lambda)/2
  std::array<CMatrix, 3> closed;           // (m^2/p0^2) S + (|p|^2/p0^2)(n.S) n + (i m / 2p0^2) p x gamma
  std::array<CMatrix, 3> via_pauli_lubanski;  // W H^-1
};

EvenSpinForms even_spin_forms(const DiracOperatorSet& dset, const FourMomentum& fm);

/// Largest elementwise disagreement between the three forms.
double even_spin_forms_spread(const EvenSpinForms& forms);

struct EvenSpinSet {
  std::array<CMatrix, 3> Sp;          // lab components
  std::array<CMatrix, 3> components;  // (Sp1, Sp2, Sp3) = (m.Sp, l.Sp, n.Sp), closed triad form
  CMatrix W0;                         // S.p
  std::array<CMatrix, 3> W;           // (S H + H S)/2
  CMatrix H;
  FrameTriad triad;
};

/// Builds Sp three ways and the triad components from their closed form.
/// Throws InvariantViolation if the constructions disagree beyond 1e-11, and
/// DomainError if triad.n is not the momentum direction.
EvenSpinSet build_even_spin(const DiracOperatorSet& dset, const FourMomentum& fm,
                            const FrameTriad& triad);

/// |s_a| = sqrt((p.a)^2 + m^2) / (2 p0)
double even_spin_eigenvalue(const FourMomentum& fm, const Vec3& a);
/// |w_a| = p0 |s_a|
double pauli_lubanski_eigenvalue(const FourMomentum& fm, const Vec3& a);

/// Diagonalises a.Sp and checks the spectrum is {-s_a (x2), +s_a (x2)}
/// within `tol`. Throws InvariantViolation on mismatch, ContractError if a is
/// not a unit vector.
SpinSpectrum even_spin_spectrum(const EvenSpinSet& es, const Vec3& a, const FourMomentum& fm,
                                double tol = 1e-10);

/// Result of evaluating one reading of the closed eigenvector formula.
struct FormulaReading {
  std::string name;
  double eigen_residual;      // max over signs of ||(a.Sp) psi -+ s_a psi||
  double projector_residual;  // max over signs of || |psi><psi| - Pi+ E(+-s_a) Pi+ ||
  bool matches;
};

/// Positive-energy eigenvectors Psi(+-) of a.Sp from the closed formula in the
/// standard representation, with the numerically diagonalised spectrum as
/// ground truth.
///
/// The closed formula is evaluated under several readings of its w-partner
/// coefficient and inner sign. The helicity spinors w(+-) satisfy
/// (n.sigma) w(+-) = +-w(+-); the partner of w(+-) is (a_perp.sigma/|a_perp|) w(+-),
/// which fixes their relative phase. `literal_reading_fails` is set when the
/// literal reading fails; psi_plus/psi_minus come from the first matching
/// reading. For a.n < 0 the vectors are built as Psi(+-)(a) = Psi(-+)(-a).
struct EigenvectorReport {
  CMatrix psi_plus;
  CMatrix psi_minus;
  double s_a{0.0};
  std::vector<FormulaReading> readings;
  bool literal_reading_fails{false};
  std::string matched_reading;
};

/// Throws DomainError when s_a = 0 (massless, a orthogonal to p), and
/// InvariantViolation when no reading reproduces the numeric eigenspaces.
EigenvectorReport even_spin_eigenvectors(const EvenSpinSet& es, const Vec3& a,
                                         const FourMomentum& fm, const FrameTriad& triad);

/// Pauli-Lubanski vector on momentum eigenstates.
struct PauliLubanski {
  CMatrix W0;
  std::array<CMatrix, 3> W;
};

/// Throws InvariantViolation unless W_i H^-1 = Sp_i and [W_i, H] = 0.
PauliLubanski build_pauli_lubanski(const DiracOperatorSet& dset, const FourMomentum& fm);

/// Diagonalises a.W and checks the spectrum is {-p0 s_a (x2), +p0 s_a (x2)}.
SpinSpectrum pauli_lubanski_spectrum(const PauliLubanski& pl, const Vec3& a,
                                     const FourMomentum& fm, double tol = 1e-10);

/// Brackets of (Sp1, Sp2, Sp3), their hermiticity and conservation, and for
/// m = 0 the vanishing of the transverse components.
Report verify_even_spin_algebra(const EvenSpinSet& es, const FourMomentum& fm,
                                const Tolerance& tol = {});

struct MassMomentum {
  double m;
  double p_mag;
};

struct InequivalenceRow {
  double m;
  double p_mag;
  double s_perp;  // largest eigenvalue of a.Sp, a orthogonal to p
  double w_perp;  // largest eigenvalue of a.W
};

/// Perpendicular eigenvalues of Sp and W, diagonalised numerically, p along z
/// and a = x. Throws DomainError for negative values or m = |p| = 0.
std::vector<InequivalenceRow> limit_inequivalence_scan(const std::vector<MassMomentum>& points);

struct Polarization {
  CMatrix rho;        // (1/2) pslash (1 - gamma5 (zeta_par + zeta_perp.gamma_perp))
  double zeta_par;    // 2 <n.S>
  Vec3 zeta_perp;     // (2/m) <W - (W.n) n>
  double null_residual;  // max |(pslash rho)_ij|
};

/// Polarization parameters of a positive-energy state. Throws DomainError if
/// m = 0, the state is not unit-normalised, or it has a negative-energy part.
Polarization polarization_density(const DiracOperatorSet& dset, const FourMomentum& fm,
                                  const CMatrix& state, double tol = 1e-10);

/// (1/2) pslash (1 + sign gamma5) and max |(pslash rho)_ij|.
struct DensityMatrix {
  CMatrix rho;
  double null_residual;
};
DensityMatrix helicity_density_matrix(const DiracOperatorSet& dset, const FourMomentum& fm,
                                      int sign);

}  // namespace evenspin
