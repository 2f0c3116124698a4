#pragma once

// Two Dirac particles with opposite momenta p and -p: the squared total even
// spin, the singlet in the helicity basis, the singlet correlation of the
// normalised spin observables a.Sp/|s_a|, and CHSH combinations of it.

#include <array>
#include <string>
#include <vector>

#include "evenspin/dirac.hpp"
#include "evenspin/little_algebra.hpp"
#include "evenspin/report.hpp"

namespace evenspin {

struct TwoParticleOperators {
  std::array<CMatrix, 3> Sp1;  // particle 1, momentum p
  std::array<CMatrix, 3> Sp2;  // particle 2, momentum -p
  CMatrix H_total;             // H1 x 1 + 1 x H2
  CMatrix total_sq;            // sum_k (Sp1_k x 1 + 1 x Sp2_k)^2, 16 x 16
};

TwoParticleOperators build_two_particle(const FourMomentum& fm);

/// (Sp1 x 1 + 1 x Sp2)^2 for particles at p and -p.
CMatrix build_two_particle_even_spin(const FourMomentum& fm);

/// Closed-form spectrum of the squared total even spin:
/// {0 (x4), 2 m^2/p0^2 (x4), 1 + m^2/p0^2 (x8)}, as (value, multiplicity)
/// pairs in ascending order.
std::vector<std::pair<double, std::size_t>> two_particle_spectrum_closed_form(
    const FourMomentum& fm);

/// Positive-energy single-particle states with spin +-1/2 along the global
/// axis n = p/|p| (helicity for particle 1, minus helicity for particle 2).
/// Both particles use the same two-spinors w(+-), (n.sigma) w(+-) = +-w(+-).
struct HelicityBasis {
  CMatrix p1_plus;
  CMatrix p1_minus;
  CMatrix p2_plus;
  CMatrix p2_minus;

  /// The basis with the + and - labels exchanged.
  HelicityBasis swapped() const { return {p1_minus, p1_plus, p2_minus, p2_plus}; }
};

/// At rest the axis defaults to z.
HelicityBasis helicity_basis(const FourMomentum& fm);

struct TwoParticleState {
  CMatrix amplitudes;  // 16 x 1, particle 1 is the slow index
  double norm() const;
};

/// (Psi+ x Psi- - Psi- x Psi+)/sqrt(2)
TwoParticleState singlet_from(const HelicityBasis& basis);
TwoParticleState singlet_state(const FourMomentum& fm);

/// total_sq restricted to {Psi+Psi+, Psi+Psi-, Psi-Psi+, Psi-Psi-} with the
/// checks on its block pattern.
struct HelicityBlock {
  CMatrix block;  // 4 x 4
  Report checks;
};
HelicityBlock helicity_block_matrix(const FourMomentum& fm, const Tolerance& tol = {});

struct BellSetting {
  Vec3 a;
  Vec3 b;
};

struct Correlation {
  double E_formula;
  double E_numeric;
};

/// E_numeric = <Psi| (a.Sp1/|s_a|) x (b.Sp2/|s_b|) |Psi> by direct 16-dim
/// contraction; E_formula = -(a_par.b_par + (m^2/p0^2) a_perp.b_perp) /
/// (4 |s_a s_b|) with par/perp taken against particle 1's momentum.
/// Throws DomainError when s_a or s_b vanishes (massless, direction orthogonal
/// to p); ContractError for non-unit directions.
Correlation bell_correlation(const FourMomentum& fm, const BellSetting& setting);

/// Unit vector with polar angle theta from triad.n and azimuth phi from
/// triad.m towards triad.l (radians).
Vec3 direction_from_angles(const FrameTriad& triad, double theta, double phi);

struct ChshSetting {
  Vec3 a;
  Vec3 a_prime;
  Vec3 b;
  Vec3 b_prime;
};

struct ChshRow {
  ChshSetting setting;
  bool valid{false};
  double S{0.0};  // |E(a,b) - E(a,b') + E(a',b) + E(a',b')|
  bool violation{false};  // S > 2
  std::string note;       // reason when invalid
};

std::vector<ChshRow> chsh_scan(const FourMomentum& fm, const std::vector<ChshSetting>& settings);

enum class AnalyzerPlane { perpendicular, n_m };

/// Polar/azimuthal angles (radians) of one analyzer direction.
struct AnalyzerAngles {
  double theta;
  double phi;
};

/// Angles of the in-plane direction at `angle` (radians): the perpendicular
/// plane uses theta = pi/2, phi = angle; the n-m plane uses theta = angle,
/// phi = 0 (angles past pi fold to phi = pi).
AnalyzerAngles plane_angles(AnalyzerPlane plane, double angle);

/// CHSH settings a = t, a' = t + 90deg, b = t + 45deg, b' = t + 135deg for
/// offsets t = 0, step, 2 step, ... < 360deg in the given plane.
struct ChshGridRow {
  std::array<AnalyzerAngles, 4> angles;  // a, a', b, b'
  ChshSetting setting;
};
std::vector<ChshGridRow> chsh_grid(const FrameTriad& triad, AnalyzerPlane plane, double step);

}  // namespace evenspin
