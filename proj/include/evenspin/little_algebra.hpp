#pragma once

// Little-group generators L = J - (p/p0) x K of a timelike or null
// four-momentum, in the four-vector and bispinor representations, and the
// contraction of their algebra from su(2) (rest frame) to e(2).

#include <array>
#include <cstddef>
#include <vector>

#include "evenspin/dirac.hpp"
#include "evenspin/numkernel/cmatrix.hpp"
#include "evenspin/numkernel/tolerance.hpp"
#include "evenspin/report.hpp"
#include "evenspin/vec3.hpp"

namespace evenspin {

/// Right-handed orthonormal frame (m, l, n) with n along the momentum and
/// l = n x m. Vector components are taken as A_1 = A.m, A_2 = A.l, A_3 = A.n.
struct FrameTriad {
  Vec3 m;
  Vec3 l;
  Vec3 n;

  const Vec3& axis(std::size_t i) const { return i == 0 ? m : (i == 1 ? l : n); }
  /// Components of `v` in this frame.
  Vec3 components(const Vec3& v) const { return {dot(v, m), dot(v, l), dot(v, n)}; }
  /// Lab vector with the given frame components.
  Vec3 from_components(const Vec3& c) const { return c.x * m + c.y * l + c.z * n; }
};

/// Deterministic triad for p != 0: n = p/|p|, m = Gram-Schmidt of a seed axis
/// (z if |n.z| < 0.9, else x) against n, l = n x m. Throws DomainError at p = 0.
FrameTriad build_triad(const Vec3& p);
/// Triad for p != 0 whose m is the component of `m_hint` orthogonal to n.
FrameTriad build_triad(const Vec3& p, const Vec3& m_hint);
/// Canonical rest-frame triad (x, y, z).
FrameTriad rest_triad();
/// build_triad(p) for moving particles, rest_triad() at rest.
FrameTriad triad_for(const FourMomentum& fm);
/// The triad rotated by `angle` (radians) about its n axis.
FrameTriad rotated_about_n(const FrameTriad& t, double angle);
/// Max deviation from orthonormality / right-handedness.
double triad_residual(const FrameTriad& t);

enum class Representation { four_vector, bispinor };

/// Rotation and boost generators J, K. In the four-vector representation they
/// act on (p^0, p^1, p^2, p^3) with L(mu, nu) p = i (nu.p, nu p0 + mu x p);
/// in the bispinor representation J = S and K = (i/2) alpha.
struct LorentzGenerators {
  std::array<CMatrix, 3> J;
  std::array<CMatrix, 3> K;
  Representation rep;
};

LorentzGenerators four_vector_generators();
LorentzGenerators bispinor_generators();
LorentzGenerators generators(Representation rep);

/// Triad components (L1, L2, L3) of the little-group generators.
struct LittleGenerators {
  std::array<CMatrix, 3> L;
  double contraction_param{1.0};  // m^2 / p0^2
};

/// L1 = J.m + (K.l)|p|/p0, L2 = J.l - (K.m)|p|/p0, L3 = J.n.
/// Throws DomainError when triad.n is not the momentum direction.
LittleGenerators little_generators(const LorentzGenerators& gens, const FourMomentum& fm,
                                   const FrameTriad& triad);

/// [L1,L2] = i (m^2/p0^2) L3, [L3,L1] = i L2, [L2,L3] = i L1.
Report verify_little_algebra(const LittleGenerators& lg, const Tolerance& tol = {});

/// Little-group invariance in the four-vector representation: with
/// nu = -mu x p / p0, Lambda = exp(-i(mu.J + nu.K)) fixes p. Also checks the
/// infinitesimal action L(mu, nu) p = i (nu.p, nu p0 + mu x p) for the
/// invariant nu and for `nu_probe` (an arbitrary non-invariant nu).
Report verify_invariance(const LorentzGenerators& gens, const FourMomentum& fm, const Vec3& mu,
                         const Tolerance& tol = {}, const Vec3& nu_probe = {0.25, -0.5, 0.75});

/// L x L = i L - i (p/p0^2)(p.L), checked component by component in the
/// triad frame. Its n component is [L1,L2] = i (m^2/p0^2) L3.
Report verify_vector_bracket(const LittleGenerators& lg, const FourMomentum& fm,
                             const FrameTriad& triad, const Tolerance& tol = {});

/// Max residual of the reading L x L = i J - i (p/p0^2)(p.K). It holds only
/// at rest; kept as a diagnostic.
double jk_vector_bracket_residual(const LittleGenerators& lg, const LorentzGenerators& gens,
                                       const FourMomentum& fm, const FrameTriad& triad);

enum class ScanMode { mass_to_zero, momentum_to_infinity };

/// Logarithmic grid from `from` to `to` (either order), `steps` points.
struct ScanGrid {
  double fixed{1.0};  // |p| for mass_to_zero, m for momentum_to_infinity
  double from{1.0};
  double to{0.01};
  std::size_t steps{3};
};

std::vector<double> log_grid(double from, double to, std::size_t steps);

struct ContractionRow {
  double m;
  double p_mag;
  double contraction_param;
  double bracket_ratio;  // ||[L1,L2]||_F / ||L3||_F, bispinor representation
};

/// One row per grid point, in grid order. Momentum along z.
/// Throws DomainError unless the grid is positive and strictly monotone.
std::vector<ContractionRow> contraction_scan(ScanMode mode, const ScanGrid& grid);
/// Same, for an explicit list of scan values.
std::vector<ContractionRow> contraction_scan(ScanMode mode, double fixed,
                                             const std::vector<double>& values);

}  // namespace evenspin
