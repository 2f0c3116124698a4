#include "evenspin/bell.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "evenspin/errors.hpp"
#include "evenspin/even_spin.hpp"
#include "evenspin/numkernel/linalg.hpp"

namespace evenspin {

namespace {

constexpr double kVanishingSpin = 1e-12;

Vec3 axis_of(const FourMomentum& fm) { return fm.at_rest() ? Vec3{0.0, 0.0, 1.0} : fm.direction(); }

// Normalised (sqrt(p0+m) chi, sqrt(p0-m) (sigma.n) chi).
CMatrix positive_energy_spinor(const FourMomentum& fm, const Vec3& n, const CMatrix& chi) {
  const CMatrix lower = dot(n, pauli()) * chi;
  const double su = std::sqrt(fm.energy() + fm.mass());
  // sqrt(p0 - m) without the cancellation at small |p|
  const double sl = fm.p_mag() / su;
  CMatrix v(4, 1);
  for (std::size_t i = 0; i < 2; ++i) {
    v(i, 0) = su * chi(i, 0);
    v(i + 2, 0) = sl * lower(i, 0);
  }
  return v * (1.0 / std::sqrt(inner(v, v).real()));
}

void require_unit(const Vec3& a, const char* what) {
  if (std::abs(norm(a) - 1.0) > 1e-12) {
    throw ContractError(fmt::format("{} must be a unit vector (|{}| = {:.15g})", what, what, norm(a)));
  }
}

double correlation_numeric(const TwoParticleOperators& ops, const TwoParticleState& psi,
                           const Vec3& a, const Vec3& b, double s_a, double s_b) {
  const CMatrix obs = kron(dot(a, ops.Sp1) * (1.0 / s_a), dot(b, ops.Sp2) * (1.0 / s_b));
  return expectation(obs, psi.amplitudes).real();
}

double correlation_formula(const FourMomentum& fm, const Vec3& a, const Vec3& b, double s_a,
                           double s_b) {
  const Vec3 n = axis_of(fm);
  const Vec3 a_par = dot(a, n) * n;
  const Vec3 b_par = dot(b, n) * n;
  return -(dot(a_par, b_par) + fm.contraction_param() * dot(a - a_par, b - b_par)) /
         (4.0 * std::abs(s_a * s_b));
}

Correlation correlate(const FourMomentum& fm, const TwoParticleOperators& ops,
                      const TwoParticleState& psi, const Vec3& a, const Vec3& b) {
  require_unit(a, "a");
  require_unit(b, "b");
  const double s_a = even_spin_eigenvalue(fm, a);
  const double s_b = even_spin_eigenvalue(fm.reversed(), b);
  if (s_a < kVanishingSpin || s_b < kVanishingSpin) {
    throw DomainError("normalized observable undefined: s_a or s_b vanishes (m = 0, direction "
                      "orthogonal to p)");
  }
  return {correlation_formula(fm, a, b, s_a, s_b), correlation_numeric(ops, psi, a, b, s_a, s_b)};
}

}  // namespace

TwoParticleOperators build_two_particle(const FourMomentum& fm) {
  const FourMomentum fm2 = fm.reversed();
  const DiracOperatorSet d1 = build_dirac_set(fm);
  const DiracOperatorSet d2 = build_dirac_set(fm2);
  const CMatrix one = CMatrix::identity(4);

  TwoParticleOperators ops;
  ops.total_sq = CMatrix::zeros(16, 16);
  for (std::size_t k = 0; k < 3; ++k) {
    ops.Sp1[k] = even_part(d1.spin[k], d1);
    ops.Sp2[k] = even_part(d2.spin[k], d2);
    const CMatrix total = kron(ops.Sp1[k], one) + kron(one, ops.Sp2[k]);
    ops.total_sq += total * total;
  }
  ops.H_total = kron(d1.H, one) + kron(one, d2.H);
  return ops;
}

CMatrix build_two_particle_even_spin(const FourMomentum& fm) {
  return build_two_particle(fm).total_sq;
}

std::vector<std::pair<double, std::size_t>> two_particle_spectrum_closed_form(
    const FourMomentum& fm) {
  const double c = fm.contraction_param();
  return {{0.0, 4}, {2.0 * c, 4}, {1.0 + c, 8}};
}

HelicityBasis helicity_basis(const FourMomentum& fm) {
  const Vec3 n = axis_of(fm);
  const SpinSpectrum hel = hermitian_eigensystem(dot(n, pauli()));
  const CMatrix w_minus = hel.eigenvectors.col(0);
  const CMatrix w_plus = hel.eigenvectors.col(1);
  return {positive_energy_spinor(fm, n, w_plus), positive_energy_spinor(fm, n, w_minus),
          positive_energy_spinor(fm, -n, w_plus), positive_energy_spinor(fm, -n, w_minus)};
}

double TwoParticleState::norm() const { return std::sqrt(inner(amplitudes, amplitudes).real()); }

TwoParticleState singlet_from(const HelicityBasis& basis) {
  CMatrix psi = kron(basis.p1_plus, basis.p2_minus);
  psi -= kron(basis.p1_minus, basis.p2_plus);
  psi *= 1.0 / std::numbers::sqrt2;
  return {std::move(psi)};
}

TwoParticleState singlet_state(const FourMomentum& fm) { return singlet_from(helicity_basis(fm)); }

HelicityBlock helicity_block_matrix(const FourMomentum& fm, const Tolerance& tol) {
  const HelicityBasis hb = helicity_basis(fm);
  const CMatrix total_sq = build_two_particle_even_spin(fm);
  const std::array<CMatrix, 4> basis{kron(hb.p1_plus, hb.p2_plus), kron(hb.p1_plus, hb.p2_minus),
                                     kron(hb.p1_minus, hb.p2_plus),
                                     kron(hb.p1_minus, hb.p2_minus)};
  HelicityBlock out;
  out.block = CMatrix(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out.block(i, j) = inner(basis[i], total_sq * basis[j]);

  const double c = fm.contraction_param();
  const std::vector<cplx> diag{1.0 + c, c, c, 1.0 + c};
  CMatrix expected = CMatrix::diagonal(diag);
  expected(1, 2) = c;
  expected(2, 1) = c;
  out.checks.add("helicity-block", "block = [[1+c,0,0,0],[0,c,c,0],[0,c,c,0],[0,0,0,1+c]], c = m^2/p0^2",
                 "two-particle-even-spin", max_abs_diff(out.block, expected), tol.bound(1.0 + c));
  return out;
}

Correlation bell_correlation(const FourMomentum& fm, const BellSetting& setting) {
  const TwoParticleOperators ops = build_two_particle(fm);
  return correlate(fm, ops, singlet_state(fm), setting.a, setting.b);
}

Vec3 direction_from_angles(const FrameTriad& triad, double theta, double phi) {
  const double st = std::sin(theta);
  return std::cos(theta) * triad.n + st * std::cos(phi) * triad.m + st * std::sin(phi) * triad.l;
}

std::vector<ChshRow> chsh_scan(const FourMomentum& fm, const std::vector<ChshSetting>& settings) {
  const TwoParticleOperators ops = build_two_particle(fm);
  const TwoParticleState psi = singlet_state(fm);
  std::vector<ChshRow> rows;
  rows.reserve(settings.size());
  for (const auto& st : settings) {
    ChshRow row;
    row.setting = st;
    try {
      const double e_ab = correlate(fm, ops, psi, st.a, st.b).E_numeric;
      const double e_abp = correlate(fm, ops, psi, st.a, st.b_prime).E_numeric;
      const double e_apb = correlate(fm, ops, psi, st.a_prime, st.b).E_numeric;
      const double e_apbp = correlate(fm, ops, psi, st.a_prime, st.b_prime).E_numeric;
      row.S = std::abs(e_ab - e_abp + e_apb + e_apbp);
      row.violation = row.S > 2.0;
      row.valid = true;
    } catch (const DomainError& e) {
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

AnalyzerAngles plane_angles(AnalyzerPlane plane, double angle) {
  const double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(angle, two_pi);
  if (t < 0.0) t += two_pi;
  if (plane == AnalyzerPlane::perpendicular) return {std::numbers::pi / 2.0, t};
  if (t <= std::numbers::pi) return {t, 0.0};
  return {two_pi - t, std::numbers::pi};
}

std::vector<ChshGridRow> chsh_grid(const FrameTriad& triad, AnalyzerPlane plane, double step) {
  if (!(step > 0.0)) throw DomainError("chsh_grid: step must be positive");
  const double deg = std::numbers::pi / 180.0;
  const double offsets[4] = {0.0, 90.0 * deg, 45.0 * deg, 135.0 * deg};  // a, a', b, b'
  std::vector<ChshGridRow> rows;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * step;
    if (t >= two_pi - 1e-12) break;
    ChshGridRow row;
    std::array<Vec3, 4> dirs;
    for (std::size_t i = 0; i < 4; ++i) {
      row.angles[i] = plane_angles(plane, t + offsets[i]);
      dirs[i] = direction_from_angles(triad, row.angles[i].theta, row.angles[i].phi);
    }
    row.setting = {dirs[0], dirs[1], dirs[2], dirs[3]};
    rows.push_back(row);
  }
  return rows;
}

}  // namespace evenspin
