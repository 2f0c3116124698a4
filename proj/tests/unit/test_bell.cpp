#include <doctest.h>

#include <cmath>
#include <numbers>

#include "evenspin/bell.hpp"
#include "evenspin/errors.hpp"
#include "evenspin/even_spin.hpp"
#include "evenspin/numkernel/linalg.hpp"
#include "oracle.hpp"

using namespace evenspin;
using testing::dot3;
using testing::naive_product;
using testing::oracle;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double formula(const FourMomentum& fm, const Vec3& a, const Vec3& b) {
  const Vec3 n = fm.direction();
  const double c = fm.contraction_param();
  const double ap = dot(a, n), bp = dot(b, n);
  const double perp = dot(a, b) - ap * bp;
  const double p = fm.p_mag(), m = fm.mass(), p0 = fm.energy();
  const double sa = 0.5 * std::sqrt(p * p * ap * ap + m * m) / p0;
  const double sb = 0.5 * std::sqrt(p * p * bp * bp + m * m) / p0;
  return -(ap * bp + c * perp) / (4.0 * sa * sb);
}

// Singlet built from scratch: u(chi) = (sqrt(p0+m) chi, sqrt(p0-m) (sigma.n) chi).
CMatrix oracle_singlet(const FourMomentum& fm) {
  const Vec3 n = fm.direction();
  const auto& o = oracle();
  const CMatrix sn = dot3(n, o.sigma);
  // (n.sigma) w = +-w, phase fixed by making the first non-zero entry real positive
  const SpinSpectrum hel = hermitian_eigensystem(sn);
  const CMatrix w[2] = {hel.eigenvectors.col(1), hel.eigenvectors.col(0)};  // +, -
  auto u = [&](const Vec3& dir, const CMatrix& chi) {
    const CMatrix lower = naive_product(dot3(dir, o.sigma), chi);
    CMatrix v(4, 1);
    const double p0 = fm.energy(), m = fm.mass();
    for (std::size_t i = 0; i < 2; ++i) {
      v(i, 0) = std::sqrt(p0 + m) * chi(i, 0);
      v(i + 2, 0) = std::sqrt(p0 - m) * lower(i, 0);
    }
    return v * (1.0 / std::sqrt(inner(v, v).real()));
  };
  const CMatrix p1p = u(n, w[0]), p1m = u(n, w[1]), p2p = u(-n, w[0]), p2m = u(-n, w[1]);
  return (kron(p1p, p2m) - kron(p1m, p2p)) * (1.0 / std::sqrt(2.0));
}

double oracle_correlation(const FourMomentum& fm, const Vec3& a, const Vec3& b) {
  const auto s1 = oracle().even_spin(fm.mass(), fm.momentum());
  const auto s2 = oracle().even_spin(fm.mass(), -fm.momentum());
  const CMatrix A = dot3(a, s1);
  const CMatrix B = dot3(b, s2);
  const double sa = hermitian_eigensystem(A).eigenvalues.back();
  const double sb = hermitian_eigensystem(B).eigenvalues.back();
  const CMatrix psi = oracle_singlet(fm);
  return expectation(kron(A, B), psi).real() / (sa * sb);
}

}  // namespace

TEST_SUITE("bell") {

TEST_CASE("two-particle spectrum") {
  const FourMomentum fm = FourMomentum::make(1.0, {0.0, 0.0, 2.0});
  const SpinSpectrum s = hermitian_eigensystem(build_two_particle_even_spin(fm));
  REQUIRE(s.clusters.size() == 3);
  const double values[3] = {0.0, 0.4, 1.2};
  const std::size_t mult[3] = {4, 4, 8};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(s.clusters[i].value - values[i]) <= 1e-11);
    CHECK(s.clusters[i].multiplicity == mult[i]);
  }
  const auto closed = two_particle_spectrum_closed_form(fm);
  CHECK(closed[1].first == doctest::Approx(0.4));
  CHECK(closed[2].second == 8);

  testing::Rand rng(61);
  for (int i = 0; i < 20; ++i) {
    const FourMomentum f = rng.momentum(0.1, 3.0);
    // Oracle: (S1 + S2)^2 from independently built single-particle operators.
    const auto s1 = oracle().even_spin(f.mass(), f.momentum());
    const auto s2 = oracle().even_spin(f.mass(), -f.momentum());
    CMatrix total(16, 16);
    for (std::size_t k = 0; k < 3; ++k) {
      const CMatrix t = kron(s1[k], CMatrix::identity(4)) + kron(CMatrix::identity(4), s2[k]);
      total += naive_product(t, t);
    }
    CHECK(max_abs_diff(total, build_two_particle_even_spin(f)) <= 1e-12);
    const double c = f.contraction_param();
    std::vector<double> expected(4, 0.0);
    expected.insert(expected.end(), 4, 2.0 * c);
    expected.insert(expected.end(), 8, 1.0 + c);
    std::sort(expected.begin(), expected.end());
    const auto ev = hermitian_eigensystem(total).eigenvalues;
    for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(ev[k] - expected[k]) <= 1e-11);
  }
}

TEST_CASE("singlet and helicity block") {
  testing::Rand rng(62);
  for (int i = 0; i < 20; ++i) {
    const FourMomentum fm = rng.momentum(0.1, 3.0);
    const TwoParticleOperators ops = build_two_particle(fm);
    const TwoParticleState psi = singlet_state(fm);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((ops.total_sq * psi.amplitudes).max_abs() <= 1e-11);
    CHECK(max_abs_diff(psi.amplitudes, oracle_singlet(fm)) <= 1e-12);
    const HelicityBlock hb = helicity_block_matrix(fm);
    CHECK(hb.checks.all_pass());
    // The singlet is the unique null vector of the block.
    const SpinSpectrum bs = hermitian_eigensystem(hb.block);
    CHECK(std::abs(bs.eigenvalues[0]) <= 1e-11);
    CHECK(bs.eigenvalues[1] > 1e-3);
  }
  // Swapping the helicity labels only flips the sign of the singlet.
  const FourMomentum fm = FourMomentum::make(1.0, {0.0, 1.0, 1.0});
  const TwoParticleState a = singlet_from(helicity_basis(fm));
  const TwoParticleState b = singlet_from(helicity_basis(fm).swapped());
  CHECK(max_abs_diff(a.amplitudes, -b.amplitudes) <= 1e-15);
  const TwoParticleState rest = singlet_state(FourMomentum::make(1.0, {}));
  CHECK((build_two_particle_even_spin(FourMomentum::make(1.0, {})) * rest.amplitudes).max_abs() <= 1e-12);
}

TEST_CASE("correlation: closed form, oracle and contraction agree") {
  const FourMomentum fm = FourMomentum::make(1.0, {0.0, 0.0, 2.0});
  const Vec3 n{0.0, 0.0, 1.0}, m{1.0, 0.0, 0.0};
  const Correlation c = bell_correlation(fm, {normalized(n + m), normalized(n - m)});
  CHECK(std::abs(c.E_formula + 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(c.E_numeric + 2.0 / 3.0) <= 1e-12);

  testing::Rand rng(63);
  for (int i = 0; i < 200; ++i) {
    const FourMomentum f = rng.momentum(0.1, 3.0);
    const Vec3 a = rng.unit(), b = rng.unit();
    const Correlation k = bell_correlation(f, {a, b});
    CHECK(std::abs(k.E_formula - k.E_numeric) <= 1e-10);
    CHECK(std::abs(k.E_formula - formula(f, a, b)) <= 1e-12);
    if (i < 30) CHECK(std::abs(k.E_numeric - oracle_correlation(f, a, b)) <= 1e-10);
  }
}

TEST_CASE("perpendicular plane gives -cos independent of momentum") {
  for (double p : {0.1, 2.0, 50.0})
    for (double theta_deg : {0.0, 30.0, 90.0, 135.0, 200.0}) {
      const FourMomentum fm = FourMomentum::make(1.0, {p, 0.0, 0.0});
      const FrameTriad t = triad_for(fm);
      const Vec3 a = direction_from_angles(t, std::numbers::pi / 2, 0.0);
      const Vec3 b = direction_from_angles(t, std::numbers::pi / 2, theta_deg * kDeg);
      const Correlation c = bell_correlation(fm, {a, b});
      CHECK(std::abs(c.E_numeric + std::cos(theta_deg * kDeg)) <= 1e-10);
    }
}

TEST_CASE("particle 2's own decomposition gives the same closed form") {
  // For back-to-back momenta the par/perp split against -n equals the split
  // against n, so both conventions coincide.
  testing::Rand rng(64);
  for (int i = 0; i < 20; ++i) {
    const FourMomentum fm = rng.momentum(0.1, 3.0);
    const Vec3 a = rng.unit(), b = rng.unit();
    const Vec3 n2 = fm.reversed().direction();
    const Vec3 b_par = dot(b, n2) * n2;
    const Vec3 a_par = dot(a, fm.direction()) * fm.direction();
    const double own = -(dot(a_par, b_par) + fm.contraction_param() * dot(a - a_par, b - b_par)) /
                       (4.0 * even_spin_eigenvalue(fm, a) * even_spin_eigenvalue(fm, b));
    CHECK(std::abs(own - bell_correlation(fm, {a, b}).E_numeric) <= 1e-10);
  }
}

TEST_CASE("correlation domain") {
  const FourMomentum null = FourMomentum::make(0.0, {0.0, 0.0, 1.0});
  CHECK_THROWS_AS(bell_correlation(null, {{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}), DomainError);
  CHECK_NOTHROW(bell_correlation(null, {normalized(Vec3{1.0, 0.0, 1.0}), {0.0, 0.0, 1.0}}));
  const FourMomentum fm = FourMomentum::make(1.0, {0.0, 0.0, 2.0});
  CHECK_THROWS_AS(bell_correlation(fm, {{2.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}), ContractError);
  // At rest the correlation is -a.b.
  const FourMomentum rest = FourMomentum::make(1.0, {});
  const Vec3 a = normalized(Vec3{1.0, 2.0, 3.0}), b = normalized(Vec3{-1.0, 0.5, 0.2});
  CHECK(std::abs(bell_correlation(rest, {a, b}).E_numeric + dot(a, b)) <= 1e-12);
}

TEST_CASE("plane angles and direction convention") {
  const FrameTriad t = build_triad({0.0, 0.0, 1.0});
  const AnalyzerAngles perp = plane_angles(AnalyzerPlane::perpendicular, 1.0);
  CHECK(perp.theta == doctest::Approx(std::numbers::pi / 2));
  CHECK(perp.phi == doctest::Approx(1.0));
  const AnalyzerAngles nm = plane_angles(AnalyzerPlane::n_m, 0.5);
  CHECK(nm.theta == doctest::Approx(0.5));
  CHECK(nm.phi == 0.0);
  for (double ang : {0.3, 2.0, 3.5, 5.9}) {
    const AnalyzerAngles f = plane_angles(AnalyzerPlane::n_m, ang);
    const Vec3 d = direction_from_angles(t, f.theta, f.phi);
    CHECK(norm(d - (std::cos(ang) * t.n + std::sin(ang) * t.m)) <= 1e-14);
    CHECK(f.theta >= 0.0);
    CHECK(f.theta <= std::numbers::pi);
  }
  CHECK(norm(direction_from_angles(t, 0.0, 0.0) - t.n) <= 1e-15);
  CHECK(norm(direction_from_angles(t, std::numbers::pi / 2, std::numbers::pi / 2) - t.l) <= 1e-15);
}

TEST_CASE("CHSH") {
  const FourMomentum fm = FourMomentum::make(1.0, {0.0, 0.0, 2.0});
  const FrameTriad t = triad_for(fm);
  const auto perp = chsh_grid(t, AnalyzerPlane::perpendicular, 5.0 * kDeg);
  REQUIRE(perp.size() == 72);
  CHECK(perp[0].angles[1].phi == doctest::Approx(90.0 * kDeg));
  CHECK(perp[0].angles[2].phi == doctest::Approx(45.0 * kDeg));
  CHECK(perp[0].angles[3].phi == doctest::Approx(135.0 * kDeg));
  std::vector<ChshSetting> settings;
  for (const auto& r : perp) settings.push_back(r.setting);
  for (const auto& row : chsh_scan(fm, settings)) {
    REQUIRE(row.valid);
    CHECK(std::abs(row.S - 2.0 * std::sqrt(2.0)) <= 1e-9);
    CHECK(row.violation);
  }

  // n-m plane at offset 0: value from an independent closed-form evaluation.
  const auto nm = chsh_grid(t, AnalyzerPlane::n_m, 5.0 * kDeg);
  const auto rows = chsh_scan(fm, {nm[0].setting});
  CHECK(std::abs(rows[0].S - 2.6422384392782794) <= 1e-12);

  // Massless: perpendicular analyzers have no normalised observable.
  const FourMomentum null = FourMomentum::make(0.0, {0.0, 0.0, 1.0});
  const auto invalid = chsh_scan(null, {perp[0].setting});
  CHECK_FALSE(invalid[0].valid);
  CHECK_FALSE(invalid[0].note.empty());
  CHECK_THROWS_AS(chsh_grid(t, AnalyzerPlane::n_m, 0.0), DomainError);
}

}
