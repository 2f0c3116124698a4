#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "evenspin/errors.hpp"
#include "evenspin/even_spin.hpp"
#include "evenspin/extended.hpp"
#include "evenspin/little_algebra.hpp"
#include "oracle.hpp"

using namespace evenspin;
using testing::comm;
using testing::dot3;
using testing::naive_product;
using testing::oracle;

namespace {

CMatrix oracle_gamma5() {
  CMatrix g(4, 4);
  g(0, 2) = g(1, 3) = g(2, 0) = g(3, 1) = -1.0;
  return g;
}

std::array<CMatrix, 3> oracle_omega(const Vec3& p) {
  const CMatrix g5 = oracle_gamma5();
  return {(-2.0 * p.x) * g5, (-2.0 * p.y) * g5, (-2.0 * p.z) * g5};
}

}  // namespace

TEST_SUITE("extended") {

TEST_CASE("precession i[H,S] = omega x S") {
  testing::Rand rng(51);
  for (int i = 0; i < 50; ++i) {
    const FourMomentum fm = rng.momentum(0.0, 3.0);
    const CMatrix h = oracle().hamiltonian(fm.mass(), fm.momentum());
    const auto w = oracle_omega(fm.momentum());
    for (std::size_t a = 0; a < 3; ++a) {
      CMatrix rhs(4, 4);
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t c = 0; c < 3; ++c)
          if (levi_civita(a, b, c) != 0)
            rhs += double(levi_civita(a, b, c)) * naive_product(w[b], oracle().spin[c]);
      CHECK(max_abs_diff(kI * comm(h, oracle().spin[a]), rhs) <= 1e-11);
    }
    const DiracOperatorSet d = build_dirac_set(fm);
    const auto lib = angular_velocity(d, fm);
    for (std::size_t k = 0; k < 3; ++k) CHECK(max_abs_diff(lib[k], w[k]) <= 1e-15);
    CHECK(verify_precession(d, fm, Tolerance::absolute(1e-11)).all_pass());
  }
}

TEST_CASE("even angular velocity and the Hamiltonian identities") {
  testing::Rand rng(52);
  for (int i = 0; i < 50; ++i) {
    const FourMomentum fm = rng.momentum(0.1, 3.0);
    const DiracOperatorSet d = build_dirac_set(fm);
    const ExtendedQuantities eq = build_even_velocity_set(d, fm);
    const CMatrix h = oracle().hamiltonian(fm.mass(), fm.momentum());
    const CMatrix lam = h * (1.0 / fm.energy());
    const auto w = oracle_omega(fm.momentum());
    const auto sp = oracle().even_spin(fm.mass(), fm.momentum());
    for (std::size_t k = 0; k < 3; ++k) {
      const CMatrix even = 0.5 * (w[k] + naive_product(naive_product(lam, w[k]), lam));
      CHECK(max_abs_diff(eq.Omega[k], even) <= 1e-12);
      CHECK(comm(eq.Omega[k], h).max_abs() <= 1e-11);
    }
    const double beta2 = dot(fm.momentum(), fm.momentum()) / (fm.energy() * fm.energy());
    CMatrix os(4, 4), osp(4, 4);
    for (std::size_t k = 0; k < 3; ++k) {
      os += naive_product(eq.Omega[k], oracle().spin[k]);
      osp += naive_product(eq.Omega[k], sp[k]);
    }
    CHECK(max_abs_diff(h, os * (1.0 / beta2)) <= 1e-11);
    CHECK(max_abs_diff(h, osp * (1.0 / beta2)) <= 1e-11);
    CHECK(verify_hamiltonian_identities(d, fm, eq, Tolerance::absolute(1e-11)).all_pass());
  }
  const FourMomentum rest = FourMomentum::make(1.0, {});
  CHECK_THROWS_AS(build_even_velocity_set(build_dirac_set(rest), rest), DomainError);
}

TEST_CASE("Omega approaches omega as m -> 0") {
  double previous = std::numeric_limits<double>::infinity();
  for (double m : {1.0, 0.1, 0.01, 0.001}) {
    const FourMomentum fm = FourMomentum::make(m, {0.0, 1.0, 1.0});
    const double dev = omega_deviation(build_even_velocity_set(build_dirac_set(fm), fm));
    CHECK(dev < previous);
    previous = dev;
  }
  const FourMomentum null = FourMomentum::make(0.0, {0.0, 1.0, 1.0});
  CHECK(omega_deviation(build_even_velocity_set(build_dirac_set(null), null)) <= 1e-15);
}

TEST_CASE("massless identities") {
  testing::Rand rng(53);
  for (int i = 0; i < 20; ++i) {
    const FourMomentum fm = FourMomentum::make(0.0, rng.vec(3.0));
    const DiracOperatorSet d = build_dirac_set(fm);
    const auto w = oracle_omega(fm.momentum());
    CMatrix ws(4, 4);
    for (std::size_t k = 0; k < 3; ++k) ws += naive_product(w[k], oracle().spin[k]);
    CHECK(max_abs_diff(oracle().hamiltonian(0.0, fm.momentum()), ws) <= 1e-14);
    for (double s : {0.5, 1.0, 1.5, 2.0}) {
      const ExtendedQuantities eq = massless_extended_set(d, fm, s);
      CHECK(verify_massless_identities(d, fm, eq, Tolerance::absolute(1e-11)).all_pass());
    }
  }
  // <Psi+|Ik omega^2|Psi+> = |p| for the Dirac helicity-1/2 state.
  const FourMomentum fm = FourMomentum::make(0.0, {1.0, -2.0, 0.5});
  const DiracOperatorSet d = build_dirac_set(fm);
  const FrameTriad t = triad_for(fm);
  const EigenvectorReport hel =
      even_spin_eigenvectors(build_even_spin(d, fm, t), t.n, fm, t);
  const ExtendedQuantities eq = massless_extended_set(d, fm, 0.5);
  CMatrix w2(4, 4);
  for (const auto& wk : oracle_omega(fm.momentum())) w2 += naive_product(wk, wk);
  CHECK(std::abs(expectation(eq.Ik * w2, hel.psi_plus) - fm.p_mag()) <= 1e-11);
  const Report r = verify_massless_identities(d, fm, eq);
  REQUIRE(r.find("H=Ik omega^2") != nullptr);
  CHECK(r.find("H=Ik omega^2")->pass);

  const FourMomentum massive = FourMomentum::make(1.0, {0.0, 0.0, 1.0});
  CHECK_THROWS_AS(massless_extended_set(build_dirac_set(massive), massive, 0.5), DomainError);
}

TEST_CASE("Robinson radius") {
  for (double s : {0.5, 1.0, 1.5, 2.0})
    for (int e = -3; e <= 3; ++e) {
      const double p = 3.1 * std::pow(10.0, e);
      CHECK(std::abs(p * robinson_radius(s, p) - s) <= 4.0 * std::numeric_limits<double>::epsilon() * s);
    }
  CHECK(robinson_radius(-1.0, 2.0) == -0.5);
}

TEST_CASE("Robinson circle samples") {
  const FourMomentum fm = FourMomentum::make(0.0, {0.0, 0.0, 1.0});
  const auto pts = robinson_circle_samples(fm, 1.0, 64, 10);
  REQUIRE(pts.size() == 640);
  const double dt = 1.0 / 8.0;
  for (const auto& q : pts) {
    const double t = static_cast<double>(q.frame) * dt;
    CHECK(q.t == doctest::Approx(t));
    CHECK(std::hypot(q.x, q.y) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.z == doctest::Approx(t));
    CHECK(std::atan2(std::sin(q.phase), std::cos(q.phase)) ==
          doctest::Approx(std::atan2(q.y, q.x)).epsilon(1e-12));
  }
  // Rotation sense follows the helicity sign: the sample k = 0 turns by +|p| dt.
  const auto neg = robinson_circle_samples(fm, -1.0, 8, 2, 0.1);
  const auto pos = robinson_circle_samples(fm, 1.0, 8, 2, 0.1);
  const auto turn = [](const RobinsonPoint& a, const RobinsonPoint& b) { return a.x * b.y - a.y * b.x; };
  CHECK(turn(pos[0], pos[8]) > 0.0);
  CHECK(turn(neg[0], neg[8]) < 0.0);
  const auto small = robinson_circle_samples(FourMomentum::make(0.0, {4.0, 0.0, 0.0}), 0.5, 16, 1);
  for (const auto& q : small) CHECK(std::hypot(q.y, q.z) == doctest::Approx(0.125).epsilon(1e-14));

  CHECK_THROWS_AS(robinson_circle_samples(FourMomentum::make(1.0, {0.0, 0.0, 1.0}), 1.0, 8, 1), DomainError);
  CHECK_THROWS_AS(robinson_circle_samples(fm, 0.0, 8, 1), DomainError);
  CHECK_THROWS_AS(robinson_circle_samples(fm, 1.0, 2, 1), DomainError);
  CHECK_THROWS_AS(robinson_circle_samples(fm, 1.0, 8, 0), DomainError);
}

}
