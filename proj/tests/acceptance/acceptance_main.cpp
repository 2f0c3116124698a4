// Acceptance suite: one line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "evenspin/bell.hpp"
#include "evenspin/cli.hpp"
#include "evenspin/even_spin.hpp"
#include "evenspin/extended.hpp"
#include "evenspin/little_algebra.hpp"
#include "evenspin/numkernel/linalg.hpp"

using namespace evenspin;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
  bool pass;
  std::string detail;
};

class Rand {
 public:
  explicit Rand(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  Vec3 vec(double half) { return {uniform(-half, half), uniform(-half, half), uniform(-half, half)}; }
  Vec3 unit() {
    for (;;) {
      const Vec3 v = vec(1.0);
      const double r = norm(v);
      if (r > 1e-3 && r <= 1.0) return (1.0 / r) * v;
    }
  }
  FourMomentum momentum(double m_lo, double m_hi) { return FourMomentum::make(uniform(m_lo, m_hi), vec(3.0)); }

 private:
  std::mt19937_64 g_;
};

double max_eig(const CMatrix& h) { return hermitian_eigensystem(h).eigenvalues.back(); }

// Directly computed brackets [L1,L2] - i c L3, [L3,L1] - i L2, [L2,L3] - i L1.
double bracket_residual(const LittleGenerators& lg, double c) {
  const auto& L = lg.L;
  double r = max_abs_diff(commutator(L[0], L[1]), (kI * c) * L[2]);
  r = std::max(r, max_abs_diff(commutator(L[2], L[0]), kI * L[1]));
  return std::max(r, max_abs_diff(commutator(L[1], L[2]), kI * L[0]));
}

Outcome little_algebra() {
  Rand rng(101);
  double worst = 0.0, worst_c = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FourMomentum fm = rng.momentum(0.0, 2.0);
    const double m = fm.mass();
    const Vec3& p = fm.momentum();
    const double c = m * m / (m * m + dot(p, p));
    for (auto rep : {Representation::four_vector, Representation::bispinor}) {
      const LittleGenerators lg = little_generators(generators(rep), fm, triad_for(fm));
      worst = std::max(worst, bracket_residual(lg, c));
      worst_c = std::max(worst_c, std::abs(lg.contraction_param - c));
    }
  }
  const FourMomentum ex = FourMomentum::make(1.0, {0.0, 0.0, 2.0});
  const LittleGenerators lg = little_generators(bispinor_generators(), ex, triad_for(ex));
  const double ex_err = std::abs(lg.contraction_param - 0.2);
  return {worst < 1e-10 && worst_c <= 1e-12 && ex_err <= 1e-12 && bracket_residual(lg, 0.2) < 1e-10,
          fmt::format("max bracket residual {:.2e} (< 1e-10), structure-constant error {:.2e}, "
                      "m=1 p=(0,0,2): {:.15g}",
                      worst, worst_c, lg.contraction_param)};
}

Outcome contraction_equivalence() {
  const std::vector<double> ratios = log_grid(1.0, 1e-3, 20);
  std::vector<double> inverse;
  for (double r : ratios) inverse.push_back(1.0 / r);
  const auto mass = contraction_scan(ScanMode::mass_to_zero, 1.0, ratios);
  const auto mom = contraction_scan(ScanMode::momentum_to_infinity, 1.0, inverse);
  double worst = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i)
    worst = std::max(worst, std::abs(mass[i].contraction_param - mom[i].contraction_param));
  return {worst <= 1e-14, fmt::format("{} rows, m/|p| from 1 to 1e-3, max |difference| {:.2e} (<= 1e-14)",
                                      ratios.size(), worst)};
}

Outcome invariance() {
  Rand rng(103);
  const LorentzGenerators g = four_vector_generators();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FourMomentum fm = rng.momentum(0.0, 2.0);
    const Vec3 mu = rng.uniform(0.0, 2.0) * rng.unit();
    const Vec3 nu = (-1.0 / fm.energy()) * cross(mu, fm.momentum());
    const CMatrix gen = dot(mu, g.J) + dot(nu, g.K);
    const CMatrix lambda = expm((-kI) * gen);
    const Vec3& p = fm.momentum();
    const CMatrix p4 = CMatrix::column(std::vector<cplx>{fm.energy(), p.x, p.y, p.z});
    worst = std::max(worst, (lambda * p4 - p4).frobenius_norm() / p4.frobenius_norm());
  }
  return {worst <= 1e-10, fmt::format("100 seeded (mu, p): max ||Lambda p - p|| / ||p|| = {:.2e} (<= 1e-10)", worst)};
}

Outcome even_spin_construction() {
  Rand rng(104);
  double spread = 0.0, comm_h = 0.0, herm = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FourMomentum fm = rng.momentum(0.0, 3.0);
    const DiracOperatorSet d = build_dirac_set(fm);
    const EvenSpinForms f = even_spin_forms(d, fm);
    spread = std::max(spread, even_spin_forms_spread(f));
    for (std::size_t k = 0; k < 3; ++k) {
      comm_h = std::max(comm_h, commutator(f.projector[k], d.H).max_abs());
      herm = std::max(herm, hermiticity_residual(f.projector[k]));
    }
  }
  return {spread <= 1e-11 && comm_h <= 1e-12 && herm <= 1e-12,
          fmt::format("projector/closed/W H^-1 spread {:.2e} (<= 1e-11), max |[Sp_i,H]| {:.2e} (<= 1e-12), "
                      "hermiticity {:.2e}",
                      spread, comm_h, herm)};
}

Outcome spectrum_law() {
  Rand rng(105);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FourMomentum fm = rng.momentum(0.0, 3.0);
    const Vec3 a = rng.unit();
    const EvenSpinForms f = even_spin_forms(build_dirac_set(fm), fm);
    const auto ev = hermitian_eigensystem(dot(a, f.projector)).eigenvalues;
    const double s = 0.5 * std::sqrt(std::pow(dot(fm.momentum(), a), 2) + fm.mass() * fm.mass()) / fm.energy();
    const double expected[4] = {-s, -s, s, s};
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(ev[k] - expected[k]));
  }
  const FourMomentum rest = FourMomentum::make(1.5, {});
  const EvenSpinForms fr = even_spin_forms(build_dirac_set(rest), rest);
  double rest_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto ev = hermitian_eigensystem(dot(rng.unit(), fr.projector)).eigenvalues;
    rest_err = std::max({rest_err, std::abs(ev.front() + 0.5), std::abs(ev.back() - 0.5)});
  }
  const FourMomentum ex = FourMomentum::make(1.0, {0.0, 0.0, 2.0});
  const double s_ex = max_eig(dot(Vec3{1.0, 0.0, 0.0}, even_spin_forms(build_dirac_set(ex), ex).projector));
  const bool ok = worst <= 1e-10 && rest_err <= 1e-12 && std::abs(s_ex - 0.2236068) <= 5e-8 &&
                  std::abs(s_ex - 0.5 / std::sqrt(5.0)) <= 1e-12;
  return {ok, fmt::format("100 seeded (m,p,a): max deviation {:.2e} (<= 1e-10); rest frame +-1/2 error {:.2e}; "
                          "m=1 p=(0,0,2) a perp p: +-{:.7f}",
                          worst, rest_err, s_ex)};
}

Outcome limit_inequivalence() {
  const auto rows = limit_inequivalence_scan({{1.0, 1.0}, {1.0, 10.0}, {1.0, 100.0}});
  double w_err = 0.0, s_err = 0.0;
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    w_err = std::max(w_err, std::abs(rows[i].w_perp - 0.5));
    s_err = std::max(s_err, std::abs(rows[i].s_perp - 0.5 / std::sqrt(1.0 + rows[i].p_mag * rows[i].p_mag)));
    if (i > 0 && !(rows[i].s_perp < rows[i - 1].s_perp)) decreasing = false;
  }
  return {w_err <= 1e-12 && s_err <= 1e-12 && decreasing,
          fmt::format("|p| = 1, 10, 100: w_perp = m/2 (error {:.2e}), s_perp = {:.4f}, {:.4f}, {:.4f} "
                      "(closed-form error {:.2e}), decreasing",
                      w_err, rows[0].s_perp, rows[1].s_perp, rows[2].s_perp, s_err)};
}

Outcome precession_and_hamiltonian() {
  Rand rng(107);
  double prec = 0.0, nh = 0.0;
  for (int i = 0; i < 50; ++i) {
    const FourMomentum fm = rng.momentum(0.1, 3.0);
    const DiracOperatorSet d = build_dirac_set(fm);
    const auto w = angular_velocity(d, fm);
    for (std::size_t a = 0; a < 3; ++a) {
      CMatrix rhs(4, 4);
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t c = 0; c < 3; ++c)
          if (levi_civita(a, b, c) != 0) rhs += double(levi_civita(a, b, c)) * (w[b] * d.spin[c]);
      prec = std::max(prec, max_abs_diff(kI * commutator(d.H, d.spin[a]), rhs));
    }
    const ExtendedQuantities eq = build_even_velocity_set(d, fm);
    const double beta2 = fm.p_mag() * fm.p_mag() / (fm.energy() * fm.energy());
    CMatrix os(4, 4), osp(4, 4);
    for (std::size_t k = 0; k < 3; ++k) {
      os += eq.Omega[k] * d.spin[k];
      osp += eq.Omega[k] * even_part(d.spin[k], d);
    }
    nh = std::max({nh, max_abs_diff(d.H, os * (1.0 / beta2)), max_abs_diff(d.H, osp * (1.0 / beta2))});
  }
  double massless = 0.0;
  for (int i = 0; i < 20; ++i) {
    const FourMomentum fm = FourMomentum::make(0.0, rng.vec(3.0));
    const DiracOperatorSet d = build_dirac_set(fm);
    const ExtendedQuantities eq = massless_extended_set(d, fm, 0.5);
    CMatrix ws(4, 4), cp(4, 4);
    for (std::size_t k = 0; k < 3; ++k) {
      ws += eq.omega[k] * d.spin[k];
      cp.add_scaled(fm.momentum()[k], eq.even_velocity[k]);
    }
    massless = std::max({massless, max_abs_diff(d.H, ws), max_abs_diff(d.H, cp)});
  }
  return {prec < 1e-11 && nh < 1e-11 && massless < 1e-11,
          fmt::format("i[H,S] = omega x S: {:.2e}; H = beta^-2 Omega.Sp = beta^-2 Omega.S: {:.2e} "
                      "(50 massive); m=0 H = omega.S = c.p: {:.2e}",
                      prec, nh, massless)};
}

Outcome robinson() {
  double rad = 0.0;
  for (double s : {0.5, 1.0, 1.5, 2.0})
    for (int e = -3; e <= 3; ++e) {
      const double p = 2.7 * std::pow(10.0, e);
      rad = std::max(rad, std::abs(p * robinson_radius(s, p) - s) / (kEps * s));
    }
  Rand rng(108);
  double ik = 0.0;
  for (int i = 0; i < 20; ++i) {
    const FourMomentum fm = FourMomentum::make(0.0, rng.vec(3.0));
    const DiracOperatorSet d = build_dirac_set(fm);
    const FrameTriad t = triad_for(fm);
    const EigenvectorReport hel = even_spin_eigenvectors(build_even_spin(d, fm, t), t.n, fm, t);
    for (const auto& [psi, s] : {std::pair{hel.psi_plus, 0.5}, std::pair{hel.psi_minus, -0.5}}) {
      const ExtendedQuantities eq = massless_extended_set(d, fm, s);
      CMatrix w2(4, 4);
      for (const auto& wk : eq.omega) w2 += wk * wk;
      ik = std::max(ik, std::abs(expectation(eq.Ik * w2, psi) - expectation(d.H, psi)));
    }
  }
  return {rad <= 4.0 && ik <= 1e-11,
          fmt::format("|p| r_s - s within {:.1f} ulp for s = 1/2..2 over |p| = 1e-3..1e3; "
                      "<H> = <Ik omega^2> on helicity states: {:.2e}",
                      rad, ik)};
}

Outcome two_particle_spectrum() {
  const FourMomentum ex = FourMomentum::make(1.0, {0.0, 0.0, 2.0});
  const SpinSpectrum s = hermitian_eigensystem(build_two_particle_even_spin(ex));
  bool ok = s.clusters.size() == 3;
  double ex_err = 0.0;
  if (ok) {
    const double v[3] = {0.0, 0.4, 1.2};
    const std::size_t mult[3] = {4, 4, 8};
    for (std::size_t i = 0; i < 3; ++i) {
      ok = ok && s.clusters[i].multiplicity == mult[i];
      for (std::size_t k = 0; k < s.clusters[i].multiplicity; ++k)
        ex_err = std::max(ex_err, std::abs(s.eigenvalues[s.clusters[i].first + k] - v[i]));
    }
  }
  Rand rng(109);
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const FourMomentum fm = rng.momentum(0.1, 3.0);
    const double c = fm.contraction_param();
    std::vector<double> expected(4, 0.0);
    expected.insert(expected.end(), 4, 2.0 * c);
    expected.insert(expected.end(), 8, 1.0 + c);
    std::sort(expected.begin(), expected.end());
    const auto ev = hermitian_eigensystem(build_two_particle_even_spin(fm)).eigenvalues;
    for (std::size_t k = 0; k < 16; ++k) worst = std::max(worst, std::abs(ev[k] - expected[k]));
  }
  return {ok && ex_err <= 1e-11 && worst <= 1e-11,
          fmt::format("m=1 p=(0,0,2): {{0 x4, 0.4 x4, 1.2 x8}} within {:.2e}; 30 seeded momenta within {:.2e}",
                      ex_err, worst)};
}

Outcome bell() {
  Rand rng(110);
  double oracle = 0.0;
  for (int i = 0; i < 200; ++i) {
    const FourMomentum fm = rng.momentum(0.1, 3.0);
    const Correlation c = bell_correlation(fm, {rng.unit(), rng.unit()});
    oracle = std::max(oracle, std::abs(c.E_formula - c.E_numeric));
  }
  double perp = 0.0;
  for (double p : {0.1, 1.0, 2.0, 30.0})
    for (int k = 0; k < 12; ++k) {
      const FourMomentum fm = FourMomentum::make(1.0, {0.0, p, 0.0});
      const FrameTriad t = triad_for(fm);
      const double theta = k * std::numbers::pi / 6.0;
      const Vec3 a = direction_from_angles(t, std::numbers::pi / 2, 0.3);
      const Vec3 b = direction_from_angles(t, std::numbers::pi / 2, 0.3 + theta);
      perp = std::max(perp, std::abs(bell_correlation(fm, {a, b}).E_numeric + std::cos(theta)));
    }
  const FourMomentum ex = FourMomentum::make(1.0, {0.0, 0.0, 2.0});
  const FrameTriad t = triad_for(ex);
  const Correlation mixed = bell_correlation(ex, {normalized(t.n + t.m), normalized(t.n - t.m)});
  const double mixed_err = std::max(std::abs(mixed.E_numeric + 2.0 / 3.0), std::abs(mixed.E_formula + 2.0 / 3.0));
  const double deg = std::numbers::pi / 180.0;
  auto at = [&](double phi) { return direction_from_angles(t, 90.0 * deg, phi * deg); };
  const auto chsh = chsh_scan(ex, {{at(0.0), at(90.0), at(45.0), at(135.0)}});
  const double chsh_err = chsh[0].valid ? std::abs(chsh[0].S - 2.0 * std::numbers::sqrt2) : 1.0;
  return {oracle <= 1e-10 && perp <= 1e-10 && mixed_err <= 1e-12 && chsh_err <= 1e-9,
          fmt::format("closed form vs 16-dim contraction over 200 settings: {:.2e}; perpendicular E + cos: {:.2e}; "
                      "mixed plane E = {:.15f}; CHSH = {:.12f}",
                      oracle, perp, mixed.E_numeric, chsh[0].S)};
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::vector<const char*> argv{"evenspin"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"verify", "--m", "1", "--p", "0,0,2", "--seed", "42"},
      {"verify", "--m", "1", "--p", "0,0,2", "--seed", "42", "--format", "csv"},
      {"scan", "--mode", "momentum", "--m", "1", "--pmin", "0.1", "--pmax", "1000", "--steps", "40", "--seed", "42"},
      {"bell", "--m", "1", "--p", "0,0,2", "--chsh", "--plane", "both", "--seed", "42"},
      {"bell", "--m", "1", "--p", "0,0,2", "--plane", "both", "--format", "json", "--seed", "42"},
      {"robinson", "--s", "1", "--p", "0,0,1", "--samples", "64", "--frames", "10", "--seed", "42"}};
  std::size_t identical = 0;
  std::size_t bytes = 0;
  for (const auto& c : commands) {
    int c1 = -1, c2 = -1;
    const std::string a = run_cli(c, c1);
    const std::string b = run_cli(c, c2);
    if (c1 == 0 && c2 == 0 && !a.empty() && a == b) ++identical;
    bytes += a.size();
  }
  return {identical == commands.size(),
          fmt::format("{}/{} commands byte-identical across two runs ({} bytes compared)", identical,
                      commands.size(), bytes)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"little-algebra brackets", little_algebra},
      {"contraction equivalence", contraction_equivalence},
      {"little-group invariance", invariance},
      {"even spin triple construction", even_spin_construction},
      {"spectrum law", spectrum_law},
      {"limit inequivalence", limit_inequivalence},
      {"precession and Hamiltonian identities", precession_and_hamiltonian},
      {"Robinson radius and massless moment of inertia", robinson},
      {"two-particle spectrum", two_particle_spectrum},
      {"Bell oracle agreement and CHSH", bell},
      {"determinism", determinism}};

  std::size_t passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    passed += o.pass ? 1 : 0;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%zu/%zu acceptance criteria passed\n", passed, criteria.size());
  return passed == criteria.size() ? 0 : 1;
}
