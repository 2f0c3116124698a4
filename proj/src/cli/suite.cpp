#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "evenspin/bell.hpp"
#include "evenspin/cli.hpp"
#include "evenspin/errors.hpp"
#include "evenspin/even_spin.hpp"
#include "evenspin/extended.hpp"
#include "evenspin/little_algebra.hpp"
#include "evenspin/numkernel/linalg.hpp"

namespace evenspin::cli {

namespace {

// 1e-11 absolute, plus one part in 1e15 of the operator scale for large |p|.
constexpr Tolerance kDynamicsTol{1e-11, 1e-15};

// Uniform draws built directly on the 64-bit engine output so the sequence is
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  Vec3 in_cube(double half) { return {uniform(-half, half), uniform(-half, half), uniform(-half, half)}; }

  Vec3 unit() {
    for (;;) {
      const Vec3 v = in_cube(1.0);
      const double r = norm(v);
      if (r > 1e-3 && r <= 1.0) return (1.0 / r) * v;
    }
  }

 private:
  std::mt19937_64 engine_;
};

class Suite {
 public:
  explicit Suite(const std::optional<double>& tol) : override_(tol) {}

  Tolerance tol(Tolerance fallback) const {
    return override_ ? Tolerance::absolute(*override_) : fallback;
  }
  double bound(double fallback) const { return override_ ? *override_ : fallback; }

  // Library reports carry the override already through tol().
  void take(const std::string& prefix, const Report& r) {
    for (const auto& c : r.checks())
      report_.add(prefix + c.id, c.equation, c.quote_tag, c.residual, c.tolerance);
  }

  void add(const std::string& id, const std::string& eq, const std::string& tag, double residual,
           double fallback_tol) {
    report_.add(id, eq, tag, residual, bound(fallback_tol));
  }

  // Keeps, per check id, the sample with the largest residual/tolerance ratio;
  // it passes exactly when every sample passes.
  void take_worst(const std::string& prefix, const std::vector<Report>& samples) {
    std::vector<std::string> order;
    std::map<std::string, Check> worst;
    std::map<std::string, std::size_t> counts;
    for (const auto& r : samples)
      for (const auto& c : r.checks()) {
        auto it = worst.find(c.id);
        ++counts[c.id];
        if (it == worst.end()) {
          order.push_back(c.id);
          worst.emplace(c.id, c);
        } else if (ratio(c) > ratio(it->second)) {
          it->second = c;
        }
      }
    for (const auto& id : order) {
      const Check& c = worst.at(id);
      report_.add(fmt::format("{}{} (worst of {})", prefix, id, counts.at(id)), c.equation,
                  c.quote_tag, c.residual, c.tolerance);
    }
  }

  Report release() { return std::move(report_); }

 private:
  static double ratio(const Check& c) {
    if (std::isnan(c.residual)) return std::numeric_limits<double>::infinity();
    if (c.tolerance <= 0.0) return c.residual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return c.residual / c.tolerance;
  }

  std::optional<double> override_;
  Report report_;
};

// max_i |sorted numeric eigenvalue i - expected i|
double spectrum_residual(const SpinSpectrum& spec, std::vector<double> expected) {
  std::sort(expected.begin(), expected.end());
  if (expected.size() != spec.eigenvalues.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i)
    worst = std::max(worst, std::abs(spec.eigenvalues[i] - expected[i]));
  return worst;
}

std::vector<double> expand(const std::vector<std::pair<double, std::size_t>>& clusters) {
  std::vector<double> out;
  for (const auto& [v, mult] : clusters) out.insert(out.end(), mult, v);
  return out;
}

Report little_algebra_checks(const Suite& s, const FourMomentum& fm) {
  Report r;
  const FrameTriad triad = triad_for(fm);
  for (auto rep : {Representation::four_vector, Representation::bispinor}) {
    const std::string tag = rep == Representation::four_vector ? "four-vector/" : "bispinor/";
    const LittleGenerators lg = little_generators(generators(rep), fm, triad);
    const Report algebra = verify_little_algebra(lg, s.tol({}));
    const Report bracket = verify_vector_bracket(lg, fm, triad, s.tol({}));
    for (const Report* part : {&algebra, &bracket})
      for (const auto& c : part->checks())
        r.add(tag + c.id, c.equation, c.quote_tag, c.residual, c.tolerance);
  }
  return r;
}

Report even_spin_checks(const Suite& s, const FourMomentum& fm, const Vec3& a) {
  Report r;
  const DiracOperatorSet d = build_dirac_set(fm);
  const FrameTriad triad = triad_for(fm);
  r.add("forms-agree", "(S + lambda S lambda)/2 = closed form = W H^-1", "even-spin-forms",
        even_spin_forms_spread(even_spin_forms(d, fm)), s.bound(1e-11));
  const EvenSpinSet es = build_even_spin(d, fm, triad);
  r.append(verify_even_spin_algebra(es, fm, s.tol({1e-12, 1e-12})));

  const double sa = even_spin_eigenvalue(fm, a);
  r.add("spectrum(a.Sp)", "eig(a.Sp) = +-sqrt((p.a)^2 + m^2)/(2 p0)", "spectrum-law",
        spectrum_residual(hermitian_eigensystem(dot(a, es.Sp)), {-sa, -sa, sa, sa}),
        s.bound(1e-10));
  const double wa = pauli_lubanski_eigenvalue(fm, a);
  r.add("spectrum(a.W)", "eig(a.W) = +-p0 s_a", "pauli-lubanski-spectrum",
        spectrum_residual(hermitian_eigensystem(dot(a, es.W)), {-wa, -wa, wa, wa}),
        s.bound(1e-10 * std::max(1.0, fm.energy())));
  return r;
}

Report massive_dynamics_checks(const Suite& s, const FourMomentum& fm) {
  Report r;
  const DiracOperatorSet d = build_dirac_set(fm);
  r.append(verify_precession(d, fm, s.tol(kDynamicsTol)));
  r.append(verify_hamiltonian_identities(d, fm, build_even_velocity_set(d, fm),
                                         s.tol(kDynamicsTol)));
  return r;
}

Report massless_checks(const Suite& s, const FourMomentum& fm, double helicity) {
  Report r;
  const DiracOperatorSet d = build_dirac_set(fm);
  r.append(verify_precession(d, fm, s.tol(kDynamicsTol)));
  r.append(verify_massless_identities(d, fm, massless_extended_set(d, fm, helicity),
                                      s.tol(kDynamicsTol)));
  return r;
}

Report two_particle_checks(const Suite& s, const FourMomentum& fm) {
  Report r;
  const TwoParticleOperators ops = build_two_particle(fm);
  r.add("two-particle-spectrum", "eig((Sp1 + Sp2)^2) = {0 x4, 2m^2/p0^2 x4, 1 + m^2/p0^2 x8}",
        "two-particle-spectrum",
        spectrum_residual(hermitian_eigensystem(ops.total_sq),
                          expand(two_particle_spectrum_closed_form(fm))),
        s.bound(1e-11));
  const TwoParticleState psi = singlet_state(fm);
  r.add("singlet-annihilated", "(Sp1 + Sp2)^2 Psi = 0", "singlet",
        (ops.total_sq * psi.amplitudes).max_abs(), s.bound(1e-11));
  r.add("singlet-positive-energy", "H_total Psi = 2 p0 Psi", "singlet",
        max_abs_diff(ops.H_total * psi.amplitudes, (2.0 * fm.energy()) * psi.amplitudes),
        s.bound(1e-11 * std::max(1.0, fm.energy())));
  r.append(helicity_block_matrix(fm, s.tol(kDynamicsTol)).checks);
  return r;
}

Report bell_checks(const Suite& s, const FourMomentum& fm, const Vec3& a, const Vec3& b) {
  Report r;
  const Correlation c = bell_correlation(fm, {a, b});
  r.add("bell-oracle", "E = -(a_par.b_par + (m^2/p0^2) a_perp.b_perp) / (4 |s_a s_b|)",
        "bell-correlation", std::abs(c.E_formula - c.E_numeric), s.bound(1e-10));
  return r;
}

void fixed_suite(Suite& s, const FourMomentum& fm) {
  const std::string pre = "fixed/";
  s.take(pre, little_algebra_checks(s, fm));
  s.take(pre, verify_invariance(four_vector_generators(), fm, {0.3, 0.0, 0.0}, s.tol({})));

  const FrameTriad triad = triad_for(fm);
  const Vec3 oblique = normalized(triad.n + triad.m + 0.5 * triad.l);
  for (const auto& [name, a] : {std::pair{"a=n", triad.n}, std::pair{"a=m", triad.m},
                                std::pair{"a=oblique", oblique}}) {
    if (fm.mass() == 0.0 && std::abs(dot(a, triad.n)) < 1e-12) continue;
    s.take(pre + name + "/", even_spin_checks(s, fm, a));
  }

  if (fm.mass() > 0.0) {
    const DiracOperatorSet d = build_dirac_set(fm);
    const EvenSpinSet es = build_even_spin(d, fm, triad);
    const EigenvectorReport ev = even_spin_eigenvectors(es, oblique, fm, triad);
    double eig = 0.0;
    double proj = 0.0;
    for (const auto& rd : ev.readings)
      if (rd.name == ev.matched_reading) {
        eig = rd.eigen_residual;
        proj = rd.projector_residual;
      }
    s.add(pre + "eigenvectors/eigen", "(a.Sp) Psi(+-) = +-s_a Psi(+-)", "eigenvectors", eig, 1e-9);
    s.add(pre + "eigenvectors/projector", "|Psi(+-)><Psi(+-)| = Pi+ E(+-s_a) Pi+", "eigenvectors",
          proj, 1e-9);
    const EigenvectorReport hel = even_spin_eigenvectors(es, triad.n, fm, triad);
    const Polarization pol = polarization_density(d, fm, hel.psi_plus);
    s.add(pre + "polarization/zeta_par", "zeta_par = 2 <n.S> = +1 on the + helicity state",
          "polarization", std::abs(pol.zeta_par - 1.0), 1e-10);
    s.add(pre + "polarization/zeta_perp", "zeta_perp = (2/m) <W - (W.n) n> = 0 on helicity states",
          "polarization", norm(pol.zeta_perp), 1e-10 * std::max(1.0, fm.energy() / fm.mass()));
    if (!fm.at_rest()) s.take(pre, massive_dynamics_checks(s, fm));
  } else {
    for (double hel : {0.5, 1.0, 1.5, 2.0})
      s.take(pre + fmt::format("s={}/", hel), massless_checks(s, fm, hel));
    const DiracOperatorSet d = build_dirac_set(fm);
    for (int sign : {1, -1}) {
      s.add(pre + fmt::format("density-null({:+d})", sign), "pslash rho = 0, rho = pslash (1 +- gamma5)/2",
            "polarization", helicity_density_matrix(d, fm, sign).null_residual,
            1e-12 * std::max(1.0, fm.energy() * fm.energy()));
    }
  }

  double rad = 0.0;
  for (double helicity : {0.5, 1.0, 1.5, 2.0})
    for (int decade = -3; decade <= 3; ++decade) {
      const double p_mag = 1.7 * std::pow(10.0, decade);
      rad = std::max(rad, std::abs(p_mag * robinson_radius(helicity, p_mag) - helicity) / helicity);
    }
  s.add(pre + "robinson-radius", "|p| r_s = s", "robinson-radius", rad,
        4.0 * std::numeric_limits<double>::epsilon());

  s.take(pre, two_particle_checks(s, fm));
  const Vec3 b = normalized(triad.n - triad.m + 0.25 * triad.l);
  if (even_spin_eigenvalue(fm, oblique) > 1e-12 && even_spin_eigenvalue(fm, b) > 1e-12)
    s.take(pre, bell_checks(s, fm, oblique, b));

  if (fm.mass() > 0.0 && !fm.at_rest()) {
    const double deg = std::numbers::pi / 180.0;
    std::vector<ChshSetting> settings;
    for (const auto& row : chsh_grid(triad, AnalyzerPlane::perpendicular, 5.0 * deg))
      settings.push_back(row.setting);
    double worst = 0.0;
    for (const auto& row : chsh_scan(fm, settings))
      worst = std::max(worst, row.valid ? std::abs(row.S - 2.0 * std::numbers::sqrt2)
                                        : std::numeric_limits<double>::infinity());
    s.add(pre + "chsh-perpendicular", "S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')| = 2 sqrt(2)",
          "chsh", worst, 1e-9);
  }
}

FourMomentum random_momentum(Rng& rng, double m_lo, double m_hi) {
  for (;;) {
    const double m = rng.uniform(m_lo, m_hi);
    const Vec3 p = rng.in_cube(3.0);
    if (m > 0.0 || norm(p) > 1e-3) return FourMomentum::make(m, p);
  }
}

void random_suites(Suite& s, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Report> batch;

  for (int i = 0; i < 100; ++i) batch.push_back(little_algebra_checks(s, random_momentum(rng, 0.0, 2.0)));
  s.take_worst("random/little-algebra/", batch);
  batch.clear();

  for (int i = 0; i < 100; ++i) {
    const FourMomentum fm = random_momentum(rng, 0.0, 2.0);
    const Vec3 mu = (2.0 * rng.uniform(0.0, 1.0)) * rng.unit();
    batch.push_back(verify_invariance(four_vector_generators(), fm, mu, s.tol({}), rng.in_cube(1.0)));
  }
  s.take_worst("random/invariance/", batch);
  batch.clear();

  for (int i = 0; i < 100; ++i) {
    const FourMomentum fm = random_momentum(rng, 0.0, 3.0);
    Vec3 a = rng.unit();
    if (fm.mass() == 0.0 && std::abs(dot(a, fm.direction())) < 1e-6) a = fm.direction();
    batch.push_back(even_spin_checks(s, fm, a));
  }
  s.take_worst("random/even-spin/", batch);
  batch.clear();

  for (int i = 0; i < 50; ++i) batch.push_back(massive_dynamics_checks(s, random_momentum(rng, 0.1, 3.0)));
  s.take_worst("random/dynamics/", batch);
  batch.clear();

  const double hel[4] = {0.5, 1.0, 1.5, 2.0};
  for (int i = 0; i < 20; ++i) {
    const FourMomentum fm = FourMomentum::make(0.0, rng.in_cube(3.0));
    batch.push_back(massless_checks(s, fm, hel[i % 4]));
  }
  s.take_worst("random/massless/", batch);
  batch.clear();

  for (int i = 0; i < 20; ++i) batch.push_back(two_particle_checks(s, random_momentum(rng, 0.1, 3.0)));
  s.take_worst("random/two-particle/", batch);
  batch.clear();

  for (int i = 0; i < 200; ++i) {
    const FourMomentum fm = random_momentum(rng, 0.1, 3.0);
    batch.push_back(bell_checks(s, fm, rng.unit(), rng.unit()));
  }
  s.take_worst("random/bell/", batch);
}

}  // namespace

Report verify_suite(const RunConfig& cfg) {
  const FourMomentum fm = FourMomentum::make(cfg.mass, cfg.momentum);
  Suite s(cfg.tol);
  fixed_suite(s, fm);
  random_suites(s, cfg.seed);
  return s.release();
}

}  // namespace evenspin::cli
