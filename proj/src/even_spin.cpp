#include "evenspin/even_spin.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "evenspin/errors.hpp"

namespace evenspin {

namespace {

constexpr double kFormsAgreement = 1e-11;
constexpr double kEigenvectorTol = 1e-9;

void require_unit(const Vec3& a) {
  if (std::abs(norm(a) - 1.0) > 1e-12) {
    throw ContractError(fmt::format("direction must be a unit vector (|a| = {:.15g})", norm(a)));
  }
}

std::array<CMatrix, 3> spatial_gamma(const DiracOperatorSet& d) {
  return {d.gamma[1], d.gamma[2], d.gamma[3]};
}

// (p x gamma)_i = eps_ijk p_j gamma^k
std::array<CMatrix, 3> cross_with_gamma(const Vec3& p, const DiracOperatorSet& d) {
  std::array<CMatrix, 3> out;
  const auto g = spatial_gamma(d);
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = CMatrix::zeros(4, 4);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        const int eps = levi_civita(i, j, k);
        if (eps != 0 && p[j] != 0.0) out[i].add_scaled(eps * p[j], g[k]);
      }
  }
  return out;
}

double spread(const std::array<CMatrix, 3>& a, const std::array<CMatrix, 3>& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < 3; ++k) r = std::max(r, max_abs_diff(a[k], b[k]));
  return r;
}

void check_two_level(const SpinSpectrum& spec, double expected, double tol, const char* what) {
  auto fail = [&](const std::string& why) {
    throw InvariantViolation(fmt::format("{} spectrum: {} (expected +-{:.17g})", what, why, expected));
  };
  if (spec.dimension() != 4) fail("dimension is not 4");
  if (spec.clusters.size() == 1) {
    if (expected > tol) fail("single degenerate cluster");
    if (std::abs(spec.clusters[0].value) > tol) fail("degenerate value is not 0");
    return;
  }
  if (spec.clusters.size() != 2) fail(fmt::format("{} distinct values", spec.clusters.size()));
  if (spec.clusters[0].multiplicity != 2 || spec.clusters[1].multiplicity != 2) {
    fail("multiplicities are not (2, 2)");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const double want = i < 2 ? -expected : expected;
    if (std::abs(spec.eigenvalues[i] - want) > tol) {
      fail(fmt::format("eigenvalue {} = {:.17g}", i, spec.eigenvalues[i]));
    }
  }
}

// Positive-energy Dirac spinor built from two-spinor pieces:
// (sqrt(p0+m) upper, sqrt(p0-m) lower), normalised.
CMatrix stack(double p0, double m, const CMatrix& upper, const CMatrix& lower) {
  CMatrix v(4, 1);
  const double su = std::sqrt(p0 + m);
  const double sl = std::sqrt(std::max(p0 - m, 0.0));
  for (std::size_t i = 0; i < 2; ++i) {
    v(i, 0) = su * upper(i, 0);
    v(i + 2, 0) = sl * lower(i, 0);
  }
  const double nrm = std::sqrt(inner(v, v).real());
  if (!(nrm > 0.0)) return v;
  return v * (1.0 / nrm);
}

struct ReadingSpec {
  const char* name;
  bool perp_coefficient;  // m |a x n| / 2p0 instead of m (a.n) / 2p0
  double inner_sign;      // +1 as written, -1 swapped
};

constexpr ReadingSpec kReadings[] = {
    {"literal: partner coefficient m(a.n)/(2|p0|), signs as written", false, 1.0},
    {"literal: partner coefficient m(a.n)/(2|p0|), inner signs swapped", false, -1.0},
    {"partner coefficient m|a x n|/(2|p0|), signs as written", true, 1.0},
    {"partner coefficient m|a x n|/(2|p0|), inner signs swapped", true, -1.0},
};

// Psi(+) and Psi(-) for direction `a` with a.n >= 0.
std::pair<CMatrix, CMatrix> formula_vectors(const ReadingSpec& rd, const FourMomentum& fm,
                                            const Vec3& a, const Vec3& n, double s_abs) {
  const double p0 = fm.energy();
  const double m = fm.mass();
  const double a_par = dot(a, n);
  const Vec3 a_perp = a - a_par * n;
  const double a_perp_mag = norm(a_perp);

  const SpinSpectrum helicity = hermitian_eigensystem(dot(n, pauli()));
  const CMatrix w_plus = helicity.eigenvectors.col(1);
  CMatrix w_minus = helicity.eigenvectors.col(0);
  if (a_perp_mag > 1e-12) w_minus = dot((1.0 / a_perp_mag) * a_perp, pauli()) * w_plus;

  const double c = s_abs + 0.5 * a_par;
  const double d = rd.perp_coefficient ? m * a_perp_mag / (2.0 * p0) : m * a_par / (2.0 * p0);
  const double f = rd.inner_sign;

  auto build = [&](double sign, const CMatrix& wa, const CMatrix& wb) {
    CMatrix upper = c * wa;
    upper.add_scaled(sign * f * d, wb);
    CMatrix lower = (sign * c) * wa;
    lower.add_scaled(-f * d, wb);
    return stack(p0, m, upper, lower);
  };
  return {build(1.0, w_plus, w_minus), build(-1.0, w_minus, w_plus)};
}

}  // namespace

EvenSpinForms even_spin_forms(const DiracOperatorSet& dset, const FourMomentum& fm) {
  EvenSpinForms f;
  const double p0 = fm.energy();
  const double m = fm.mass();
  const double c = fm.contraction_param();

  const auto p_cross_gamma = cross_with_gamma(fm.momentum(), dset);
  const CMatrix h_inv = dset.H * (1.0 / (p0 * p0));
  CMatrix n_dot_s = CMatrix::zeros(4, 4);
  Vec3 n{};
  if (!fm.at_rest()) {
    n = fm.direction();
    n_dot_s = dot(n, dset.spin);
  }
  const double beta_sq = (fm.p_mag() * fm.p_mag()) / (p0 * p0);
  for (std::size_t k = 0; k < 3; ++k) {
    f.projector[k] = even_part(dset.spin[k], dset);

    f.closed[k] = c * dset.spin[k];
    if (n[k] != 0.0) f.closed[k].add_scaled(beta_sq * n[k], n_dot_s);
    f.closed[k].add_scaled(kI * (m / (2.0 * p0 * p0)), p_cross_gamma[k]);

    const CMatrix w = 0.5 * (dset.spin[k] * dset.H + dset.H * dset.spin[k]);
    f.via_pauli_lubanski[k] = w * h_inv;
  }
  return f;
}

double even_spin_forms_spread(const EvenSpinForms& forms) {
  return std::max({spread(forms.projector, forms.closed),
                   spread(forms.projector, forms.via_pauli_lubanski),
                   spread(forms.closed, forms.via_pauli_lubanski)});
}

EvenSpinSet build_even_spin(const DiracOperatorSet& dset, const FourMomentum& fm,
                            const FrameTriad& triad) {
  const Vec3 expected_n = fm.at_rest() ? rest_triad().n : fm.direction();
  if (norm(triad.n - expected_n) > 1e-12) {
    throw DomainError("build_even_spin: triad n axis does not match the momentum direction");
  }
  const EvenSpinForms forms = even_spin_forms(dset, fm);
  const double disagreement = even_spin_forms_spread(forms);
  if (disagreement > kFormsAgreement) {
    throw InvariantViolation(fmt::format(
        "even spin constructions disagree: projector / closed / W H^-1 spread {:.3e}",
        disagreement));
  }

  EvenSpinSet es;
  es.Sp = forms.projector;
  es.H = dset.H;
  es.triad = triad;

  // Triad components from the closed form:
  // Sp1 = c S.m - (i m|p|/2p0^2) gamma.l, Sp2 = c S.l + (i m|p|/2p0^2) gamma.m, Sp3 = S.n
  const double c = fm.contraction_param();
  const double k = fm.mass() * fm.p_mag() / (2.0 * fm.energy() * fm.energy());
  const auto g = spatial_gamma(dset);
  es.components[0] = c * dot(triad.m, dset.spin);
  es.components[0].add_scaled(-kI * k, dot(triad.l, g));
  es.components[1] = c * dot(triad.l, dset.spin);
  es.components[1].add_scaled(kI * k, dot(triad.m, g));
  es.components[2] = dot(triad.n, dset.spin);
  for (std::size_t i = 0; i < 3; ++i) {
    const double r = max_abs_diff(es.components[i], dot(triad.axis(i), es.Sp));
    if (r > kFormsAgreement) {
      throw InvariantViolation(
          fmt::format("triad component Sp{} disagrees with the projection of Sp ({:.3e})", i + 1,
                      r));
    }
  }

  es.W0 = dot(fm.momentum(), dset.spin);
  for (std::size_t i = 0; i < 3; ++i) {
    es.W[i] = 0.5 * (dset.spin[i] * dset.H + dset.H * dset.spin[i]);
  }
  return es;
}

double even_spin_eigenvalue(const FourMomentum& fm, const Vec3& a) {
  const double pa = dot(fm.momentum(), a);
  return 0.5 * std::sqrt(pa * pa + fm.mass() * fm.mass()) / fm.energy();
}

double pauli_lubanski_eigenvalue(const FourMomentum& fm, const Vec3& a) {
  return fm.energy() * even_spin_eigenvalue(fm, a);
}

SpinSpectrum even_spin_spectrum(const EvenSpinSet& es, const Vec3& a, const FourMomentum& fm,
                                double tol) {
  require_unit(a);
  SpinSpectrum spec = hermitian_eigensystem(dot(a, es.Sp));
  check_two_level(spec, even_spin_eigenvalue(fm, a), tol, "a.Sp");
  return spec;
}

EigenvectorReport even_spin_eigenvectors(const EvenSpinSet& es, const Vec3& a,
                                         const FourMomentum& fm, const FrameTriad& triad) {
  require_unit(a);
  EigenvectorReport out;
  out.s_a = even_spin_eigenvalue(fm, a);
  if (out.s_a < 1e-12) {
    throw DomainError("even_spin_eigenvectors: s_a = 0, the +- eigenspaces coincide");
  }

  const DiracOperatorSet dset = build_dirac_set(fm);
  const CMatrix a_sp = dot(a, es.Sp);
  const SpinSpectrum spec = even_spin_spectrum(es, a, fm);
  const CMatrix numeric_plus = dset.pi_plus * spec.projector_near(out.s_a) * dset.pi_plus;
  const CMatrix numeric_minus = dset.pi_plus * spec.projector_near(-out.s_a) * dset.pi_plus;

  const Vec3& n = triad.n;
  const bool flip = dot(a, n) < 0.0;
  const Vec3 a_eff = flip ? -a : a;

  bool found = false;
  for (const ReadingSpec& rd : kReadings) {
    auto [psi_p, psi_m] = formula_vectors(rd, fm, a_eff, n, out.s_a);
    if (flip) std::swap(psi_p, psi_m);

    FormulaReading r{rd.name, 0.0, 0.0, false};
    r.eigen_residual = std::max((a_sp * psi_p - out.s_a * psi_p).max_abs(),
                                (a_sp * psi_m + out.s_a * psi_m).max_abs());
    const bool degenerate = inner(psi_p, psi_p).real() < 0.5 || inner(psi_m, psi_m).real() < 0.5;
    if (degenerate) {
      r.projector_residual = INFINITY;
    } else {
      r.projector_residual = std::max(max_abs_diff(outer_projector(psi_p), numeric_plus),
                                      max_abs_diff(outer_projector(psi_m), numeric_minus));
    }
    r.matches = !degenerate && r.eigen_residual <= kEigenvectorTol &&
                r.projector_residual <= kEigenvectorTol;
    if (r.matches && !found) {
      found = true;
      out.psi_plus = phase_fixed(psi_p);
      out.psi_minus = phase_fixed(psi_m);
      out.matched_reading = r.name;
    }
    out.readings.push_back(std::move(r));
  }
  out.literal_reading_fails = !out.readings.front().matches;
  if (!found) {
    throw InvariantViolation(
        "no reading of the eigenvector formula matches the numeric "
        "eigenspaces");
  }
  return out;
}

PauliLubanski build_pauli_lubanski(const DiracOperatorSet& dset, const FourMomentum& fm) {
  PauliLubanski pl;
  pl.W0 = dot(fm.momentum(), dset.spin);
  const double p0 = fm.energy();
  const CMatrix h_inv = dset.H * (1.0 / (p0 * p0));
  const double scale = std::max(1.0, p0);
  for (std::size_t i = 0; i < 3; ++i) {
    pl.W[i] = 0.5 * (dset.spin[i] * dset.H + dset.H * dset.spin[i]);
    const double r_sp = max_abs_diff(pl.W[i] * h_inv, even_part(dset.spin[i], dset));
    const double r_h = commutator(pl.W[i], dset.H).max_abs();
    if (r_sp > kFormsAgreement || r_h > kFormsAgreement * scale * scale) {
      throw InvariantViolation(fmt::format(
          "Pauli-Lubanski W{}: |W H^-1 - Sp| = {:.3e}, |[W, H]| = {:.3e}", i + 1, r_sp, r_h));
    }
  }
  return pl;
}

SpinSpectrum pauli_lubanski_spectrum(const PauliLubanski& pl, const Vec3& a,
                                     const FourMomentum& fm, double tol) {
  require_unit(a);
  SpinSpectrum spec = hermitian_eigensystem(dot(a, pl.W));
  check_two_level(spec, pauli_lubanski_eigenvalue(fm, a), tol * std::max(1.0, fm.energy()),
                  "a.W");
  return spec;
}

Report verify_even_spin_algebra(const EvenSpinSet& es, const FourMomentum& fm,
                                const Tolerance& tol) {
  Report r;
  const auto& S = es.components;
  const double c = fm.contraction_param();
  const struct {
    const char* id;
    const char* equation;
    std::size_t a, b, k;
    double coeff;
  } rows[] = {
      {"[Sp1,Sp2]", "[Sp1,Sp2] = i (m^2/p0^2) Sp3", 0, 1, 2, c},
      {"[Sp3,Sp1]", "[Sp3,Sp1] = i Sp2", 2, 0, 1, 1.0},
      {"[Sp2,Sp3]", "[Sp2,Sp3] = i Sp1", 1, 2, 0, 1.0},
  };
  for (const auto& row : rows) {
    const CMatrix expected = (kI * row.coeff) * S[row.k];
    r.add(row.id, row.equation, "even-spin-algebra",
          max_abs_diff(commutator(S[row.a], S[row.b]), expected), tol.bound(expected.max_abs()));
  }
  const double h_scale = std::max(1.0, fm.energy());
  for (std::size_t i = 0; i < 3; ++i) {
    r.add(fmt::format("Sp{}-hermitian", i + 1), "Sp_i = Sp_i^dagger", "hermitian-representation",
          hermiticity_residual(S[i]), tol.abs_eps);
    r.add(fmt::format("[Sp{},H]", i + 1), "[Sp_i, H] = 0", "even-spin-conserved",
          commutator(S[i], es.H).max_abs(), tol.bound(h_scale));
  }
  if (fm.mass() == 0.0) {
    r.add("massless-transverse", "Sp1 = Sp2 = 0 for m = 0", "e2-one-dimensional",
          std::max(S[0].max_abs(), S[1].max_abs()), tol.abs_eps);
  }
  return r;
}

std::vector<InequivalenceRow> limit_inequivalence_scan(const std::vector<MassMomentum>& points) {
  std::vector<InequivalenceRow> rows;
  rows.reserve(points.size());
  const Vec3 a{1.0, 0.0, 0.0};
  for (const auto& pt : points) {
    if (!(pt.m >= 0.0) || !(pt.p_mag >= 0.0)) {
      throw DomainError("limit_inequivalence_scan: m and |p| must be >= 0");
    }
    const FourMomentum fm = FourMomentum::make(pt.m, {0.0, 0.0, pt.p_mag});
    const DiracOperatorSet dset = build_dirac_set(fm);
    const EvenSpinSet es = build_even_spin(dset, fm, triad_for(fm));
    const PauliLubanski pl = build_pauli_lubanski(dset, fm);
    const SpinSpectrum s = even_spin_spectrum(es, a, fm);
    const SpinSpectrum w = pauli_lubanski_spectrum(pl, a, fm);
    rows.push_back({pt.m, pt.p_mag, s.eigenvalues.back(), w.eigenvalues.back()});
  }
  return rows;
}

Polarization polarization_density(const DiracOperatorSet& dset, const FourMomentum& fm,
                                  const CMatrix& state, double tol) {
  if (state.rows() != 4 || state.cols() != 1) throw ShapeError("state must be a 4-spinor");
  if (!(fm.mass() > 0.0)) throw DomainError("polarization_density: zeta_perp needs m > 0");
  const double nrm = std::sqrt(inner(state, state).real());
  if (std::abs(nrm - 1.0) > tol) {
    throw DomainError(fmt::format("state is not unit-normalised (|psi| = {:.15g})", nrm));
  }
  const double contamination = max_abs_diff(dset.pi_plus * state, state);
  if (contamination > tol) {
    throw DomainError(
        fmt::format("state has a negative-energy component ({:.3e})", contamination));
  }

  const Vec3 n = fm.at_rest() ? rest_triad().n : fm.direction();
  const PauliLubanski pl = build_pauli_lubanski(dset, fm);
  Vec3 w_avg;
  for (std::size_t k = 0; k < 3; ++k) w_avg[k] = expectation(pl.W[k], state).real();

  Polarization out;
  out.zeta_par = 2.0 * expectation(dot(n, dset.spin), state).real();
  out.zeta_perp = (2.0 / fm.mass()) * (w_avg - dot(w_avg, n) * n);

  const auto g = spatial_gamma(dset);
  const CMatrix g_par = dot(n, g);
  CMatrix pol = out.zeta_par * CMatrix::identity(4);
  for (std::size_t k = 0; k < 3; ++k) {
    CMatrix g_perp = g[k];
    g_perp.add_scaled(-n[k], g_par);
    pol.add_scaled(out.zeta_perp[k], g_perp);
  }
  const CMatrix ps = slash(fm, dset);
  out.rho = 0.5 * (ps * (CMatrix::identity(4) - dset.gamma5 * pol));
  out.null_residual = (ps * out.rho).max_abs();
  return out;
}

DensityMatrix helicity_density_matrix(const DiracOperatorSet& dset, const FourMomentum& fm,
                                      int sign) {
  const CMatrix ps = slash(fm, dset);
  DensityMatrix out;
  out.rho = 0.5 * (ps * (CMatrix::identity(4) + double(sign) * dset.gamma5));
  out.null_residual = (ps * out.rho).max_abs();
  return out;
}

}  // namespace evenspin
