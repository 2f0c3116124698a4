#include "evenspin/little_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "evenspin/errors.hpp"
#include "evenspin/numkernel/linalg.hpp"

namespace evenspin {

namespace {

constexpr double kTriadAlignment = 1e-12;

FrameTriad triad_from(const Vec3& n, const Vec3& seed) {
  const Vec3 m = normalized(seed - dot(seed, n) * n);
  return {m, cross(n, m), n};
}

void require_aligned(const FrameTriad& triad, const FourMomentum& fm) {
  const Vec3 expected = fm.at_rest() ? rest_triad().n : fm.direction();
  if (norm(triad.n - expected) > kTriadAlignment) {
    throw DomainError("triad n axis does not match the momentum direction");
  }
}

CMatrix bracket_row(const CMatrix& a, const CMatrix& b) { return commutator(a, b); }

}  // namespace

FrameTriad build_triad(const Vec3& p) {
  if (!(norm(p) > 0.0)) throw DomainError("build_triad: p = 0 has no direction; use rest_triad()");
  const Vec3 n = normalized(p);
  const Vec3 seed = std::abs(n.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  return triad_from(n, seed);
}

FrameTriad build_triad(const Vec3& p, const Vec3& m_hint) {
  if (!(norm(p) > 0.0)) throw DomainError("build_triad: p = 0 has no direction");
  const Vec3 n = normalized(p);
  const Vec3 perp = m_hint - dot(m_hint, n) * n;
  if (!(norm(perp) > 1e-8 * norm(m_hint))) {
    throw DomainError("build_triad: m hint is parallel to the momentum");
  }
  return triad_from(n, m_hint);
}

FrameTriad rest_triad() { return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}; }

FrameTriad triad_for(const FourMomentum& fm) {
  return fm.at_rest() ? rest_triad() : build_triad(fm.momentum());
}

FrameTriad rotated_about_n(const FrameTriad& t, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Vec3 m = c * t.m + s * t.l;
  return {m, cross(t.n, m), t.n};
}

double triad_residual(const FrameTriad& t) {
  double r = 0.0;
  r = std::max(r, std::abs(dot(t.m, t.m) - 1.0));
  r = std::max(r, std::abs(dot(t.l, t.l) - 1.0));
  r = std::max(r, std::abs(dot(t.n, t.n) - 1.0));
  r = std::max(r, std::abs(dot(t.m, t.l)));
  r = std::max(r, std::abs(dot(t.m, t.n)));
  r = std::max(r, std::abs(dot(t.l, t.n)));
  r = std::max(r, norm(cross(t.n, t.m) - t.l));
  return r;
}

LorentzGenerators four_vector_generators() {
  LorentzGenerators g;
  g.rep = Representation::four_vector;
  for (std::size_t a = 0; a < 3; ++a) {
    g.J[a] = CMatrix(4, 4);
    g.K[a] = CMatrix(4, 4);
    // (J_a p)^i = i (e_a x p)^i = i eps_{i a k} p^k
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < 3; ++k) g.J[a](i + 1, k + 1) = kI * double(levi_civita(i, a, k));
    // (K_a p)^0 = i p^a, (K_a p)^a = i p^0
    g.K[a](0, a + 1) = kI;
    g.K[a](a + 1, 0) = kI;
  }
  return g;
}

LorentzGenerators bispinor_generators() {
  const DiracBasis& b = dirac_basis();
  LorentzGenerators g;
  g.rep = Representation::bispinor;
  for (std::size_t a = 0; a < 3; ++a) {
    g.J[a] = b.spin[a];
    g.K[a] = (0.5 * kI) * b.alpha[a];
  }
  return g;
}

LorentzGenerators generators(Representation rep) {
  return rep == Representation::four_vector ? four_vector_generators() : bispinor_generators();
}

LittleGenerators little_generators(const LorentzGenerators& gens, const FourMomentum& fm,
                                   const FrameTriad& triad) {
  require_aligned(triad, fm);
  const double v = fm.p_mag() / fm.energy();
  LittleGenerators lg;
  lg.contraction_param = fm.contraction_param();
  lg.L[0] = dot(triad.m, gens.J);
  lg.L[0].add_scaled(v, dot(triad.l, gens.K));
  lg.L[1] = dot(triad.l, gens.J);
  lg.L[1].add_scaled(-v, dot(triad.m, gens.K));
  lg.L[2] = dot(triad.n, gens.J);
  return lg;
}

Report verify_little_algebra(const LittleGenerators& lg, const Tolerance& tol) {
  Report r;
  const auto& L = lg.L;
  const struct {
    const char* id;
    const char* equation;
    std::size_t a, b, c;
    double coeff;
  } rows[] = {
      {"[L1,L2]", "[L1,L2] = i (m^2/p0^2) L3", 0, 1, 2, lg.contraction_param},
      {"[L3,L1]", "[L3,L1] = i L2", 2, 0, 1, 1.0},
      {"[L2,L3]", "[L2,L3] = i L1", 1, 2, 0, 1.0},
  };
  for (const auto& row : rows) {
    const CMatrix expected = (kI * row.coeff) * L[row.c];
    const double res = max_abs_diff(bracket_row(L[row.a], L[row.b]), expected);
    r.add(row.id, row.equation, "little-algebra", res, tol.bound(expected.max_abs()));
  }
  return r;
}

Report verify_invariance(const LorentzGenerators& gens, const FourMomentum& fm, const Vec3& mu,
                         const Tolerance& tol, const Vec3& nu_probe) {
  if (gens.rep != Representation::four_vector) {
    throw ContractError("verify_invariance needs the four-vector representation");
  }
  const double p0 = fm.energy();
  const Vec3& p = fm.momentum();
  const Vec3 nu = (-1.0 / p0) * cross(mu, p);

  const CMatrix p4 = CMatrix::column(std::vector<cplx>{p0, p.x, p.y, p.z});
  const double p4_norm = p4.frobenius_norm();

  auto generator = [&](const Vec3& rot, const Vec3& boost) {
    CMatrix g = dot(rot, gens.J);
    g += dot(boost, gens.K);
    return g;
  };
  auto closed_action = [&](const Vec3& rot, const Vec3& boost) {
    const Vec3 spatial = p0 * boost + cross(rot, p);
    return CMatrix::column(
        std::vector<cplx>{kI * dot(boost, p), kI * spatial.x, kI * spatial.y, kI * spatial.z});
  };

  Report r;
  const CMatrix lambda = expm((-kI) * generator(mu, nu));
  r.add("little-group-invariance", "exp(-i(mu.J + nu.K)) p = p with nu p0 = -mu x p",
        "invariance", max_abs_diff(lambda * p4, p4) / p4_norm, tol.abs_eps);

  const CMatrix action = generator(mu, nu) * p4;
  r.add("infinitesimal-action-invariant", "L(mu,nu) p = i(nu.p, nu p0 + mu x p) = 0",
        "invariance", max_abs_diff(action, closed_action(mu, nu)), tol.bound(p4_norm));
  r.add("infinitesimal-action-zero", "L(mu,nu) p = 0 for nu p0 = -mu x p", "invariance",
        action.max_abs(), tol.bound(p4_norm * (norm(mu) + norm(nu))));

  const CMatrix probe = generator(mu, nu_probe) * p4;
  r.add("infinitesimal-action-probe", "L(mu,nu) p = i(nu.p, nu p0 + mu x p)", "invariance",
        max_abs_diff(probe, closed_action(mu, nu_probe)), tol.bound(probe.max_abs()));
  return r;
}

namespace {

// (L x L)_a in triad components.
CMatrix cross_component(const LittleGenerators& lg, std::size_t a) {
  CMatrix out = CMatrix::zeros(lg.L[0].rows(), lg.L[0].cols());
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t c = 0; c < 3; ++c) {
      const int eps = levi_civita(a, b, c);
      if (eps != 0) out.add_scaled(double(eps), lg.L[b] * lg.L[c]);
    }
  return out;
}

}  // namespace

Report verify_vector_bracket(const LittleGenerators& lg, const FourMomentum& fm,
                             const FrameTriad& triad, const Tolerance& tol) {
  require_aligned(triad, fm);
  const double p0 = fm.energy();
  const double p_mag = fm.p_mag();
  // Triad components of p are (0, 0, |p|), so p.L = |p| L3.
  const Vec3 p_triad{0.0, 0.0, p_mag};

  Report r;
  for (std::size_t a = 0; a < 3; ++a) {
    const CMatrix lhs = cross_component(lg, a);
    CMatrix rhs = kI * lg.L[a];
    rhs.add_scaled(-kI * (p_triad[a] * p_mag / (p0 * p0)), lg.L[2]);
    r.add(fmt::format("(LxL)_{}", a + 1), "L x L = i L - i (p/p0^2)(p.L)", "vector-bracket",
          max_abs_diff(lhs, rhs), tol.bound(rhs.max_abs()));
  }
  return r;
}

double jk_vector_bracket_residual(const LittleGenerators& lg, const LorentzGenerators& gens,
                                       const FourMomentum& fm, const FrameTriad& triad) {
  require_aligned(triad, fm);
  const double p0 = fm.energy();
  const double p_mag = fm.p_mag();
  const CMatrix p_dot_k = p_mag * dot(triad.n, gens.K);
  const Vec3 p_triad{0.0, 0.0, p_mag};
  double worst = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    CMatrix rhs = kI * dot(triad.axis(a), gens.J);
    rhs.add_scaled(-kI * (p_triad[a] / (p0 * p0)), p_dot_k);
    worst = std::max(worst, max_abs_diff(cross_component(lg, a), rhs));
  }
  return worst;
}

std::vector<double> log_grid(double from, double to, std::size_t steps) {
  if (!(from > 0.0) || !(to > 0.0) || !std::isfinite(from) || !std::isfinite(to)) {
    throw DomainError("log_grid: endpoints must be positive and finite");
  }
  if (steps < 2 || from == to) throw DomainError("log_grid: need >= 2 distinct points");
  std::vector<double> out(steps);
  const double ratio = to / from;
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = from * std::pow(ratio, static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  out.front() = from;
  out.back() = to;
  return out;
}

std::vector<ContractionRow> contraction_scan(ScanMode mode, double fixed,
                                             const std::vector<double>& values) {
  if (!(fixed > 0.0) || !std::isfinite(fixed)) {
    throw DomainError("contraction_scan: fixed parameter must be positive");
  }
  if (values.empty()) throw DomainError("contraction_scan: empty grid");
  const bool up = values.size() < 2 || values[1] > values[0];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw DomainError("contraction_scan: grid values must be positive");
    }
    if (i > 0 && ((values[i] > values[i - 1]) != up || values[i] == values[i - 1])) {
      throw DomainError("contraction_scan: grid must be strictly monotone");
    }
  }

  const LorentzGenerators gens = bispinor_generators();
  std::vector<ContractionRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    const double m = mode == ScanMode::mass_to_zero ? v : fixed;
    const double p_mag = mode == ScanMode::mass_to_zero ? fixed : v;
    const FourMomentum fm = FourMomentum::make(m, {0.0, 0.0, p_mag});
    const LittleGenerators lg = little_generators(gens, fm, triad_for(fm));
    const double ratio =
        commutator(lg.L[0], lg.L[1]).frobenius_norm() / lg.L[2].frobenius_norm();
    rows.push_back({m, p_mag, fm.contraction_param(), ratio});
  }
  return rows;
}

std::vector<ContractionRow> contraction_scan(ScanMode mode, const ScanGrid& grid) {
  return contraction_scan(mode, grid.fixed, log_grid(grid.from, grid.to, grid.steps));
}

}  // namespace evenspin
