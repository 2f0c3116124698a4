#include "evenspin/csv.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

namespace evenspin::csv {

namespace {

double degrees(double rad) { return rad * (180.0 / std::numbers::pi); }

void put(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << number(v);
    first = false;
  }
}

}  // namespace

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

void write_metadata(std::ostream& os, const Metadata& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
}

void write_contraction(std::ostream& os, const std::vector<ContractionRow>& rows,
                       const Metadata& meta) {
  write_metadata(os, meta);
  os << "m,p_mag,contraction_param,bracket_ratio\n";
  for (const auto& r : rows) {
    put(os, {r.m, r.p_mag, r.contraction_param, r.bracket_ratio});
    os << '\n';
  }
}

void write_inequivalence(std::ostream& os, const std::vector<InequivalenceRow>& rows,
                         const Metadata& meta) {
  write_metadata(os, meta);
  os << "m,p_mag,s_perp,w_perp\n";
  for (const auto& r : rows) {
    put(os, {r.m, r.p_mag, r.s_perp, r.w_perp});
    os << '\n';
  }
}

void write_robinson(std::ostream& os, const std::vector<RobinsonPoint>& rows, double length_scale,
                    const Metadata& meta) {
  write_metadata(os, meta);
  os << "frame,t,x,y,z,phase\n";
  for (const auto& r : rows) {
    os << r.frame << ',';
    put(os, {r.t, length_scale * r.x, length_scale * r.y, length_scale * r.z, r.phase});
    os << '\n';
  }
}

void write_bell(std::ostream& os, const FourMomentum& fm, const std::vector<BellRow>& rows,
                const Metadata& meta) {
  write_metadata(os, meta);
  os << "m,p_mag,a_theta,a_phi,b_theta,b_phi,E_formula,E_numeric,abs_diff\n";
  for (const auto& r : rows) {
    put(os, {fm.mass(), fm.p_mag(), degrees(r.a.theta), degrees(r.a.phi), degrees(r.b.theta),
             degrees(r.b.phi), r.corr.E_formula, r.corr.E_numeric,
             std::abs(r.corr.E_formula - r.corr.E_numeric)});
    os << '\n';
  }
}

void write_chsh(std::ostream& os, const FourMomentum& fm, const std::vector<ChshCsvRow>& rows,
                const Metadata& meta) {
  write_metadata(os, meta);
  os << "m,p_mag,a_theta,a_phi,b_theta,b_phi,ap_theta,ap_phi,bp_theta,bp_phi,S,violation\n";
  for (const auto& r : rows) {
    const auto& a = r.angles;
    // column order a, b, a', b'
    put(os, {fm.mass(), fm.p_mag(), degrees(a[0].theta), degrees(a[0].phi), degrees(a[2].theta),
             degrees(a[2].phi), degrees(a[1].theta), degrees(a[1].phi), degrees(a[3].theta),
             degrees(a[3].phi),
             r.row.valid ? r.row.S : std::numeric_limits<double>::quiet_NaN()});
    os << ',' << (r.row.valid && r.row.violation ? 1 : 0) << '\n';
  }
}

}  // namespace evenspin::csv
