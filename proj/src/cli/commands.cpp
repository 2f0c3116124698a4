#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "evenspin/bell.hpp"
#include "evenspin/cli.hpp"
#include "evenspin/csv.hpp"
#include "evenspin/errors.hpp"
#include "evenspin/extended.hpp"
#include "evenspin/little_algebra.hpp"

namespace evenspin::cli {

namespace {

using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;

// Raised for bad input detected after parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vec3 parse_vec3(const std::string& text) {
  Vec3 v;
  std::stringstream ss(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i == 3) break;
    std::size_t used = 0;
    try {
      v[i] = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) break;
    ++i;
  }
  if (i != 3 || ss.rdbuf()->in_avail() != 0 || !is_finite(v)) {
    throw UsageError(fmt::format("--p expects three finite numbers 'x,y,z', got '{}'", text));
  }
  return v;
}

json header_config(const RunConfig& cfg) {
  json j = to_json(cfg);
  j.erase("out");
  return j;
}

csv::Metadata metadata(const RunConfig& cfg, const std::string& command) {
  return {{"version", kVersion},
          {"command", command},
          {"config", header_config(cfg).dump()},
          {"seed", std::to_string(cfg.seed)}};
}

json envelope(const RunConfig& cfg, const std::string& command) {
  return {{"version", kVersion}, {"command", command}, {"config", header_config(cfg)},
          {"seed", cfg.seed}};
}

void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (cfg.out.empty()) {
    body(out);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError(fmt::format("cannot open output file '{}'", cfg.out));
  body(file);
  file.close();
  if (!file) throw UsageError(fmt::format("failed writing output file '{}'", cfg.out));
}

json table_json(const RunConfig& cfg, const std::string& command,
                const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows) {
  json j = envelope(cfg, command);
  j["columns"] = columns;
  j["rows"] = rows;
  return j;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Report report = verify_suite(cfg);
  std::size_t failed = 0;
  for (const auto& c : report.checks()) failed += c.pass ? 0 : 1;

  emit(cfg, out, [&](std::ostream& os) {
    if (cfg.format == Format::json) {
      json j = envelope(cfg, "verify");
      json rows = json::array();
      for (const auto& c : report.checks()) {
        rows.push_back({{"id", c.id},
                        {"equation", c.equation},
                        {"quote_tag", c.quote_tag},
                        {"residual", c.residual},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
      }
      j["checks"] = std::move(rows);
      j["all_pass"] = failed == 0;
      os << j.dump(2) << '\n';
    } else {
      csv::write_metadata(os, metadata(cfg, "verify"));
      os << "id,equation,quote_tag,residual,tolerance,pass\n";
      for (const auto& c : report.checks()) {
        os << '"' << c.id << "\",\"" << c.equation << "\"," << c.quote_tag << ','
           << csv::number(c.residual) << ',' << csv::number(c.tolerance) << ','
           << (c.pass ? 1 : 0) << '\n';
      }
    }
  });

  if (!cfg.out.empty()) {
    out << fmt::format("verify: {} checks, {} failed; report written to {}\n",
                       report.checks().size(), failed, cfg.out);
  }
  for (const auto& c : report.checks())
    if (!c.pass)
      err << fmt::format("FAIL {}: residual {:.3e} > tolerance {:.3e}\n", c.id, c.residual,
                         c.tolerance);
  return failed == 0 ? 0 : 1;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const ScanOptions& o = cfg.scan;
  const std::string command = "scan";
  if (o.mode == "inequivalence") {
    std::vector<MassMomentum> points;
    for (double p : log_grid(o.pmin, o.pmax, o.steps)) points.push_back({cfg.mass, p});
    const auto rows = limit_inequivalence_scan(points);
    emit(cfg, out, [&](std::ostream& os) {
      if (cfg.format == Format::csv) {
        csv::write_inequivalence(os, rows, metadata(cfg, command));
        return;
      }
      std::vector<std::vector<double>> data;
      for (const auto& r : rows) data.push_back({r.m, r.p_mag, r.s_perp, r.w_perp});
      os << table_json(cfg, command, {"m", "p_mag", "s_perp", "w_perp"}, data).dump(2) << '\n';
    });
    return 0;
  }

  std::vector<ContractionRow> rows;
  if (o.mode == "mass") {
    rows = contraction_scan(ScanMode::mass_to_zero, o.pmag, log_grid(o.mmax, o.mmin, o.steps));
  } else if (o.mode == "momentum") {
    rows = contraction_scan(ScanMode::momentum_to_infinity, cfg.mass,
                            log_grid(o.pmin, o.pmax, o.steps));
  } else {
    throw UsageError(fmt::format("--mode must be mass, momentum or inequivalence, got '{}'", o.mode));
  }
  emit(cfg, out, [&](std::ostream& os) {
    if (cfg.format == Format::csv) {
      csv::write_contraction(os, rows, metadata(cfg, command));
      return;
    }
    std::vector<std::vector<double>> data;
    for (const auto& r : rows) data.push_back({r.m, r.p_mag, r.contraction_param, r.bracket_ratio});
    os << table_json(cfg, command, {"m", "p_mag", "contraction_param", "bracket_ratio"}, data)
              .dump(2)
       << '\n';
  });
  return 0;
}

std::vector<AnalyzerPlane> planes_of(const std::string& name) {
  if (name == "perp") return {AnalyzerPlane::perpendicular};
  if (name == "nm") return {AnalyzerPlane::n_m};
  if (name == "both") return {AnalyzerPlane::perpendicular, AnalyzerPlane::n_m};
  throw UsageError(fmt::format("--plane must be perp, nm or both, got '{}'", name));
}

int cmd_bell(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FourMomentum fm = FourMomentum::make(cfg.mass, cfg.momentum);
  const FrameTriad triad = triad_for(fm);
  const double step = cfg.bell.step_deg * kDeg;
  if (!(cfg.bell.step_deg > 0.0) || !std::isfinite(cfg.bell.step_deg)) {
    throw UsageError("--step must be a positive number of degrees");
  }
  const std::string command = "bell";

  if (cfg.bell.chsh) {
    std::vector<csv::ChshCsvRow> rows;
    for (AnalyzerPlane plane : planes_of(cfg.bell.plane)) {
      const auto grid = chsh_grid(triad, plane, step);
      std::vector<ChshSetting> settings;
      for (const auto& g : grid) settings.push_back(g.setting);
      const auto scanned = chsh_scan(fm, settings);
      for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back({grid[i].angles, scanned[i]});
    }
    emit(cfg, out, [&](std::ostream& os) {
      if (cfg.format == Format::csv) {
        csv::write_chsh(os, fm, rows, metadata(cfg, command));
        return;
      }
      std::vector<std::vector<double>> data;
      for (const auto& r : rows) {
        std::vector<double> d{fm.mass(), fm.p_mag()};
        for (std::size_t k : {0, 2, 1, 3}) {
          d.push_back(r.angles[k].theta / kDeg);
          d.push_back(r.angles[k].phi / kDeg);
        }
        d.push_back(r.row.valid ? r.row.S : std::nan(""));
        d.push_back(r.row.valid && r.row.violation ? 1.0 : 0.0);
        data.push_back(std::move(d));
      }
      os << table_json(cfg, command,
                       {"m", "p_mag", "a_theta", "a_phi", "b_theta", "b_phi", "ap_theta", "ap_phi",
                        "bp_theta", "bp_phi", "S", "violation"},
                       data)
                .dump(2)
         << '\n';
    });
    return 0;
  }

  const double tol = cfg.tol.value_or(1e-10);
  std::vector<csv::BellRow> rows;
  std::size_t skipped = 0;
  bool agree = true;
  for (AnalyzerPlane plane : planes_of(cfg.bell.plane)) {
    const AnalyzerAngles a = plane_angles(plane, 0.0);
    const Vec3 a_dir = direction_from_angles(triad, a.theta, a.phi);
    for (const auto& g : chsh_grid(triad, plane, step)) {
      const AnalyzerAngles b = g.angles[0];
      try {
        const Correlation c =
            bell_correlation(fm, {a_dir, direction_from_angles(triad, b.theta, b.phi)});
        agree = agree && std::abs(c.E_formula - c.E_numeric) <= tol;
        rows.push_back({a, b, c});
      } catch (const DomainError&) {
        ++skipped;
      }
    }
  }
  if (rows.empty()) throw DomainError("every analyzer setting has a vanishing spin eigenvalue");
  if (skipped > 0) err << fmt::format("bell: skipped {} settings with vanishing s_a or s_b\n", skipped);

  emit(cfg, out, [&](std::ostream& os) {
    if (cfg.format == Format::csv) {
      csv::write_bell(os, fm, rows, metadata(cfg, command));
      return;
    }
    std::vector<std::vector<double>> data;
    for (const auto& r : rows)
      data.push_back({fm.mass(), fm.p_mag(), r.a.theta / kDeg, r.a.phi / kDeg, r.b.theta / kDeg,
                      r.b.phi / kDeg, r.corr.E_formula, r.corr.E_numeric,
                      std::abs(r.corr.E_formula - r.corr.E_numeric)});
    os << table_json(cfg, command,
                     {"m", "p_mag", "a_theta", "a_phi", "b_theta", "b_phi", "E_formula",
                      "E_numeric", "abs_diff"},
                     data)
              .dump(2)
       << '\n';
  });
  if (!agree) err << "bell: closed-form and numeric correlations disagree beyond tolerance\n";
  return agree ? 0 : 1;
}

int cmd_robinson(const RunConfig& cfg, std::ostream& out) {
  const FourMomentum fm = FourMomentum::make(cfg.mass, cfg.momentum);
  const RobinsonOptions& o = cfg.robinson;
  const auto rows = robinson_circle_samples(fm, o.s, o.samples, o.frames, o.dt);
  const double scale = cfg.units == Units::si_scale ? cfg.hbar_c : 1.0;
  const std::string command = "robinson";
  emit(cfg, out, [&](std::ostream& os) {
    if (cfg.format == Format::csv) {
      csv::write_robinson(os, rows, scale, metadata(cfg, command));
      return;
    }
    std::vector<std::vector<double>> data;
    for (const auto& r : rows)
      data.push_back({static_cast<double>(r.frame), r.t, scale * r.x, scale * r.y, scale * r.z,
                      r.phase});
    os << table_json(cfg, command, {"frame", "t", "x", "y", "z", "phase"}, data).dump(2) << '\n';
  });
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Even spin operator toolkit: invariant checks, contraction scans, Bell "
               "correlations and Robinson circles (natural units)."};
  app.name("evenspin");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  double mass = 0.0;
  std::string p_text;
  double tol = 0.0;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  std::string units;
  double hbar_c = 1.0;

  app.add_option("--config", config_path, "JSON run configuration; flags override its fields")
      ->check(CLI::ExistingFile);
  auto* o_mass = app.add_option("--m", mass, "Particle mass m >= 0");
  auto* o_p = app.add_option("--p", p_text, "Momentum as x,y,z");
  auto* o_tol = app.add_option("--tol", tol, "Absolute bound replacing every check tolerance");
  auto* o_out = app.add_option("--out", out_path, "Output file (default: standard output)");
  auto* o_format = app.add_option("--format", format, "Output format")
                       ->check(CLI::IsMember({"csv", "json"}));
  auto* o_seed = app.add_option("--seed", seed, "Seed of the randomized suites");
  auto* o_units = app.add_option("--units", units, "Length units of Robinson output")
                      ->check(CLI::IsMember({"natural", "si-scale"}));
  auto* o_hbar_c = app.add_option("--hbar-c", hbar_c, "Length scale used by --units si-scale");

  auto* verify = app.add_subcommand("verify", "Run the full invariant suite and write a report");

  auto* scan = app.add_subcommand("scan", "Contraction or limit-inequivalence scan (CSV)");
  ScanOptions so;
  auto* o_mode = scan->add_option("--mode", so.mode, "mass | momentum | inequivalence");
  auto* o_pmin = scan->add_option("--pmin", so.pmin, "Smallest |p| of the momentum grid");
  auto* o_pmax = scan->add_option("--pmax", so.pmax, "Largest |p| of the momentum grid");
  auto* o_mmin = scan->add_option("--mmin", so.mmin, "Smallest m of the mass grid");
  auto* o_mmax = scan->add_option("--mmax", so.mmax, "Largest m of the mass grid");
  auto* o_pmag = scan->add_option("--pmag", so.pmag, "Fixed |p| of the mass scan");
  auto* o_steps = scan->add_option("--steps", so.steps, "Grid points (logarithmic)");

  auto* bell = app.add_subcommand("bell", "Singlet correlations or CHSH scan (CSV)");
  BellOptions bo;
  auto* o_chsh = bell->add_flag("--chsh", bo.chsh, "Emit the CHSH grid instead of E(a,b)");
  auto* o_plane = bell->add_option("--plane", bo.plane, "perp | nm | both")
                      ->check(CLI::IsMember({"perp", "nm", "both"}));
  auto* o_step = bell->add_option("--step", bo.step_deg, "Angle step in degrees");

  auto* robinson = app.add_subcommand("robinson", "Robinson circle samples, massless only (CSV)");
  RobinsonOptions ro;
  auto* o_s = robinson->add_option("--s", ro.s, "Helicity s");
  auto* o_samples = robinson->add_option("--samples", ro.samples, "Points per circle");
  auto* o_frames = robinson->add_option("--frames", ro.frames, "Time frames");
  auto* o_dt = robinson->add_option("--dt", ro.dt, "Frame spacing (<= 0: |r_s|/8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      try {
        cfg = config_from_json(json::parse(in));
      } catch (const json::exception& e) {
        throw UsageError(fmt::format("invalid config file '{}': {}", config_path, e.what()));
      }
    } else {
      cfg.format = name == "verify" ? Format::json : Format::csv;
      if (name == "robinson") cfg.mass = 0.0;
    }
    if (o_mass->count()) cfg.mass = mass;
    if (o_p->count()) cfg.momentum = parse_vec3(p_text);
    if (o_tol->count()) {
      if (!(tol > 0.0) || !std::isfinite(tol)) throw UsageError("--tol must be positive");
      cfg.tol = tol;
    }
    if (o_out->count()) cfg.out = out_path;
    if (o_format->count()) cfg.format = format == "csv" ? Format::csv : Format::json;
    if (o_seed->count()) cfg.seed = seed;
    if (o_units->count()) cfg.units = units == "si-scale" ? Units::si_scale : Units::natural;
    if (o_hbar_c->count()) {
      if (!(hbar_c > 0.0) || !std::isfinite(hbar_c)) throw UsageError("--hbar-c must be positive");
      cfg.hbar_c = hbar_c;
    }
    if (o_mode->count()) cfg.scan.mode = so.mode;
    if (o_pmin->count()) cfg.scan.pmin = so.pmin;
    if (o_pmax->count()) cfg.scan.pmax = so.pmax;
    if (o_mmin->count()) cfg.scan.mmin = so.mmin;
    if (o_mmax->count()) cfg.scan.mmax = so.mmax;
    if (o_pmag->count()) cfg.scan.pmag = so.pmag;
    if (o_steps->count()) cfg.scan.steps = so.steps;
    if (o_chsh->count()) cfg.bell.chsh = bo.chsh;
    if (o_plane->count()) cfg.bell.plane = bo.plane;
    if (o_step->count()) cfg.bell.step_deg = bo.step_deg;
    if (o_s->count()) cfg.robinson.s = ro.s;
    if (o_samples->count()) cfg.robinson.samples = ro.samples;
    if (o_frames->count()) cfg.robinson.frames = ro.frames;
    if (o_dt->count()) cfg.robinson.dt = ro.dt;

    // Rejects the excluded kinematics before any work is done.
    (void)FourMomentum::make(cfg.mass, cfg.momentum);

    if (sub == verify) return cmd_verify(cfg, out, err);
    if (sub == scan) return cmd_scan(cfg, out);
    if (sub == bell) return cmd_bell(cfg, out, err);
    if (sub == robinson) return cmd_robinson(cfg, out);
  } catch (const UsageError& e) {
    err << fmt::format("evenspin {}: {}\n", name, e.what());
    return 2;
  } catch (const DomainError& e) {
    err << fmt::format("evenspin {}: configuration rejected: {}\n", name, e.what());
    return 2;
  } catch (const ContractError& e) {
    err << fmt::format("evenspin {}: configuration rejected: {}\n", name, e.what());
    return 2;
  } catch (const Error& e) {
    err << fmt::format("evenspin {}: {}\n", name, e.what());
    return 1;
  }
  return 2;
}

}  // namespace evenspin::cli
