#include <stdexcept>

#include "evenspin/cli.hpp"

namespace evenspin::cli {

namespace {

const char* format_name(Format f) { return f == Format::csv ? "csv" : "json"; }
const char* units_name(Units u) { return u == Units::natural ? "natural" : "si-scale"; }

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw nlohmann::json::other_error::create(501, "unknown format '" + s + "'", nullptr);
}

Units parse_units(const std::string& s) {
  if (s == "natural") return Units::natural;
  if (s == "si-scale") return Units::si_scale;
  throw nlohmann::json::other_error::create(501, "unknown units '" + s + "'", nullptr);
}

}  // namespace

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["mass"] = cfg.mass;
  j["momentum"] = {cfg.momentum.x, cfg.momentum.y, cfg.momentum.z};
  j["tol"] = cfg.tol ? nlohmann::json(*cfg.tol) : nlohmann::json(nullptr);
  j["out"] = cfg.out;
  j["format"] = format_name(cfg.format);
  j["seed"] = cfg.seed;
  j["units"] = units_name(cfg.units);
  j["hbar_c"] = cfg.hbar_c;
  j["scan"] = {{"mode", cfg.scan.mode}, {"pmin", cfg.scan.pmin}, {"pmax", cfg.scan.pmax},
               {"mmin", cfg.scan.mmin}, {"mmax", cfg.scan.mmax}, {"pmag", cfg.scan.pmag},
               {"steps", cfg.scan.steps}};
  j["bell"] = {{"chsh", cfg.bell.chsh}, {"plane", cfg.bell.plane}, {"step_deg", cfg.bell.step_deg}};
  j["robinson"] = {{"s", cfg.robinson.s},
                   {"samples", cfg.robinson.samples},
                   {"frames", cfg.robinson.frames},
                   {"dt", cfg.robinson.dt}};
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.mass = j.at("mass").get<double>();
  const auto& p = j.at("momentum");
  if (!p.is_array() || p.size() != 3) {
    throw nlohmann::json::type_error::create(302, "momentum must be a 3-element array", &p);
  }
  cfg.momentum = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
  const auto& tol = j.at("tol");
  if (!tol.is_null()) cfg.tol = tol.get<double>();
  cfg.out = j.at("out").get<std::string>();
  cfg.format = parse_format(j.at("format").get<std::string>());
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.units = parse_units(j.at("units").get<std::string>());
  cfg.hbar_c = j.at("hbar_c").get<double>();

  const auto& s = j.at("scan");
  cfg.scan = {s.at("mode").get<std::string>(), s.at("pmin").get<double>(),
              s.at("pmax").get<double>(),       s.at("mmin").get<double>(),
              s.at("mmax").get<double>(),       s.at("pmag").get<double>(),
              s.at("steps").get<std::size_t>()};
  const auto& b = j.at("bell");
  cfg.bell = {b.at("chsh").get<bool>(), b.at("plane").get<std::string>(),
              b.at("step_deg").get<double>()};
  const auto& r = j.at("robinson");
  cfg.robinson = {r.at("s").get<double>(), r.at("samples").get<std::size_t>(),
                  r.at("frames").get<std::size_t>(), r.at("dt").get<double>()};
  return cfg;
}

}  // namespace evenspin::cli
