#pragma once

// Command-line front end: run configuration, the verification suite and the
// table-emitting subcommands. run() is the whole program and can be called
// in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "evenspin/report.hpp"
#include "evenspin/vec3.hpp"

namespace evenspin::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Format { csv, json };
enum class Units { natural, si_scale };

struct ScanOptions {
  std::string mode{"momentum"};  // mass | momentum | inequivalence
  double pmin{0.1};
  double pmax{1000.0};
  double mmin{0.01};
  double mmax{1.0};
  double pmag{1.0};
  std::size_t steps{40};
  bool operator==(const ScanOptions&) const = default;
};

struct BellOptions {
  bool chsh{false};
  std::string plane{"perp"};  // perp | nm | both
  double step_deg{5.0};
  bool operator==(const BellOptions&) const = default;
};

struct RobinsonOptions {
  double s{0.5};
  std::size_t samples{64};
  std::size_t frames{10};
  double dt{0.0};  // <= 0 selects |r_s|/8
  bool operator==(const RobinsonOptions&) const = default;
};

struct RunConfig {
  double mass{1.0};
  Vec3 momentum{0.0, 0.0, 2.0};
  std::optional<double> tol;  // replaces every check tolerance when set
  std::string out;            // empty: standard output
  Format format{Format::json};
  std::uint64_t seed{1};
  Units units{Units::natural};
  double hbar_c{1.0};  // length scale applied to Robinson positions under si-scale
  ScanOptions scan;
  BellOptions bell;
  RobinsonOptions robinson;
  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& cfg);
/// Throws nlohmann::json::exception on missing or mistyped fields.
RunConfig config_from_json(const nlohmann::json& j);

/// The complete invariant suite: checks at the configured momentum plus the
/// seeded random suites. Throws DomainError for an invalid configuration.
Report verify_suite(const RunConfig& cfg);

/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration
/// error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace evenspin::cli
