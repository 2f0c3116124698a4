#pragma once

// CSV tables for the scans. Numbers are written with 17 significant digits,
// angles in degrees. Leading "# key: value" lines carry run metadata.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "evenspin/bell.hpp"
#include "evenspin/even_spin.hpp"
#include "evenspin/extended.hpp"
#include "evenspin/little_algebra.hpp"

namespace evenspin::csv {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Shortest round-trip-safe rendering used in every table ("%.17g").
std::string number(double v);

void write_metadata(std::ostream& os, const Metadata& meta);

void write_contraction(std::ostream& os, const std::vector<ContractionRow>& rows,
                       const Metadata& meta = {});

void write_inequivalence(std::ostream& os, const std::vector<InequivalenceRow>& rows,
                         const Metadata& meta = {});

/// Positions are multiplied by length_scale (1 in natural units).
void write_robinson(std::ostream& os, const std::vector<RobinsonPoint>& rows,
                    double length_scale = 1.0, const Metadata& meta = {});

struct BellRow {
  AnalyzerAngles a;
  AnalyzerAngles b;
  Correlation corr;
};

void write_bell(std::ostream& os, const FourMomentum& fm, const std::vector<BellRow>& rows,
                const Metadata& meta = {});

struct ChshCsvRow {
  std::array<AnalyzerAngles, 4> angles;  // a, a', b, b'
  ChshRow row;
};

/// Invalid rows carry S = nan and violation = 0.
void write_chsh(std::ostream& os, const FourMomentum& fm, const std::vector<ChshCsvRow>& rows,
                const Metadata& meta = {});

}  // namespace evenspin::csv
