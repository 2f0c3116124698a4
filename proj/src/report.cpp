#include "evenspin/report.hpp"

#include <algorithm>
#include <cmath>

namespace evenspin {

Check& Report::add(std::string id, std::string equation, std::string quote_tag, double residual,
                   double tolerance) {
  const bool pass = !std::isnan(residual) && residual <= tolerance;
  checks_.push_back(
      {std::move(id), std::move(equation), std::move(quote_tag), residual, tolerance, pass});
  return checks_.back();
}

void Report::append(const Report& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool Report::all_pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

double Report::max_residual() const {
  double best = 0.0;
  for (const auto& c : checks_) best = std::max(best, c.residual);
  return best;
}

const Check* Report::find(const std::string& id) const {
  for (const auto& c : checks_)
    if (c.id == id) return &c;
  return nullptr;
}

std::string Report::failures() const {
  std::string out;
  for (const auto& c : checks_) {
    if (c.pass) continue;
    if (!out.empty()) out += ", ";
    out += c.id;
  }
  return out;
}

}  // namespace evenspin
