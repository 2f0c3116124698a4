#pragma once

#include <string>
#include <vector>

namespace evenspin {

/// One verified identity. `equation` holds the identity in plain text,
/// `quote_tag` the short name of the claim it backs.
struct Check {
  std::string id;
  std::string equation;
  std::string quote_tag;
  double residual{0.0};
  double tolerance{0.0};
  bool pass{false};
};

/// Ordered list of checks produced by a verify_* routine.
class Report {
 public:
  /// Appends a row; pass = residual <= tolerance (NaN residuals fail).
  Check& add(std::string id, std::string equation, std::string quote_tag, double residual,
             double tolerance);
  void append(const Report& other);

  const std::vector<Check>& checks() const { return checks_; }
  bool empty() const { return checks_.empty(); }
  std::size_t size() const { return checks_.size(); }
  bool all_pass() const;
  double max_residual() const;
  /// First row with this id, or nullptr.
  const Check* find(const std::string& id) const;
  /// Ids of failing rows, comma separated (empty when all pass).
  std::string failures() const;

 private:
  std::vector<Check> checks_;
};

}  // namespace evenspin
