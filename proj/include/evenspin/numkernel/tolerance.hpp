#pragma once

#include <algorithm>

namespace evenspin {

/// Mixed absolute/relative tolerance. A residual passes when
/// residual <= abs_eps + rel_eps * scale.
struct Tolerance {
  double abs_eps{1e-10};
  double rel_eps{1e-10};

  constexpr double bound(double scale) const { return abs_eps + rel_eps * scale; }
  constexpr bool accepts(double residual, double scale = 0.0) const {
    return residual <= bound(scale);
  }

  static constexpr Tolerance absolute(double eps) { return {eps, 0.0}; }
};

}  // namespace evenspin
