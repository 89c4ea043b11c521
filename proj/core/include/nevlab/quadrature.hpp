#pragma once

#include <functional>

#include "nevlab/types.hpp"

namespace nevlab {

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  bool stalled = false;      // target not met at max depth (best estimate kept)
  long evals = 0;
  int singular_panels = 0;   // panels handled by the integrable-log model
};

enum class LogTransform { Log, LogPlus };

// Adaptive-panel trapezoid estimate of
//   int_0^{2pi} transform(|f(center + radius e^{i phi})|) dphi.
// Panels where |f| drops below 1e-12 are carved at +-1e-6 radians around the
// offending angle and integrated there with the simple-zero local model
// log|c (phi - phi0)| (log transform; the log+ transform contributes 0 there).
QuadResult circle_log_integral(const std::function<Complex(Complex)>& f,
                               Complex center, double radius,
                               LogTransform transform,
                               const QuadratureSpec& spec = {});

}  // namespace nevlab
