#pragma once

#include <string>

#include "nullflow/flow/trajectory.hpp"

namespace nullflow {

struct CurvatureBounds {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho3 = 0.0;
  bool operator==(const CurvatureBounds&) const = default;
};

struct EquivalenceReport {
  bool hypothesis_ok = false;
  std::string failed_hypothesis;   // empty when hypothesis_ok
  double observed_ric_min = 0.0;   // smallest eigenvalue of Ric relative to g
  double observed_ric_max = 0.0;
  bool holds = false;              // e^{-2 rho2 t} <= eig(g(0)^-1 g(t)) <= e^{2 rho1 t}
  bool literal_display_holds = false;  // e^{-rho1 T} <= eig <= e^{-rho2 T}
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  double worst_lower_margin = 0.0;  // min over samples of (eig - lower bound)
  double worst_upper_margin = 0.0;  // min over samples of (upper bound - eig)
};

// Uniform equivalence of the evolving metrics against g(0). Checks the
// curvature hypothesis -rho1 g <= Ric <= rho2 g at every sample first.
EquivalenceReport metric_equivalence_check(const FlowTrajectory& trajectory, const CurvatureBounds& bounds,
                                           double slack = 1e-10);

}  // namespace nullflow
