#include "nullflow/flow/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nullflow/core/errors.hpp"

namespace nullflow {

EquivalenceReport metric_equivalence_check(const FlowTrajectory& trajectory, const CurvatureBounds& bounds,
                                           double slack) {
  if (trajectory.size() < 2) throw ConfigError("metric equivalence needs at least two samples");
  if (bounds.rho1 < 0 || bounds.rho2 < 0) throw ConfigError("curvature bounds must be nonnegative");

  EquivalenceReport rep;
  rep.observed_ric_min = std::numeric_limits<double>::infinity();
  rep.observed_ric_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : trajectory.samples) {
    for (int k = 0; k < s.metric.size(); ++k) {
      const auto [lo, hi] = relative_eigenvalues<double>(s.curvature.ricci.at(k), s.metric.at(k));
      rep.observed_ric_min = std::min(rep.observed_ric_min, lo);
      rep.observed_ric_max = std::max(rep.observed_ric_max, hi);
    }
  }
  std::ostringstream why;
  why.precision(17);
  if (rep.observed_ric_min < -bounds.rho1 - slack) {
    why << "ricci-lower: min eigenvalue " << rep.observed_ric_min << " < -rho1 = " << -bounds.rho1;
  } else if (rep.observed_ric_max > bounds.rho2 + slack) {
    why << "ricci-upper: max eigenvalue " << rep.observed_ric_max << " > rho2 = " << bounds.rho2;
  }
  rep.failed_hypothesis = why.str();
  rep.hypothesis_ok = rep.failed_hypothesis.empty();
  if (!rep.hypothesis_ok) return rep;

  const auto& g0 = trajectory.samples.front().metric;
  const double T = trajectory.samples.back().t;
  const double lit_lo = std::exp(-bounds.rho1 * T);
  const double lit_hi = std::exp(-bounds.rho2 * T);
  rep.holds = true;
  rep.literal_display_holds = true;
  rep.worst_lower_margin = std::numeric_limits<double>::infinity();
  rep.worst_upper_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : trajectory.samples) {
    const double lower = std::exp(-2 * bounds.rho2 * s.t);
    const double upper = std::exp(2 * bounds.rho1 * s.t);
    for (int k = 0; k < s.metric.size(); ++k) {
      const auto [lo, hi] = relative_eigenvalues<double>(s.metric.at(k), g0.at(k));
      rep.min_ratio = std::min(rep.min_ratio, lo);
      rep.max_ratio = std::max(rep.max_ratio, hi);
      rep.worst_lower_margin = std::min(rep.worst_lower_margin, lo - lower);
      rep.worst_upper_margin = std::min(rep.worst_upper_margin, upper - hi);
      if (lo < lit_lo - slack || hi > lit_hi + slack) rep.literal_display_holds = false;
    }
  }
  rep.holds = rep.worst_lower_margin >= -slack && rep.worst_upper_margin >= -slack;
  return rep;
}

}  // namespace nullflow
