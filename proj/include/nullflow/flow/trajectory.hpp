#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "nullflow/flow/config.hpp"
#include "nullflow/metric/curvature.hpp"

namespace nullflow {

// Ricci tensor and scalar curvature of a stored metric. Christoffel symbols and
// the full Riemann tensor are recomputed on demand from the metric.
struct SampleCurvature {
  SymmetricTensorField<double> ricci;
  NodeArray<double> scalar;
};

struct FlowSample {
  double t;
  LeafMetric<double> metric;
  SampleCurvature curvature;
  std::optional<NodeArray<double>> u;
  double mass = 0.0;  // integral of u over the leaf at time t
};

struct FlowTrajectory {
  FlowConfig config;
  std::vector<FlowSample> samples;
  Termination termination = Termination::ReachedEnd;
  double singular_time = std::numeric_limits<double>::quiet_NaN();
  int singular_node = -1;
  double singular_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  double singular_threshold = 0.0;
  long steps = 0;
  double min_dt = std::numeric_limits<double>::infinity();
  double max_dt = 0.0;

  bool has_heat() const { return !samples.empty() && samples.front().u.has_value(); }
  const LeafGrid<double>& grid() const { return samples.front().metric.grid(); }
  std::size_t size() const { return samples.size(); }
};

}  // namespace nullflow
