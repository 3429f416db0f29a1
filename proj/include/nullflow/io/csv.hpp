#pragma once

#include <iosfwd>
#include <string>

#include "nullflow/flow/trajectory.hpp"

namespace nullflow {

// Long format, one row per (sample, node): t,node,g11,g12,g22,u.
// Values use 17 significant digits so a read-back is bit exact; u is empty without heat.
void write_trajectory_csv(std::ostream& out, const FlowTrajectory& trajectory);

// Rebuilds samples on the given grid; curvature and mass are recomputed from the metric.
FlowTrajectory read_trajectory_csv(std::istream& in, const LeafGrid<double>& grid, const FlowConfig& config);

}  // namespace nullflow
