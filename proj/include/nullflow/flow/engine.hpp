#pragma once

#include <optional>

#include "nullflow/flow/config.hpp"
#include "nullflow/flow/trajectory.hpp"
#include "nullflow/metric/leaf_metric.hpp"

namespace nullflow {

// Ricci tensor and scalar curvature used by the flow. On the symmetric sphere
// reduction these are the closed forms for a round metric s * (unit metric).
SampleCurvature flow_curvature(const LeafMetric<double>& metric);

// One RK4 step of d/dt g = -2 Ric (forward) or +2 Ric (backward).
// Throws SingularMetricError when a stage loses positive definiteness.
LeafMetric<double> step_flow(const LeafMetric<double>& metric, FlowDirection direction, double dt);

// Integrates the flow and, when config.coupling is set, the heat equation
// (d/dt u = Delta u) or the conjugate heat equation (d/dt u = Delta u - Scal u)
// by Strang splitting: half heat step, full metric step, half heat step.
FlowTrajectory run_flow(const LeafMetric<double>& initial, const FlowConfig& config,
                        const std::optional<NodeArray<double>>& u0 = std::nullopt);

// Forward or static flow co-solved with d/dt u = Delta u.
FlowTrajectory solve_heat(const LeafMetric<double>& initial, FlowConfig config, const NodeArray<double>& u0);

// Flow in any direction co-solved with d/dt u = Delta u - Scal u.
FlowTrajectory solve_conjugate_heat(const LeafMetric<double>& initial, FlowConfig config,
                                    const NodeArray<double>& u0);

// Right-hand side of the heat equation on a frozen metric: Delta u - potential * Scal * u.
NodeArray<double> heat_rhs(const LeafMetric<double>& metric, const NodeArray<double>& scalar,
                           const NodeArray<double>& u, double potential);

// Largest stable explicit step estimate: spectral radius bound of the heat operator.
double heat_stiffness(const LeafMetric<double>& metric, const NodeArray<double>& scalar, double potential,
                      int* node = nullptr);

}  // namespace nullflow
