#pragma once

#include <vector>

#include "nullflow/flow/trajectory.hpp"

namespace nullflow {

// f = ln(u/A). Throws DomainError at the first node with u <= 0 or u > A.
NodeArray<double> log_density(const NodeArray<double>& u, double A);

// |grad f|^2 / (1 - f)^2 for f <= 0.
NodeArray<double> phi_quantity(const LeafMetric<double>& metric, const NodeArray<double>& f);

// |grad u|^2 / u^2, i.e. |grad ln u|^2 with the chain rule applied to the stencil of u.
NodeArray<double> log_gradient_sq(const LeafMetric<double>& metric, const NodeArray<double>& u);

// u_t / u at every sample from three-point weights over the sample times,
// centered inside and one-sided at the ends. Constant-in-time u gives exactly 0.
std::vector<NodeArray<double>> log_time_derivative(const FlowTrajectory& trajectory);

// G = t (|grad u|^2/u^2 - alpha u_t/u).
NodeArray<double> harnack_quantity(const LeafMetric<double>& metric, const NodeArray<double>& u,
                                   const NodeArray<double>& ut_over_u, double alpha, double t);

}  // namespace nullflow
