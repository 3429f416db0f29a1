#pragma once

#include <string>
#include <vector>

#include "nullflow/estimate/verify.hpp"
#include "nullflow/io/config.hpp"

namespace nullflow {

inline constexpr int kReportSchemaVersion = 1;

// One theorem as a JSON object; the verify subcommand prints this.
std::string render_report(const EstimateReport& report);

// Full run report: scenario, flow outcome, cutoff constants and every theorem.
// Carries no timings, so it is byte-stable for a fixed config.
std::string render_run_report(const RunConfig& config, const FlowTrajectory& trajectory,
                              const std::vector<EstimateReport>& reports);

// Numerical radius sqrt(g_theta_theta) against sqrt(R0^2 + 2 sign t) on sphere runs (sign -1 forward).
std::string render_radius_svg(const FlowTrajectory& trajectory, double initial_radius);

// Smallest margin per admissible sample, one curve per theorem, on an asinh axis.
std::string render_margin_svg(const std::vector<EstimateReport>& reports);

// Largest relative radius error over samples with t <= t_max; sphere runs only.
double max_radius_error(const FlowTrajectory& trajectory, double initial_radius, double t_max);

}  // namespace nullflow
