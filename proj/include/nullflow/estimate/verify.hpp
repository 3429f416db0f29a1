#pragma once

#include <limits>
#include <string>
#include <vector>

#include "nullflow/estimate/params.hpp"
#include "nullflow/flow/trajectory.hpp"

namespace nullflow {

struct HypothesisCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool ok = true;
};

struct EstimatePoint {
  int sample = -1;
  int node = -1;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const { return rhs - lhs; }
};

struct MarginQuantiles {
  double q0 = 0.0, q05 = 0.0, q50 = 0.0, q95 = 0.0, q100 = 0.0;
};

struct EstimateReport {
  Theorem theorem = Theorem::LiYau;
  EstimateStatus status = EstimateStatus::HypothesisViolated;
  std::string failed_hypothesis;  // first failing check, empty otherwise
  std::vector<HypothesisCheck> hypotheses;

  EstimateParams params;     // with defaults resolved
  CurvatureBounds bounds;    // bounds used on the right-hand side
  double rho = 0.0;          // single scale for the nonnegative branches
  double A = 0.0;
  int center = -1;
  double cube_radius = 0.0;
  double diameter = 0.0;
  std::string distance_method;
  EstimateConstants constants;

  std::size_t admissible = 0;
  double max_lhs = -std::numeric_limits<double>::infinity();
  double max_violation = 0.0;  // max over points of LHS - RHS, clamped below at 0
  EstimatePoint worst;         // smallest margin
  MarginQuantiles quantiles;
  std::vector<EstimatePoint> violations;  // LHS - RHS > tolerance, ordered by (sample, node), capped
  std::vector<double> sample_times;       // admissible samples
  std::vector<double> sample_min_margin;
  double proof_variant_min_margin = std::numeric_limits<double>::quiet_NaN();

  bool holds() const { return status == EstimateStatus::Holds; }
};

inline constexpr std::size_t kMaxListedViolations = 64;

// Evaluates both sides of one theorem at every admissible (x, t).
// Hypothesis failures set status hypothesis-violated and skip the conclusion.
// Throws ConfigError when the trajectory carries no heat solution or nothing is admissible.
EstimateReport verify(const FlowTrajectory& trajectory, Theorem theorem, const EstimateParams& params,
                      const CutoffCertificate& cert = shipped_cutoff());

}  // namespace nullflow
