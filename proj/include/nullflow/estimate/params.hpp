#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nullflow/estimate/cutoff.hpp"
#include "nullflow/flow/equivalence.hpp"

namespace nullflow {

enum class Theorem {
  LogGradientBackward,  // |grad u|^2/u^2 <= (1 + ln(A/u))^2 (...), backward flow
  LogGradientForward,   // same shape, forward flow
  HarnackLocal,         // |grad f|^2 - alpha f_t on a geodesic cube
  HarnackGlobal,        // |grad u|^2/u^2 - alpha u_t/u on the whole leaf
  LiYau,                // alpha = 1, p = q = 2
  GradientSup,          // t |grad u|^2 <= C A (1 + rho1 T)
  HarnackCorollary,     // |grad u|^2/u^2 - u_t/u <= alpha n p/(4t) + c(n) alpha^2 (rho1 + rho2)
};

inline constexpr Theorem kAllTheorems[] = {
    Theorem::LogGradientBackward, Theorem::LogGradientForward, Theorem::HarnackLocal, Theorem::HarnackGlobal,
    Theorem::LiYau,               Theorem::GradientSup,        Theorem::HarnackCorollary,
};

std::string_view to_string(Theorem t);
Theorem parse_theorem(std::string_view s);

// True for theorems stated on a geodesic cube Q_{2 rho, T}.
bool is_local(Theorem t);

enum class EstimateStatus { Holds, Violated, HypothesisViolated };
std::string_view to_string(EstimateStatus s);

struct EstimateParams {
  double alpha = 2.0;
  double p = 4.0;
  double q = 4.0;
  double cube_radius = 0.0;  // rho; 0 selects a quarter of the diameter
  int center = -1;           // cube center node; -1 selects the default
  double A = 0.0;            // upper bound for u; 0 selects (1 + 1e-9) sup u
  double tolerance = 1e-6;   // violation threshold on LHS - RHS
  double t_min = 0.0;        // samples with t <= 0 or t < t_min are skipped
  double rho = -1.0;         // single curvature scale for the nonnegative branches; < 0 measures it
  std::optional<CurvatureBounds> bounds;  // overrides the measured bounds

  // Checks alpha >= 1, p, q > 0 and 1/p + 1/q = 1/alpha to 1e-12.
  void validate() const;
  bool operator==(const EstimateParams&) const = default;
};

// Operational constants derived from the cutoff certificate.
struct EstimateConstants {
  int n = 2;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;  // max(c1, c2)
  double c4 = 0.0;  // n c3
  double cn = 0.0;  // c(n) = n c4
};

EstimateConstants derive_constants(const CutoffCertificate& cert, int n);

}  // namespace nullflow
