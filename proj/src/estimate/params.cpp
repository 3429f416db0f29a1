#include "nullflow/estimate/params.hpp"

#include <algorithm>
#include <string>

#include "nullflow/core/errors.hpp"
#include "nullflow/estimate/bounds.hpp"

namespace nullflow {

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::LogGradientBackward: return "log-gradient-backward";
    case Theorem::LogGradientForward: return "log-gradient-forward";
    case Theorem::HarnackLocal: return "harnack-local";
    case Theorem::HarnackGlobal: return "harnack-global";
    case Theorem::LiYau: return "li-yau";
    case Theorem::GradientSup: return "gradient-sup";
    case Theorem::HarnackCorollary: return "harnack-corollary";
  }
  return "li-yau";
}

Theorem parse_theorem(std::string_view s) {
  for (Theorem t : kAllTheorems) {
    if (to_string(t) == s) return t;
  }
  throw ConfigError("unknown theorem id '" + std::string(s) + "'");
}

bool is_local(Theorem t) {
  return t == Theorem::LogGradientBackward || t == Theorem::LogGradientForward || t == Theorem::HarnackLocal;
}

std::string_view to_string(EstimateStatus s) {
  switch (s) {
    case EstimateStatus::Holds: return "holds";
    case EstimateStatus::Violated: return "violated";
    case EstimateStatus::HypothesisViolated: return "hypothesis-violated";
  }
  return "holds";
}

void EstimateParams::validate() const {
  require_alpha_pq(alpha, p, q, false);
  if (cube_radius < 0) throw ConfigError("estimate.cube_radius must be non-negative");
  if (A < 0) throw ConfigError("estimate.A must be non-negative");
  if (!(tolerance >= 0)) throw ConfigError("estimate.tolerance must be non-negative");
  if (t_min < 0) throw ConfigError("estimate.t_min must be non-negative");
  if (bounds && (bounds->rho1 < 0 || bounds->rho2 < 0 || bounds->rho3 < 0)) {
    throw ConfigError("estimate.bounds must be non-negative");
  }
}

EstimateConstants derive_constants(const CutoffCertificate& cert, int n) {
  EstimateConstants c;
  c.n = n;
  c.c1 = cert.c1;
  c.c2 = cert.c2;
  c.c3 = std::max(cert.c1, cert.c2);
  c.c4 = n * c.c3;
  c.cn = n * c.c4;
  return c;
}

}  // namespace nullflow
