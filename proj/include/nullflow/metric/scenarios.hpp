#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "nullflow/core/errors.hpp"
#include "nullflow/metric/leaf_metric.hpp"

namespace nullflow {

struct ScenarioParams {
  double radius = 1.0;
  double side = 2 * std::numbers::pi;
  double amplitude = 0.2;
  int resolution = 64;      // nodes along axis 0 (theta or x)
  int resolution_phi = 0;   // nodes along axis 1; 0 means "same as resolution" (2x for spheres)
  bool reduced = true;      // spheres: rotationally symmetric reduction

  bool operator==(const ScenarioParams&) const = default;
};

inline bool is_sphere(std::string_view id) { return id == "round-sphere"; }

inline void validate_scenario(std::string_view id, const ScenarioParams& p) {
  if (id != "round-sphere" && id != "flat-torus" && id != "torus-bump") {
    throw ConfigError("unknown scenario id '" + std::string(id) + "'");
  }
  if (!(p.radius > 0)) throw ConfigError("scenario radius must be positive");
  if (!(p.side > 0)) throw ConfigError("scenario side must be positive");
  if (id == "torus-bump" && !(std::abs(p.amplitude) < 1)) {
    throw ConfigError("bump amplitude must satisfy |amplitude| < 1 to keep the metric positive definite");
  }
  if (p.resolution < 8) throw ConfigError("resolution must be at least 8");
  if (p.resolution_phi != 0 && p.resolution_phi < 8) throw ConfigError("resolution_phi must be at least 8");
}

// Conformal factor of the torus-bump scenario.
template <class Scalar>
Scalar bump_factor(Scalar x, Scalar y, Scalar amplitude, Scalar side) {
  const Scalar k = 2 * std::numbers::pi_v<Scalar> / side;
  return 1 + amplitude * std::sin(k * x) * std::sin(k * y);
}

template <class Scalar>
LeafGrid<Scalar> scenario_grid(std::string_view id, const ScenarioParams& p) {
  validate_scenario(id, p);
  const int n0 = p.resolution;
  if (is_sphere(id)) {
    if (p.reduced) return LeafGrid<Scalar>::symmetric_sphere(n0);
    return LeafGrid<Scalar>::spherical(n0, p.resolution_phi ? p.resolution_phi : 2 * n0);
  }
  const int n1 = p.resolution_phi ? p.resolution_phi : n0;
  return LeafGrid<Scalar>::periodic(n0, n1, Scalar(p.side), Scalar(p.side));
}

// Metric of a built-in scenario sampled on its grid.
template <class Scalar>
LeafMetric<Scalar> build_scenario_metric(std::string_view id, const ScenarioParams& p) {
  const auto grid = scenario_grid<Scalar>(id, p);
  const int n = grid.size();
  NodeArray<Scalar> g00(n), g01 = NodeArray<Scalar>::Zero(n), g11(n);
  for (int k = 0; k < n; ++k) {
    const auto [x0, x1] = grid.position(k);
    if (is_sphere(id)) {
      const Scalar r2 = Scalar(p.radius) * Scalar(p.radius);
      const Scalar s = std::sin(x0);
      g00[k] = r2;
      g11[k] = r2 * s * s;
    } else if (id == "flat-torus") {
      g00[k] = 1;
      g11[k] = 1;
    } else {
      const Scalar lam = bump_factor(x0, x1, Scalar(p.amplitude), Scalar(p.side));
      g00[k] = lam;
      g11[k] = lam;
    }
  }
  return LeafMetric<Scalar>(grid, std::move(g00), std::move(g01), std::move(g11));
}

}  // namespace nullflow
