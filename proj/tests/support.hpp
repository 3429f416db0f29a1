#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nullflow/metric/scenarios.hpp"

namespace testing {

using nullflow::LeafGrid;
using nullflow::NodeArray;
using nullflow::ScalarField;

inline constexpr double kPi = std::numbers::pi;

// Nodes where finite differences are trusted: away from the poles on spherical charts.
inline std::vector<int> trusted_nodes(const LeafGrid<double>& grid) {
  std::vector<int> out;
  for (int k = 0; k < grid.size(); ++k) {
    if (grid.axis(0).kind == nullflow::AxisKind::Polar &&
        std::abs(grid.position(k).first - kPi / 2) > kPi / 3) {
      continue;
    }
    out.push_back(k);
  }
  return out;
}

inline double max_abs_on(const NodeArray<double>& e, const std::vector<int>& nodes) {
  double m = 0;
  for (int k : nodes) m = std::max(m, std::abs(e[k]));
  return m;
}

// Smooth random field built from low-order modes with seeded coefficients.
// Sphere fields are restrictions of cubic polynomials in ambient coordinates.
inline ScalarField<double> random_smooth(const LeafGrid<double>& grid, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> c(12);
  for (auto& v : c) v = coef(rng);
  const bool sphere = grid.axis(0).kind == nullflow::AxisKind::Polar;
  const bool symmetric = grid.topology() == nullflow::Topology::SymmetricSphere;
  const double lx = grid.spacing(0) * grid.nodes(0);
  const double ly = grid.spacing(1) * grid.nodes(1);
  return ScalarField<double>::sample(grid, [&](double a, double b) {
    if (sphere) {
      const double z = std::cos(a);
      if (symmetric) return c[0] * z + c[1] * z * z + c[2] * z * z * z;
      const double x = std::sin(a) * std::cos(b);
      const double y = std::sin(a) * std::sin(b);
      return c[0] * x + c[1] * y + c[2] * z + c[3] * x * y + c[4] * y * z + c[5] * z * x + c[6] * x * x +
             c[7] * x * y * z;
    }
    const double kx = 2 * kPi / lx;
    const double ky = 2 * kPi / ly;
    return c[0] * std::sin(kx * a) + c[1] * std::cos(ky * b) + c[2] * std::sin(kx * a + ky * b) +
           c[3] * std::cos(2 * kx * a - ky * b) + c[4] * std::sin(2 * ky * b) + c[5] * std::cos(kx * a) * std::sin(ky * b);
  });
}

// Cubic Lagrange interpolation of a node field at (a, b). Periodic axes wrap; the
// point must sit at least two cells inside an open or polar axis.
inline double interpolate_cubic(const LeafGrid<double>& grid, const NodeArray<double>& f, double a, double b) {
  auto stencil = [&](int axis, double x, int* idx, double* w) {
    const auto& ax = grid.axis(axis);
    if (ax.kind == nullflow::AxisKind::Invariant) {
      idx[0] = 0;
      w[0] = 1;
      for (int m = 1; m < 4; ++m) idx[m] = 0, w[m] = 0;
      return;
    }
    const double s = (x - ax.origin) / ax.spacing;
    const int base = static_cast<int>(std::floor(s)) - 1;
    for (int m = 0; m < 4; ++m) {
      double l = 1;
      for (int o = 0; o < 4; ++o) {
        if (o != m) l *= (s - (base + o)) / double(m - o);
      }
      int i = base + m;
      if (ax.kind == nullflow::AxisKind::Periodic) i = ((i % ax.nodes) + ax.nodes) % ax.nodes;
      idx[m] = i;
      w[m] = l;
    }
  };
  int i0[4], i1[4];
  double w0[4], w1[4];
  stencil(0, a, i0, w0);
  stencil(1, b, i1, w1);
  double v = 0;
  for (int m = 0; m < 4; ++m) {
    for (int o = 0; o < 4; ++o) v += w0[m] * w1[o] * f[grid.index(i0[m], i1[o])];
  }
  return v;
}

// Max |e| for convergence studies. Spherical charts sample e at fixed angles inside
// |theta - pi/2| <= pi/3, so every grid is measured at the same points; elsewhere every node.
inline double max_abs_fixed(const LeafGrid<double>& grid, const NodeArray<double>& e) {
  if (grid.axis(0).kind != nullflow::AxisKind::Polar) return e.abs().maxCoeff();
  double m = 0;
  for (int i = 0; i <= 32; ++i) {
    const double th = kPi / 6 + (2 * kPi / 3) * i / 32;
    for (int j = 0; j < 32; ++j) {
      const double ph = (j + 0.3) * 2 * kPi / 32;
      m = std::max(m, std::abs(interpolate_cubic(grid, e, th, ph)));
    }
  }
  return m;
}

inline double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace testing
