#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Geometry>

#include "nullflow/metric/leaf_metric.hpp"

namespace nullflow {

template <class Scalar>
struct DistanceField {
  ScalarField<Scalar> distance;
  std::vector<bool> valid;  // false on nodes within the cut-locus margin
  std::string method;

  int valid_count() const { return static_cast<int>(std::count(valid.begin(), valid.end(), true)); }
};

namespace detail {

// Node reached from (i0, i1) by a lattice offset, or -1 outside an open boundary.
template <class Scalar>
int offset_node(const LeafGrid<Scalar>& grid, int i0, int i1, int d0, int d1) {
  const int n0 = grid.nodes(0);
  const int n1 = grid.nodes(1);
  int j = i1 + d1;
  int i = i0 + d0;
  switch (grid.axis(1).kind) {
    case AxisKind::Periodic: j = ((j % n1) + n1) % n1; break;
    case AxisKind::Invariant: j = 0; break;
    default:
      if (j < 0 || j >= n1) return -1;
  }
  switch (grid.axis(0).kind) {
    case AxisKind::Periodic: i = ((i % n0) + n0) % n0; break;
    case AxisKind::Polar:
      if (i < 0 || i >= n0) {
        i = i < 0 ? -1 - i : 2 * n0 - 1 - i;
        j = (j + n1 / 2) % n1;
      }
      break;
    default:
      if (i < 0 || i >= n0) return -1;
  }
  return grid.index(i, j);
}

template <class Scalar>
bool metric_is_constant(const LeafMetric<Scalar>& m, Scalar rel) {
  const Scalar s = std::abs(m(0, 0)[0]) + std::abs(m(1, 1)[0]);
  for (int k = 1; k < m.size(); ++k) {
    for (int a = 0; a < 2; ++a)
      for (int b = a; b < 2; ++b)
        if (std::abs(m(a, b)[k] - m(a, b)[0]) > rel * s) return false;
  }
  return true;
}

// Radius if the metric is r^2 (dtheta^2 + sin^2 theta dphi^2) to relative tolerance, else 0.
template <class Scalar>
Scalar round_sphere_radius(const LeafMetric<Scalar>& m, Scalar rel) {
  const auto& grid = m.grid();
  if (grid.axis(0).kind != AxisKind::Polar) return 0;
  const Scalar r2 = m(0, 0)[0];
  for (int k = 0; k < m.size(); ++k) {
    const Scalar s = std::sin(grid.position(k).first);
    if (std::abs(m(0, 0)[k] - r2) > rel * r2 || std::abs(m(1, 1)[k] - r2 * s * s) > rel * r2 ||
        std::abs(m(0, 1)[k]) > rel * r2) {
      return 0;
    }
  }
  return std::sqrt(r2);
}

template <class Scalar>
Scalar physical_spacing(const LeafMetric<Scalar>& m) {
  Scalar lam = 0;
  for (int k = 0; k < m.size(); ++k) lam = std::max(lam, max_eigenvalue(m(0, 0)[k], m(0, 1)[k], m(1, 1)[k]));
  Scalar h = m.grid().spacing(0);
  if (m.grid().active(1)) h = std::max(h, m.grid().spacing(1));
  return h * std::sqrt(lam);
}

// First-order fast marching for metrics with g_01 = 0.
template <class Scalar>
NodeArray<Scalar> fast_marching(const LeafMetric<Scalar>& m, int center) {
  const auto& grid = m.grid();
  const int n = grid.size();
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  NodeArray<Scalar> T = NodeArray<Scalar>::Constant(n, inf);
  std::vector<char> frozen(static_cast<std::size_t>(n), 0);
  using Item = std::pair<Scalar, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  T[center] = 0;
  heap.push({0, center});
  const Scalar h0 = grid.spacing(0);
  const Scalar h1 = grid.spacing(1);
  auto axis_min = [&](int i0, int i1, int axis) {
    Scalar best = inf;
    for (int s : {-1, 1}) {
      const int nb = axis == 0 ? offset_node(grid, i0, i1, s, 0) : offset_node(grid, i0, i1, 0, s);
      if (nb >= 0 && frozen[static_cast<std::size_t>(nb)]) best = std::min(best, T[nb]);
    }
    return best;
  };
  while (!heap.empty()) {
    const auto [t, k] = heap.top();
    heap.pop();
    if (frozen[static_cast<std::size_t>(k)] || t > T[k]) continue;
    frozen[static_cast<std::size_t>(k)] = 1;
    const auto [i0, i1] = grid.split(k);
    for (const auto& [d0, d1] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const int nb = offset_node(grid, i0, i1, d0, d1);
      if (nb < 0 || frozen[static_cast<std::size_t>(nb)]) continue;
      const auto [j0, j1] = grid.split(nb);
      const Scalar tx = axis_min(j0, j1, 0);
      const Scalar ty = grid.active(1) ? axis_min(j0, j1, 1) : inf;
      const Scalar cx = h0 * std::sqrt(m(0, 0)[nb]);
      const Scalar cy = h1 * std::sqrt(m(1, 1)[nb]);
      Scalar cand = std::min(tx + cx, ty + cy);
      if (std::isfinite(tx) && std::isfinite(ty)) {
        const Scalar a = 1 / (cx * cx);
        const Scalar b = 1 / (cy * cy);
        const Scalar p = a * tx + b * ty;
        const Scalar disc = p * p - (a + b) * (a * tx * tx + b * ty * ty - 1);
        if (disc >= 0) {
          const Scalar q = (p + std::sqrt(disc)) / (a + b);
          if (q >= std::max(tx, ty)) cand = std::min(cand, q);
        }
      }
      if (cand < T[nb]) {
        T[nb] = cand;
        heap.push({cand, nb});
      }
    }
  }
  return T;
}

// Dijkstra on a 16-neighbour lattice; edge length uses the endpoint-averaged metric.
template <class Scalar>
NodeArray<Scalar> lattice_dijkstra(const LeafMetric<Scalar>& m, int center) {
  const auto& grid = m.grid();
  const int n = grid.size();
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  NodeArray<Scalar> T = NodeArray<Scalar>::Constant(n, inf);
  using Item = std::pair<Scalar, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  static constexpr std::array<std::array<int, 2>, 16> kOffsets{{{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                                                 {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
                                                                 {1, 2}, {1, -2}, {-1, 2}, {-1, -2},
                                                                 {2, 1}, {2, -1}, {-2, 1}, {-2, -1}}};
  T[center] = 0;
  heap.push({0, center});
  while (!heap.empty()) {
    const auto [t, k] = heap.top();
    heap.pop();
    if (t > T[k]) continue;
    const auto [i0, i1] = grid.split(k);
    for (const auto& o : kOffsets) {
      const int nb = offset_node(grid, i0, i1, o[0], o[1]);
      if (nb < 0) continue;
      const Scalar dx = o[0] * grid.spacing(0);
      const Scalar dy = grid.active(1) ? o[1] * grid.spacing(1) : Scalar(0);
      const Scalar g00 = (m(0, 0)[k] + m(0, 0)[nb]) / 2;
      const Scalar g01 = (m(0, 1)[k] + m(0, 1)[nb]) / 2;
      const Scalar g11 = (m(1, 1)[k] + m(1, 1)[nb]) / 2;
      const Scalar len = std::sqrt(g00 * dx * dx + 2 * g01 * dx * dy + g11 * dy * dy);
      if (t + len < T[nb]) {
        T[nb] = t + len;
        heap.push({T[nb], nb});
      }
    }
  }
  return T;
}

// Ridge nodes where |grad d| collapses, dilated by `cells` lattice steps.
template <class Scalar>
std::vector<bool> kink_mask(const LeafMetric<Scalar>& m, const NodeArray<Scalar>& d, int center, int cells) {
  const auto& grid = m.grid();
  const int n = grid.size();
  const NodeArray<Scalar> d0 = diff(grid, d, 0);
  const NodeArray<Scalar> d1 = diff(grid, d, 1);
  const auto [c0, c1] = grid.split(center);
  std::vector<bool> bad(static_cast<std::size_t>(n), false);
  for (int k = 0; k < n; ++k) {
    const auto [i0, i1] = grid.split(k);
    if (std::abs(i0 - c0) <= 2 && std::abs(i1 - c1) <= 2) continue;
    const Scalar g2 = m.inverse(0, 0)[k] * d0[k] * d0[k] + 2 * m.inverse(0, 1)[k] * d0[k] * d1[k] +
                      m.inverse(1, 1)[k] * d1[k] * d1[k];
    if (g2 < Scalar(0.49)) bad[static_cast<std::size_t>(k)] = true;
  }
  std::vector<bool> valid(static_cast<std::size_t>(n), true);
  for (int k = 0; k < n; ++k) {
    if (!bad[static_cast<std::size_t>(k)]) continue;
    const auto [i0, i1] = grid.split(k);
    for (int a = -cells; a <= cells; ++a)
      for (int b = -cells; b <= cells; ++b) {
        const int nb = offset_node(grid, i0, i1, a, b);
        if (nb >= 0) valid[static_cast<std::size_t>(nb)] = false;
      }
  }
  return valid;
}

}  // namespace detail

// Distance to `center` at every node. On the symmetric reduction the centre is
// the north pole. `margin_cells` sets the cut-locus exclusion in grid spacings.
template <class Scalar>
DistanceField<Scalar> geodesic_distance(const LeafMetric<Scalar>& metric, int center, int margin_cells = 3) {
  const auto& grid = metric.grid();
  const int n = grid.size();
  NodeArray<Scalar> d(n);
  std::vector<bool> valid(static_cast<std::size_t>(n), true);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar margin = margin_cells * detail::physical_spacing(metric);

  if (grid.topology() == Topology::SymmetricSphere) {
    const Scalar h = grid.spacing(0);
    Scalar acc = std::sqrt(metric(0, 0)[0]) * h / 2;
    for (int i = 0; i < n; ++i) {
      if (i > 0) acc += (std::sqrt(metric(0, 0)[i - 1]) + std::sqrt(metric(0, 0)[i])) * h / 2;
      d[i] = acc;
      valid[static_cast<std::size_t>(i)] = pi - grid.coordinate(0, i) > margin_cells * h;
    }
    return {ScalarField<Scalar>(grid, std::move(d)), std::move(valid), "radial-quadrature"};
  }

  if (const Scalar r = detail::round_sphere_radius(metric, Scalar(1e-12)); r > 0) {
    const auto [tc, pc] = grid.position(center);
    const Eigen::Matrix<Scalar, 3, 1> c(std::sin(tc) * std::cos(pc), std::sin(tc) * std::sin(pc), std::cos(tc));
    for (int k = 0; k < n; ++k) {
      const auto [t, p] = grid.position(k);
      const Eigen::Matrix<Scalar, 3, 1> x(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
      const Scalar angle = std::atan2(c.cross(x).norm(), c.dot(x));
      d[k] = r * angle;
      valid[static_cast<std::size_t>(k)] = r * (pi - angle) > margin;
    }
    return {ScalarField<Scalar>(grid, std::move(d)), std::move(valid), "great-circle"};
  }

  if (grid.topology() == Topology::Periodic2D && detail::metric_is_constant(metric, Scalar(1e-14))) {
    const Mat2<Scalar> g = metric.at(0);
    const auto [x0, y0] = grid.position(center);
    const Scalar lx = grid.spacing(0) * grid.nodes(0);
    const Scalar ly = grid.spacing(1) * grid.nodes(1);
    for (int k = 0; k < n; ++k) {
      const auto [x, y] = grid.position(k);
      Scalar best = std::numeric_limits<Scalar>::infinity();
      Scalar second = best;
      for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
          const Vec2<Scalar> v(x - x0 + a * lx, y - y0 + b * ly);
          const Scalar len = std::sqrt(v.dot(g * v));
          if (len < best) {
            second = best;
            best = len;
          } else if (len < second) {
            second = len;
          }
        }
      }
      d[k] = best;
      valid[static_cast<std::size_t>(k)] = second - best > 2 * margin;
    }
    return {ScalarField<Scalar>(grid, std::move(d)), std::move(valid), "lattice-images"};
  }

  bool diagonal = true;
  for (int k = 0; k < n && diagonal; ++k) diagonal = metric(0, 1)[k] == Scalar(0);
  d = diagonal ? detail::fast_marching(metric, center) : detail::lattice_dijkstra(metric, center);
  valid = detail::kink_mask(metric, d, center, margin_cells);
  return {ScalarField<Scalar>(grid, std::move(d)), std::move(valid),
          diagonal ? "fast-marching" : "lattice-dijkstra"};
}

}  // namespace nullflow
