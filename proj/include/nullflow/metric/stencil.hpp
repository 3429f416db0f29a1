#pragma once

#include "nullflow/metric/grid.hpp"

namespace nullflow {

// Sign picked up by a component when a polar ghost node is folded back across
// the pole: (-1)^(number of theta indices). Irrelevant off polar axes.
enum class Parity { Even, Odd };

inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }
inline Parity parity_of(int theta_indices) { return theta_indices % 2 == 0 ? Parity::Even : Parity::Odd; }

namespace detail {

// Value at (i0 + offset, i1) along axis 0, or (i0, i1 + offset) along axis 1,
// resolving periodic wrap and polar reflection. Open axes never call this out of range.
template <class Scalar>
Scalar neighbour(const LeafGrid<Scalar>& grid, const NodeArray<Scalar>& f, int i0, int i1,
                 int axis, int offset, Parity parity) {
  const int n0 = grid.nodes(0);
  const int n1 = grid.nodes(1);
  if (axis == 1) {
    int j = i1 + offset;
    j = ((j % n1) + n1) % n1;
    return f[grid.index(i0, j)];
  }
  int i = i0 + offset;
  if (grid.axis(0).kind == AxisKind::Periodic) {
    i = ((i % n0) + n0) % n0;
    return f[grid.index(i, i1)];
  }
  if (i >= 0 && i < n0) return f[grid.index(i, i1)];
  // Polar fold: theta -> -theta (or 2 pi - theta), phi -> phi + pi.
  const int folded = i < 0 ? -1 - i : 2 * n0 - 1 - i;
  const int j = (i1 + n1 / 2) % n1;
  const Scalar sign = parity == Parity::Odd ? Scalar(-1) : Scalar(1);
  return sign * f[grid.index(folded, j)];
}

}  // namespace detail

// First derivative along an axis, second order everywhere.
template <class Scalar>
NodeArray<Scalar> diff(const LeafGrid<Scalar>& grid, const NodeArray<Scalar>& f, int axis,
                       Parity parity = Parity::Even) {
  NodeArray<Scalar> out = NodeArray<Scalar>::Zero(grid.size());
  if (!grid.active(axis)) return out;
  const Scalar h = grid.spacing(axis);
  const int n = grid.nodes(axis);
  const bool open = grid.axis(axis).kind == AxisKind::Open;
  for (int k = 0; k < grid.size(); ++k) {
    const auto [i0, i1] = grid.split(k);
    const int i = axis == 0 ? i0 : i1;
    auto at = [&](int off) { return detail::neighbour(grid, f, i0, i1, axis, off, parity); };
    if (open && i == 0) {
      out[k] = (-3 * at(0) + 4 * at(1) - at(2)) / (2 * h);
    } else if (open && i == n - 1) {
      out[k] = (3 * at(0) - 4 * at(-1) + at(-2)) / (2 * h);
    } else {
      out[k] = (at(1) - at(-1)) / (2 * h);
    }
  }
  return out;
}

// Second derivative along one axis, compact three-point stencil in the interior.
template <class Scalar>
NodeArray<Scalar> diff2(const LeafGrid<Scalar>& grid, const NodeArray<Scalar>& f, int axis,
                        Parity parity = Parity::Even) {
  NodeArray<Scalar> out = NodeArray<Scalar>::Zero(grid.size());
  if (!grid.active(axis)) return out;
  const Scalar h2 = grid.spacing(axis) * grid.spacing(axis);
  const int n = grid.nodes(axis);
  const bool open = grid.axis(axis).kind == AxisKind::Open;
  for (int k = 0; k < grid.size(); ++k) {
    const auto [i0, i1] = grid.split(k);
    const int i = axis == 0 ? i0 : i1;
    auto at = [&](int off) { return detail::neighbour(grid, f, i0, i1, axis, off, parity); };
    if (open && i == 0) {
      out[k] = (2 * at(0) - 5 * at(1) + 4 * at(2) - at(3)) / h2;
    } else if (open && i == n - 1) {
      out[k] = (2 * at(0) - 5 * at(-1) + 4 * at(-2) - at(-3)) / h2;
    } else {
      out[k] = (at(1) - 2 * at(0) + at(-1)) / h2;
    }
  }
  return out;
}

// d^2 f / dx0 dx1 as a composition of first differences.
template <class Scalar>
NodeArray<Scalar> diff_mixed(const LeafGrid<Scalar>& grid, const NodeArray<Scalar>& f,
                             Parity parity = Parity::Even) {
  if (!grid.active(0) || !grid.active(1)) return NodeArray<Scalar>::Zero(grid.size());
  return diff(grid, diff(grid, f, 1, parity), 0, parity);
}

// Second derivative along (a, b); parity is that of f.
template <class Scalar>
NodeArray<Scalar> diff_ab(const LeafGrid<Scalar>& grid, const NodeArray<Scalar>& f, int a, int b,
                          Parity parity = Parity::Even) {
  return a == b ? diff2(grid, f, a, parity) : diff_mixed(grid, f, parity);
}

// Parity of the derivative of a component with the given parity along axis a.
template <class Scalar>
Parity derived_parity(const LeafGrid<Scalar>& grid, Parity p, int a) {
  return grid.axis(a).kind == AxisKind::Polar ? flip(p) : p;
}

}  // namespace nullflow
