#pragma once

#include <array>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

namespace nullflow {

template <class Scalar>
using NodeArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

enum class Topology {
  Periodic2D,       // doubly periodic torus
  Planar2D,         // open rectangle, one-sided stencils on the boundary
  Spherical,        // (theta, phi) chart, theta cell-centred in (0, pi), phi periodic
  SymmetricSphere,  // rotationally symmetric reduction: theta nodes only
};

enum class AxisKind {
  Periodic,
  Open,
  Polar,      // theta axis: ghost nodes reflect across the pole and shift phi by pi
  Invariant,  // single node, every derivative along it vanishes
};

inline std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::Periodic2D: return "periodic-2D";
    case Topology::Planar2D: return "planar-2D";
    case Topology::Spherical: return "spherical-collapsed-poles";
    case Topology::SymmetricSphere: return "symmetric-1D";
  }
  return "unknown";
}

template <class Scalar>
struct Axis {
  AxisKind kind;
  int nodes;
  Scalar spacing;
  Scalar origin;

  Scalar coordinate(int i) const { return origin + spacing * Scalar(i); }
  bool operator==(const Axis&) const = default;
};

// Structured grid on a two-dimensional leaf. Nodes are stored row-major with
// axis 0 (x or theta) as the slow index.
template <class Scalar>
class LeafGrid {
 public:
  static LeafGrid periodic(int nx, int ny, Scalar lx, Scalar ly) {
    return LeafGrid(Topology::Periodic2D,
                    {Axis<Scalar>{AxisKind::Periodic, nx, lx / Scalar(nx), Scalar(0)},
                     Axis<Scalar>{AxisKind::Periodic, ny, ly / Scalar(ny), Scalar(0)}});
  }

  // Closed rectangle [x0, x1] x [y0, y1] with nodes on both ends.
  static LeafGrid planar(int nx, int ny, Scalar x0, Scalar x1, Scalar y0, Scalar y1) {
    return LeafGrid(Topology::Planar2D,
                    {Axis<Scalar>{AxisKind::Open, nx, (x1 - x0) / Scalar(nx - 1), x0},
                     Axis<Scalar>{AxisKind::Open, ny, (y1 - y0) / Scalar(ny - 1), y0}});
  }

  static LeafGrid spherical(int ntheta, int nphi) {
    if (nphi % 2 != 0) throw std::invalid_argument("spherical grid needs an even phi count");
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar dtheta = pi / Scalar(ntheta);
    return LeafGrid(Topology::Spherical,
                    {Axis<Scalar>{AxisKind::Polar, ntheta, dtheta, dtheta / 2},
                     Axis<Scalar>{AxisKind::Periodic, nphi, 2 * pi / Scalar(nphi), Scalar(0)}});
  }

  static LeafGrid symmetric_sphere(int ntheta) {
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar dtheta = pi / Scalar(ntheta);
    return LeafGrid(Topology::SymmetricSphere,
                    {Axis<Scalar>{AxisKind::Polar, ntheta, dtheta, dtheta / 2},
                     Axis<Scalar>{AxisKind::Invariant, 1, 2 * pi, Scalar(0)}});
  }

  Topology topology() const { return topology_; }
  const Axis<Scalar>& axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }
  int nodes(int a) const { return axis(a).nodes; }
  Scalar spacing(int a) const { return axis(a).spacing; }
  int size() const { return axes_[0].nodes * axes_[1].nodes; }
  bool active(int a) const { return axis(a).kind != AxisKind::Invariant; }

  int index(int i0, int i1) const { return i0 * axes_[1].nodes + i1; }
  std::pair<int, int> split(int node) const {
    return {node / axes_[1].nodes, node % axes_[1].nodes};
  }
  Scalar coordinate(int a, int i) const { return axis(a).coordinate(i); }

  // Coordinate (axis 0, axis 1) of a node.
  std::pair<Scalar, Scalar> position(int node) const {
    const auto [i0, i1] = split(node);
    return {coordinate(0, i0), coordinate(1, i1)};
  }

  // Coordinate volume of one cell; the symmetric reduction integrates phi analytically.
  Scalar cell_measure() const { return axes_[0].spacing * axes_[1].spacing; }

  bool operator==(const LeafGrid&) const = default;

 private:
  LeafGrid(Topology topology, std::array<Axis<Scalar>, 2> axes)
      : topology_(topology), axes_(axes) {
    for (const auto& ax : axes_) {
      if (ax.kind == AxisKind::Invariant) continue;
      if (ax.nodes < 8) {
        throw std::invalid_argument("grid axis needs at least 8 nodes, got " +
                                    std::to_string(ax.nodes));
      }
      if (!(ax.spacing > Scalar(0))) throw std::invalid_argument("grid spacing must be positive");
    }
  }

  Topology topology_;
  std::array<Axis<Scalar>, 2> axes_;
};

}  // namespace nullflow
