#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "nullflow/metric/leaf_metric.hpp"

namespace nullflow {

template <class Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <class Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

// Ambient metric of a globally null manifold M = C x M' in adapted coordinates
// (radical coordinate first). The leaf block never depends on the radical
// coordinate, so one leaf sample serves every radical slice.
template <class Scalar>
class DegenerateMetric {
 public:
  static constexpr int kRadicalRank = 1;
  static constexpr int kRadicalIndex = 0;

  explicit DegenerateMetric(LeafMetric<Scalar> leaf) : leaf_(std::move(leaf)) {}

  const LeafMetric<Scalar>& leaf() const { return leaf_; }
  const LeafGrid<Scalar>& grid() const { return leaf_.grid(); }
  static constexpr int dimension() { return 3; }
  int size() const { return leaf_.size(); }

  // [[0, 0], [0, g'_ab]] at a node.
  Mat3<Scalar> at(int node) const {
    Mat3<Scalar> m = Mat3<Scalar>::Zero();
    m.template bottomRightCorner<2, 2>() = leaf_.at(node);
    return m;
  }

  Scalar inner(int node, const Vec3<Scalar>& x, const Vec3<Scalar>& y) const { return x.dot(at(node) * y); }

  // Rank by counting eigenvalues above tol times the largest one.
  int rank(int node, Scalar tol = Scalar(1e-12)) const {
    const Eigen::SelfAdjointEigenSolver<Mat3<Scalar>> es(at(node), Eigen::EigenvaluesOnly);
    const auto ev = es.eigenvalues().cwiseAbs();
    const Scalar cut = tol * ev.maxCoeff();
    int r = 0;
    for (int i = 0; i < 3; ++i) r += ev[i] > cut ? 1 : 0;
    return r;
  }

 private:
  LeafMetric<Scalar> leaf_;
};

template <class Scalar>
DegenerateMetric<Scalar> assemble_degenerate_metric(const LeafMetric<Scalar>& leaf) {
  return DegenerateMetric<Scalar>(leaf);
}

// One ambient vector per leaf node.
template <class Scalar>
using AmbientField = std::vector<Vec3<Scalar>>;

template <class Scalar>
AmbientField<Scalar> uniform_field(const DegenerateMetric<Scalar>& m, const Vec3<Scalar>& v) {
  return AmbientField<Scalar>(static_cast<std::size_t>(m.size()), v);
}

// True where g(v, X) = 0 for every coordinate basis vector X.
template <class Scalar>
std::vector<bool> radical_check(const DegenerateMetric<Scalar>& m, const AmbientField<Scalar>& v,
                                Scalar tol = Scalar(1e-12)) {
  std::vector<bool> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    out[k] = (m.at(static_cast<int>(k)) * v[k]).cwiseAbs().maxCoeff() <= tol;
  }
  return out;
}

// Screen components of v: the radical component dropped. Idempotent on screen_part.
template <class Scalar>
std::vector<Vec2<Scalar>> screen_projection(const DegenerateMetric<Scalar>&, const AmbientField<Scalar>& v) {
  std::vector<Vec2<Scalar>> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k].template tail<2>();
  return out;
}

// The same projection kept as an ambient vector with zero radical component.
template <class Scalar>
AmbientField<Scalar> screen_part(const DegenerateMetric<Scalar>&, const AmbientField<Scalar>& v) {
  AmbientField<Scalar> out(v);
  for (auto& x : out) x[0] = 0;
  return out;
}

}  // namespace nullflow
