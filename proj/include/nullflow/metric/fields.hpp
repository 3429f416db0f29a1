#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nullflow/core/errors.hpp"
#include "nullflow/metric/grid.hpp"

namespace nullflow {

template <class Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <class Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

template <class Scalar>
struct ScalarField {
  LeafGrid<Scalar> grid;
  NodeArray<Scalar> values;

  ScalarField(LeafGrid<Scalar> g, NodeArray<Scalar> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size()) throw GridMismatchError();
  }

  static ScalarField constant(const LeafGrid<Scalar>& g, Scalar c) {
    return ScalarField(g, NodeArray<Scalar>::Constant(g.size(), c));
  }

  template <class Fn>
  static ScalarField sample(const LeafGrid<Scalar>& g, Fn&& fn) {
    NodeArray<Scalar> v(g.size());
    for (int k = 0; k < g.size(); ++k) {
      const auto [x0, x1] = g.position(k);
      v[k] = fn(x0, x1);
    }
    return ScalarField(g, std::move(v));
  }

  int size() const { return static_cast<int>(values.size()); }
  Scalar operator[](int k) const { return values[k]; }

  void require_finite(const std::string& what) const {
    for (int k = 0; k < size(); ++k) {
      if (!std::isfinite(static_cast<double>(values[k]))) throw DomainError(what + " is not finite", k);
    }
  }
};

// Contravariant or covariant components per node, one array per axis.
template <class Scalar>
struct VectorField {
  LeafGrid<Scalar> grid;
  NodeArray<Scalar> c0;
  NodeArray<Scalar> c1;

  Vec2<Scalar> at(int k) const { return {c0[k], c1[k]}; }
  const NodeArray<Scalar>& operator[](int a) const { return a == 0 ? c0 : c1; }
};

// Symmetric 2-tensor stored by its three independent components, so symmetry is exact.
template <class Scalar>
struct SymmetricTensorField {
  LeafGrid<Scalar> grid;
  NodeArray<Scalar> c00;
  NodeArray<Scalar> c01;
  NodeArray<Scalar> c11;

  const NodeArray<Scalar>& operator()(int a, int b) const {
    if (a != b) return c01;
    return a == 0 ? c00 : c11;
  }
  Mat2<Scalar> at(int k) const {
    Mat2<Scalar> m;
    m << c00[k], c01[k], c01[k], c11[k];
    return m;
  }
  int size() const { return static_cast<int>(c00.size()); }
};

template <class Scalar>
void require_same_grid(const LeafGrid<Scalar>& a, const LeafGrid<Scalar>& b) {
  if (!(a == b)) throw GridMismatchError();
}

}  // namespace nullflow
