#pragma once

#include <cmath>
#include <limits>

#include "nullflow/core/errors.hpp"
#include "nullflow/metric/fields.hpp"
#include "nullflow/metric/stencil.hpp"

namespace nullflow {

// Smallest eigenvalue of the symmetric 2x2 matrix [[a, b], [b, c]].
template <class Scalar>
Scalar min_eigenvalue(Scalar a, Scalar b, Scalar c) {
  using std::hypot;
  return (a + c) / 2 - hypot((a - c) / 2, b);
}

template <class Scalar>
Scalar max_eigenvalue(Scalar a, Scalar b, Scalar c) {
  using std::hypot;
  return (a + c) / 2 + hypot((a - c) / 2, b);
}

// Riemannian metric on a leaf grid. Components are stored once per unordered
// index pair, so g_01 == g_10 holds exactly.
template <class Scalar>
class LeafMetric {
 public:
  LeafMetric(LeafGrid<Scalar> grid, NodeArray<Scalar> g00, NodeArray<Scalar> g01,
             NodeArray<Scalar> g11)
      : g_{std::move(grid), std::move(g00), std::move(g01), std::move(g11)},
        inv_(invert(g_)),
        sqrt_det_((g_.c00 * g_.c11 - g_.c01 * g_.c01).sqrt()) {}

  static LeafMetric from_tensor(const SymmetricTensorField<Scalar>& t) {
    return LeafMetric(t.grid, t.c00, t.c01, t.c11);
  }

  const LeafGrid<Scalar>& grid() const { return g_.grid; }
  static constexpr int dimension() { return 2; }
  int size() const { return g_.grid.size(); }

  const NodeArray<Scalar>& operator()(int a, int b) const { return g_(a, b); }
  const NodeArray<Scalar>& inverse(int a, int b) const { return inv_(a, b); }
  const SymmetricTensorField<Scalar>& components() const { return g_; }
  const SymmetricTensorField<Scalar>& inverse_components() const { return inv_; }
  const NodeArray<Scalar>& sqrt_det() const { return sqrt_det_; }

  Mat2<Scalar> at(int k) const { return g_.at(k); }

  // Parity of component (a, b) under the polar fold.
  Parity parity(int a, int b) const {
    if (g_.grid.axis(0).kind != AxisKind::Polar) return Parity::Even;
    return parity_of(int(a == 0) + int(b == 0));
  }

  NodeArray<Scalar> min_eigenvalues() const {
    NodeArray<Scalar> out(size());
    for (int k = 0; k < size(); ++k) out[k] = min_eigenvalue(g_.c00[k], g_.c01[k], g_.c11[k]);
    return out;
  }

  // Riemannian volume of the leaf. The symmetric reduction integrates the
  // invariant axis analytically through its 2 pi spacing.
  Scalar volume() const { return integrate(NodeArray<Scalar>::Ones(size())); }

  // Sequential sum, so the result does not depend on the thread count.
  Scalar integrate(const NodeArray<Scalar>& f) const {
    Scalar total = 0;
    const Scalar cell = g_.grid.cell_measure();
    for (int k = 0; k < size(); ++k) total += f[k] * sqrt_det_[k] * cell;
    return total;
  }

 private:
  static SymmetricTensorField<Scalar> invert(const SymmetricTensorField<Scalar>& g) {
    const int n = g.grid.size();
    if (g.c00.size() != n || g.c01.size() != n || g.c11.size() != n) throw GridMismatchError();
    for (int k = 0; k < n; ++k) {
      const Scalar lam = min_eigenvalue(g.c00[k], g.c01[k], g.c11[k]);
      if (!(lam > Scalar(0)) || !std::isfinite(static_cast<double>(lam))) {
        throw SingularMetricError(k, static_cast<double>(lam));
      }
    }
    const NodeArray<Scalar> det = g.c00 * g.c11 - g.c01 * g.c01;
    return {g.grid, g.c11 / det, -g.c01 / det, g.c00 / det};
  }

  SymmetricTensorField<Scalar> g_;
  SymmetricTensorField<Scalar> inv_;
  NodeArray<Scalar> sqrt_det_;
};

}  // namespace nullflow
