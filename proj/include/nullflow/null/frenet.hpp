#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "nullflow/core/errors.hpp"
#include "nullflow/core/fornberg.hpp"
#include "nullflow/null/degenerate_metric.hpp"

namespace nullflow {

// Frame {E, W1, W2} sampled along a null curve of a three-dimensional null manifold
// with constant ambient metric diag(0, 1, 1).
template <class Scalar>
struct NullCurveFrame {
  std::vector<Scalar> t;
  std::vector<Vec3<Scalar>> E;
  std::vector<Vec3<Scalar>> W1;
  std::vector<Vec3<Scalar>> W2;

  std::size_t size() const { return t.size(); }
};

template <class Scalar>
Mat3<Scalar> flat_null_metric() {
  Mat3<Scalar> g = Mat3<Scalar>::Zero();
  g(1, 1) = 1;
  g(2, 2) = 1;
  return g;
}

// Largest violation of g(E, E) = g(E, W_i) = 0 and g(W_i, W_j) = delta_ij.
template <class Scalar>
Scalar frame_defect(const NullCurveFrame<Scalar>& c) {
  const Mat3<Scalar> g = flat_null_metric<Scalar>();
  Scalar worst = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Vec3<Scalar>* f[3] = {&c.E[k], &c.W1[k], &c.W2[k]};
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        const Scalar want = (i == j && i > 0) ? Scalar(1) : Scalar(0);
        worst = std::max(worst, std::abs(f[i]->dot(g * *f[j]) - want));
      }
    }
  }
  return worst;
}

// Covariant derivative along the curve of a vector field sampled on it.
template <class Scalar>
using ConnectionEvaluator =
    std::function<std::vector<Vec3<Scalar>>(std::span<const Scalar>, const std::vector<Vec3<Scalar>>&)>;

// Flat ambient connection: componentwise d/dt by five-point Fornberg weights.
template <class Scalar>
std::vector<Vec3<Scalar>> flat_derivative(std::span<const Scalar> t, const std::vector<Vec3<Scalar>>& v) {
  const std::size_t n = t.size();
  std::vector<Vec3<Scalar>> out(n, Vec3<Scalar>::Zero());
  for (std::size_t k = 0; k < n; ++k) {
    const auto [b, e] = stencil_window(k, n, 5);
    const auto w = fornberg_weights<Scalar>(t[k], t.subspan(b, e - b), 1);
    for (std::size_t j = b; j < e; ++j) out[k] += w[1][j - b] * v[j];
  }
  return out;
}

template <class Scalar>
struct FrenetFunctions {
  std::vector<Scalar> h;
  std::vector<Scalar> k1;
  std::vector<Scalar> k2;
  std::vector<Scalar> k3;
  Scalar fit_residual = 0;  // largest coefficient outside the Frenet pattern
};

// Projects nabla_E E, nabla_E W1, nabla_E W2 onto the frame.
template <class Scalar>
FrenetFunctions<Scalar> frenet_functions(const NullCurveFrame<Scalar>& c,
                                         const ConnectionEvaluator<Scalar>& nabla = flat_derivative<Scalar>) {
  const std::size_t n = c.size();
  if (n < 5) throw Error("frenet_functions needs at least five samples");
  const std::span<const Scalar> t(c.t);
  const auto dE = nabla(t, c.E);
  const auto dW1 = nabla(t, c.W1);
  const auto dW2 = nabla(t, c.W2);
  FrenetFunctions<Scalar> out;
  out.h.resize(n);
  out.k1.resize(n);
  out.k2.resize(n);
  out.k3.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    Mat3<Scalar> F;
    F.col(0) = c.E[k];
    F.col(1) = c.W1[k];
    F.col(2) = c.W2[k];
    const Eigen::FullPivLU<Mat3<Scalar>> lu(F);
    if (!lu.isInvertible()) throw Error("Frenet frame is degenerate at sample " + std::to_string(k));
    const Vec3<Scalar> xe = lu.solve(dE[k]);
    const Vec3<Scalar> x1 = lu.solve(dW1[k]);
    const Vec3<Scalar> x2 = lu.solve(dW2[k]);
    out.h[k] = xe[0];
    out.k1[k] = -x1[0];
    out.k2[k] = -x2[0];
    out.k3[k] = (x1[2] - x2[1]) / 2;
    const Scalar off = std::max({std::abs(xe[1]), std::abs(xe[2]), std::abs(x1[1]), std::abs(x2[2]),
                                 std::abs(x1[2] + x2[1]) / 2});
    out.fit_residual = std::max(out.fit_residual, off);
  }
  return out;
}

}  // namespace nullflow
