#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "nullflow/metric/curvature.hpp"

namespace nullflow {

// Covariant components d_a f of a scalar field.
template <class Scalar>
VectorField<Scalar> differential(const LeafMetric<Scalar>& metric, const ScalarField<Scalar>& f) {
  require_same_grid(metric.grid(), f.grid);
  const auto& grid = metric.grid();
  return {grid, diff(grid, f.values, 0), diff(grid, f.values, 1)};
}

// Contravariant gradient (grad f)^a = g^ab d_b f.
template <class Scalar>
VectorField<Scalar> gradient(const LeafMetric<Scalar>& metric, const ScalarField<Scalar>& f) {
  const auto df = differential(metric, f);
  return {metric.grid(), metric.inverse(0, 0) * df.c0 + metric.inverse(0, 1) * df.c1,
          metric.inverse(0, 1) * df.c0 + metric.inverse(1, 1) * df.c1};
}

// g^ab X_a Y_b for covariant fields.
template <class Scalar>
NodeArray<Scalar> co_inner(const LeafMetric<Scalar>& metric, const VectorField<Scalar>& x,
                           const VectorField<Scalar>& y) {
  return metric.inverse(0, 0) * x.c0 * y.c0 + metric.inverse(0, 1) * (x.c0 * y.c1 + x.c1 * y.c0) +
         metric.inverse(1, 1) * x.c1 * y.c1;
}

template <class Scalar>
ScalarField<Scalar> grad_norm_sq(const LeafMetric<Scalar>& metric, const ScalarField<Scalar>& f) {
  const auto df = differential(metric, f);
  return {metric.grid(), co_inner(metric, df, df)};
}

// f_ab = d_a d_b f - Gamma^c_ab d_c f
template <class Scalar>
SymmetricTensorField<Scalar> hessian(const LeafMetric<Scalar>& metric, const Christoffel<Scalar>& G,
                                     const ScalarField<Scalar>& f) {
  require_same_grid(metric.grid(), f.grid);
  const auto& grid = metric.grid();
  const NodeArray<Scalar> d0 = diff(grid, f.values, 0);
  const NodeArray<Scalar> d1 = diff(grid, f.values, 1);
  auto component = [&](int a, int b) {
    NodeArray<Scalar> h = diff_ab(grid, f.values, a, b);
    return NodeArray<Scalar>(h - G(0, a, b) * d0 - G(1, a, b) * d1);
  };
  return {grid, component(0, 0), component(0, 1), component(1, 1)};
}

template <class Scalar>
SymmetricTensorField<Scalar> hessian(const LeafMetric<Scalar>& metric, const ScalarField<Scalar>& f) {
  return hessian(metric, christoffel(metric), f);
}

// g^ab T_ab
template <class Scalar>
NodeArray<Scalar> trace(const LeafMetric<Scalar>& metric, const SymmetricTensorField<Scalar>& t) {
  return metric.inverse(0, 0) * t.c00 + 2 * metric.inverse(0, 1) * t.c01 + metric.inverse(1, 1) * t.c11;
}

// g^ac g^bd S_ab T_cd
template <class Scalar>
NodeArray<Scalar> tensor_inner(const LeafMetric<Scalar>& metric, const SymmetricTensorField<Scalar>& s,
                               const SymmetricTensorField<Scalar>& t) {
  NodeArray<Scalar> out = NodeArray<Scalar>::Zero(metric.size());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out += metric.inverse(a, c) * metric.inverse(b, d) * s(a, b) * t(c, d);
  return out;
}

// T(X, Y) for covariant tensor T and contravariant X, Y.
template <class Scalar>
NodeArray<Scalar> contract(const SymmetricTensorField<Scalar>& t, const VectorField<Scalar>& x,
                           const VectorField<Scalar>& y) {
  return t.c00 * x.c0 * y.c0 + t.c01 * (x.c0 * y.c1 + x.c1 * y.c0) + t.c11 * x.c1 * y.c1;
}

// Laplace-Beltrami as the trace of the Hessian, so the two agree to round-off.
template <class Scalar>
ScalarField<Scalar> laplace_beltrami(const LeafMetric<Scalar>& metric, const Christoffel<Scalar>& G,
                                     const ScalarField<Scalar>& f) {
  return {metric.grid(), trace(metric, hessian(metric, G, f))};
}

template <class Scalar>
ScalarField<Scalar> laplace_beltrami(const LeafMetric<Scalar>& metric, const ScalarField<Scalar>& f) {
  return laplace_beltrami(metric, christoffel(metric), f);
}

// div X = d_a X^a + Gamma^a_ab X^b for a contravariant field.
template <class Scalar>
ScalarField<Scalar> divergence(const LeafMetric<Scalar>& metric, const Christoffel<Scalar>& G,
                               const VectorField<Scalar>& x) {
  const auto& grid = metric.grid();
  const bool polar = grid.axis(0).kind == AxisKind::Polar;
  NodeArray<Scalar> out = diff(grid, x.c0, 0, polar ? Parity::Odd : Parity::Even) + diff(grid, x.c1, 1);
  for (int a = 0; a < 2; ++a) out += G(a, a, 0) * x.c0 + G(a, a, 1) * x.c1;
  return {grid, out};
}

// (div T)_b = g^ac (d_c T_ab - Gamma^e_ca T_eb - Gamma^e_cb T_ae), covariant result.
template <class Scalar>
VectorField<Scalar> divergence(const LeafMetric<Scalar>& metric, const Christoffel<Scalar>& G,
                               const SymmetricTensorField<Scalar>& t) {
  const auto& grid = metric.grid();
  const bool polar = grid.axis(0).kind == AxisKind::Polar;
  std::array<std::array<std::array<NodeArray<Scalar>, 2>, 2>, 2> dt;  // [c][a][b]
  for (int a = 0; a < 2; ++a) {
    for (int b = a; b < 2; ++b) {
      const Parity p = polar ? parity_of(int(a == 0) + int(b == 0)) : Parity::Even;
      for (int c = 0; c < 2; ++c) {
        dt[c][a][b] = diff(grid, t(a, b), c, p);
        if (a != b) dt[c][b][a] = dt[c][a][b];
      }
    }
  }
  std::array<NodeArray<Scalar>, 2> out;
  for (int b = 0; b < 2; ++b) {
    out[b] = NodeArray<Scalar>::Zero(grid.size());
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) {
        NodeArray<Scalar> cov = dt[c][a][b];
        for (int e = 0; e < 2; ++e) cov -= G(e, c, a) * t(e, b) + G(e, c, b) * t(a, e);
        out[b] += metric.inverse(a, c) * cov;
      }
    }
  }
  return {grid, out[0], out[1]};
}

// Coefficients of Delta u = A^ab d_a d_b u + B^c d_c u.
template <class Scalar>
struct LaplaceCoefficients {
  SymmetricTensorField<Scalar> A;
  VectorField<Scalar> B;
};

template <class Scalar>
LaplaceCoefficients<Scalar> laplace_coefficients(const LeafMetric<Scalar>& metric,
                                                 const Christoffel<Scalar>& G) {
  std::array<NodeArray<Scalar>, 2> b;
  for (int c = 0; c < 2; ++c) {
    b[c] = -(metric.inverse(0, 0) * G(c, 0, 0) + 2 * metric.inverse(0, 1) * G(c, 0, 1) +
             metric.inverse(1, 1) * G(c, 1, 1));
  }
  return {metric.inverse_components(), {metric.grid(), b[0], b[1]}};
}

// Upper bound on the spectral radius of the discrete Laplacian at each node,
// with its maximum and the node where it is attained.
template <class Scalar>
std::pair<Scalar, int> laplace_stiffness(const LeafMetric<Scalar>& metric, const Christoffel<Scalar>& G,
                                         const NodeArray<Scalar>* extra = nullptr) {
  const auto& grid = metric.grid();
  const auto coeff = laplace_coefficients(metric, G);
  const Scalar h0 = grid.spacing(0);
  const Scalar h1 = grid.spacing(1);
  const bool a1 = grid.active(1);
  Scalar worst = 0;
  int where = 0;
  for (int k = 0; k < grid.size(); ++k) {
    Scalar lam = 4 * coeff.A.c00[k] / (h0 * h0) + std::abs(coeff.B.c0[k]) / h0;
    if (a1) {
      lam += 4 * coeff.A.c11[k] / (h1 * h1) + 2 * std::abs(coeff.A.c01[k]) / (h0 * h1) +
             std::abs(coeff.B.c1[k]) / h1;
    }
    if (extra) lam += std::abs((*extra)[k]);
    if (lam > worst) {
      worst = lam;
      where = k;
    }
  }
  return {worst, where};
}

}  // namespace nullflow
