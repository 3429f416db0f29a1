#pragma once

#include "nullflow/metric/operators.hpp"

namespace nullflow {

// Delta |grad f|^2 - 2 |Hess f|^2 - 2 <grad f, grad Delta f> - 2 Ric(grad f, grad f).
// Vanishes for smooth f up to discretisation error.
template <class Scalar>
ScalarField<Scalar> bochner_residual(const LeafMetric<Scalar>& metric, const CurvaturePack<Scalar>& pack,
                                     const ScalarField<Scalar>& f) {
  const auto& G = pack.christoffel;
  const auto df = differential(metric, f);
  const auto grad = gradient(metric, f);
  const auto hess = hessian(metric, G, f);
  const ScalarField<Scalar> lap = {metric.grid(), trace(metric, hess)};
  const ScalarField<Scalar> norm2 = {metric.grid(), co_inner(metric, df, df)};
  const auto lap_norm2 = laplace_beltrami(metric, G, norm2);
  const auto dlap = differential(metric, lap);
  NodeArray<Scalar> r = lap_norm2.values - 2 * tensor_inner(metric, hess, hess) - 2 * co_inner(metric, df, dlap) -
                        2 * contract(pack.ricci, grad, grad);
  return {metric.grid(), std::move(r)};
}

// f^b (div Hess f)_b - <grad f, grad Delta f> - Ric(grad f, grad f): the Ricci
// commutation f_jji - f_ijj + Ric_ij f_j contracted against grad f.
template <class Scalar>
ScalarField<Scalar> ricci_identity_residual(const LeafMetric<Scalar>& metric, const CurvaturePack<Scalar>& pack,
                                            const ScalarField<Scalar>& f) {
  const auto& G = pack.christoffel;
  const auto df = differential(metric, f);
  const auto grad = gradient(metric, f);
  const auto hess = hessian(metric, G, f);
  const ScalarField<Scalar> lap = {metric.grid(), trace(metric, hess)};
  const auto div_h = divergence(metric, G, hess);
  const auto dlap = differential(metric, lap);
  NodeArray<Scalar> r = grad.c0 * div_h.c0 + grad.c1 * div_h.c1 - co_inner(metric, df, dlap) -
                        contract(pack.ricci, grad, grad);
  return {metric.grid(), std::move(r)};
}

}  // namespace nullflow
