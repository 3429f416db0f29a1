#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "nullflow/core/errors.hpp"
#include "nullflow/core/fornberg.hpp"
#include "nullflow/null/frenet.hpp"

namespace nullflow {

// Running integral of y on a uniform grid: composite Simpson on even nodes,
// a three-point end correction on node 1 and the 3/8 rule closing odd nodes.
template <class Scalar>
std::vector<Scalar> cumulative_simpson(std::span<const Scalar> y, Scalar h) {
  const std::size_t n = y.size();
  std::vector<Scalar> out(n, Scalar(0));
  if (n < 2) return out;
  if (n == 2) {
    out[1] = h * (y[0] + y[1]) / 2;
    return out;
  }
  for (std::size_t k = 2; k < n; k += 2) out[k] = out[k - 2] + h * (y[k - 2] + 4 * y[k - 1] + y[k]) / 3;
  out[1] = h * (5 * y[0] + 8 * y[1] - y[2]) / 12;
  for (std::size_t k = 3; k < n; k += 2) {
    out[k] = out[k - 3] + 3 * h * (y[k - 3] + 3 * y[k - 2] + 3 * y[k - 1] + y[k]) / 8;
  }
  return out;
}

template <class Scalar>
struct ReparamResult {
  std::vector<Scalar> t_star;      // original parameter samples
  std::vector<Scalar> t;           // general parameter t(t*)
  std::vector<Scalar> p;           // distinguished parameter (t - b) / a
  std::vector<Scalar> dp;          // dp/dt* = exp(int_{s0} h*), the outer integrand
  Scalar a = 1;
  Scalar b = 0;
  Scalar quadrature_error = 0;     // Richardson estimate |F_h - F_2h| / 15
  Scalar geodesic_residual = 0;    // max |nabla_{d/dp} d/dp|
};

// t(t*) = a * int_{t0}^{t*} exp(int_{s0}^{s} h*) ds + b on uniform samples of t*.
// s0 must be one of the samples (index s0_index).
template <class Scalar>
ReparamResult<Scalar> distinguished_parameter(std::span<const Scalar> t_star, std::span<const Scalar> h_star,
                                              Scalar a, Scalar b, std::size_t s0_index = 0) {
  if (a == Scalar(0)) throw std::invalid_argument("distinguished parameter needs a != 0");
  const std::size_t n = t_star.size();
  if (n < 5 || h_star.size() != n) throw std::invalid_argument("need at least five matching samples");
  if (s0_index >= n) throw std::invalid_argument("s0 index outside the samples");
  const Scalar h = (t_star[n - 1] - t_star[0]) / Scalar(n - 1);

  auto integrand = [](std::span<const Scalar> hs, Scalar step, std::size_t s0) {
    std::vector<Scalar> inner = cumulative_simpson(hs, step);
    const Scalar shift = inner[s0];
    for (auto& v : inner) v = std::exp(v - shift);
    return inner;
  };
  auto outer = [&](std::span<const Scalar> hs, Scalar step, std::size_t s0) {
    return cumulative_simpson<Scalar>(integrand(hs, step, s0), step);
  };

  ReparamResult<Scalar> r;
  r.a = a;
  r.b = b;
  r.t_star.assign(t_star.begin(), t_star.end());
  r.dp = integrand(h_star, h, s0_index);
  const std::vector<Scalar> F = outer(h_star, h, s0_index);
  r.t.resize(n);
  r.p.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    r.t[k] = a * F[k] + b;
    r.p[k] = F[k];
  }

  if (s0_index % 2 == 0 && n >= 9) {
    std::vector<Scalar> coarse_h;
    for (std::size_t k = 0; k < n; k += 2) coarse_h.push_back(h_star[k]);
    const std::vector<Scalar> Fc = outer(std::span<const Scalar>(coarse_h), 2 * h, s0_index / 2);
    for (std::size_t k = 0; k < Fc.size(); ++k) {
      r.quadrature_error = std::max(r.quadrature_error, std::abs(a) * std::abs(F[2 * k] - Fc[k]) / 15);
    }
  }

  // nabla_{d/dp} d/dp = a^2 (h* T1 - T2) / T1^3 E* with E* = exp(int_{s0} h*) d_0,
  // T1 = dt/dt* the quadrature integrand and T2 its five-point derivative.
  for (std::size_t k = 0; k < n; ++k) {
    const auto [lo, hi] = stencil_window(k, n, 5);
    const auto w = fornberg_weights<Scalar>(t_star[k], t_star.subspan(lo, hi - lo), 1);
    const Scalar T1 = a * r.dp[k];
    Scalar T2 = 0;
    for (std::size_t j = lo; j < hi; ++j) T2 += w[1][j - lo] * a * r.dp[j];
    const Scalar res = a * a * std::abs(h_star[k] * T1 - T2) / std::abs(T1 * T1 * T1) * r.dp[k];
    r.geodesic_residual = std::max(r.geodesic_residual, res);
  }
  return r;
}

// Frame of the curve reparametrised by p: E_p = (dt*/dp) E* with the screen frame unchanged.
template <class Scalar>
NullCurveFrame<Scalar> reparametrised_frame(const NullCurveFrame<Scalar>& original, const ReparamResult<Scalar>& r) {
  const std::size_t n = original.size();
  NullCurveFrame<Scalar> out;
  out.t = r.p;
  out.W1 = original.W1;
  out.W2 = original.W2;
  out.E.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.E[k] = original.E[k] / r.dp[k];
  return out;
}

}  // namespace nullflow
