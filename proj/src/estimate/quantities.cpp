#include "nullflow/estimate/quantities.hpp"

#include "nullflow/core/errors.hpp"
#include "nullflow/core/fornberg.hpp"
#include "nullflow/metric/operators.hpp"

namespace nullflow {

NodeArray<double> log_density(const NodeArray<double>& u, double A) {
  for (int k = 0; k < u.size(); ++k) {
    if (!(u[k] > 0)) throw DomainError("log density needs u > 0", k);
    if (u[k] > A) throw DomainError("log density needs u <= A", k);
  }
  return (u / A).log();
}

NodeArray<double> phi_quantity(const LeafMetric<double>& metric, const NodeArray<double>& f) {
  const NodeArray<double> g = grad_norm_sq(metric, ScalarField<double>(metric.grid(), f)).values;
  return g / (1 - f).square();
}

NodeArray<double> log_gradient_sq(const LeafMetric<double>& metric, const NodeArray<double>& u) {
  return grad_norm_sq(metric, ScalarField<double>(metric.grid(), u)).values / u.square();
}

std::vector<NodeArray<double>> log_time_derivative(const FlowTrajectory& trajectory) {
  const auto& s = trajectory.samples;
  const std::size_t n = s.size();
  if (n < 3) throw ConfigError("time derivatives need at least three samples");
  if (!trajectory.has_heat()) throw ConfigError("trajectory carries no heat solution");
  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) times[i] = s[i].t;
  std::vector<NodeArray<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [b, e] = stencil_window(i, n, 3);
    const auto w = fornberg_weights<double>(times[i], std::span<const double>(times.data() + b, e - b), 1);
    NodeArray<double> du = NodeArray<double>::Zero(s[i].u->size());
    for (std::size_t j = b; j < e; ++j) {
      if (j != i) du += w[1][j - b] * (*s[j].u - *s[i].u);
    }
    out[i] = du / *s[i].u;
  }
  return out;
}

NodeArray<double> harnack_quantity(const LeafMetric<double>& metric, const NodeArray<double>& u,
                                   const NodeArray<double>& ut_over_u, double alpha, double t) {
  return t * (log_gradient_sq(metric, u) - alpha * ut_over_u);
}

}  // namespace nullflow
