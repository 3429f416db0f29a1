#include "nullflow/flow/engine.hpp"

#include <algorithm>
#include <cmath>

#include "nullflow/core/errors.hpp"
#include "nullflow/metric/curvature.hpp"
#include "nullflow/metric/operators.hpp"

namespace nullflow {

namespace {

constexpr double kRoundTolerance = 1e-9;
constexpr double kRk4StableReach = 2.5;

bool is_reduced(const LeafMetric<double>& m) { return m.grid().topology() == Topology::SymmetricSphere; }

NodeArray<double> sin2(const LeafGrid<double>& grid) {
  NodeArray<double> s(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const double v = std::sin(grid.position(k).first);
    s[k] = v * v;
  }
  return s;
}

// Scale s of a reduced metric s * (dtheta^2 + sin^2 theta dphi^2).
double round_scale(const LeafMetric<double>& m) {
  const double s = m(0, 0)[0];
  const NodeArray<double> sn = sin2(m.grid());
  for (int k = 0; k < m.size(); ++k) {
    if (std::abs(m(0, 0)[k] - s) > kRoundTolerance * s || std::abs(m(0, 1)[k]) > kRoundTolerance * s ||
        std::abs(m(1, 1)[k] - s * sn[k]) > kRoundTolerance * s) {
      throw Error("symmetric sphere reduction needs a round metric (node " + std::to_string(k) + ")");
    }
  }
  return s;
}

LeafMetric<double> round_metric(const LeafGrid<double>& grid, double s) {
  const int n = grid.size();
  return LeafMetric<double>(grid, NodeArray<double>::Constant(n, s), NodeArray<double>::Zero(n), s * sin2(grid));
}

SymmetricTensorField<double> axpy(const SymmetricTensorField<double>& g, double a,
                                  const SymmetricTensorField<double>& k) {
  return {g.grid, g.c00 + a * k.c00, g.c01 + a * k.c01, g.c11 + a * k.c11};
}

SymmetricTensorField<double> scaled_ricci(const LeafMetric<double>& m, double sign) {
  const auto ric = curvature(m).ricci;
  return {m.grid(), 2 * sign * ric.c00, 2 * sign * ric.c01, 2 * sign * ric.c11};
}

// Largest |eigenvalue| of Ric relative to g.
double ricci_magnitude(const LeafMetric<double>& m, const SampleCurvature& c) {
  double worst = 0;
  for (int k = 0; k < m.size(); ++k) {
    const auto [lo, hi] = relative_eigenvalues<double>(c.ricci.at(k), m.at(k));
    worst = std::max({worst, std::abs(lo), std::abs(hi)});
  }
  return worst;
}

double min_eig(const LeafMetric<double>& m, int* node) {
  const NodeArray<double> ev = m.min_eigenvalues();
  Eigen::Index where = 0;
  const double v = ev.minCoeff(&where);
  if (node) *node = static_cast<int>(where);
  return v;
}

// Linear heat operator on a frozen metric.
class HeatOperator {
 public:
  HeatOperator(const LeafMetric<double>& metric, const NodeArray<double>& scalar, double potential)
      : metric_(metric), G_(christoffel(metric)), scalar_(scalar), potential_(potential) {}

  NodeArray<double> operator()(const NodeArray<double>& u) const {
    const ScalarField<double> f(metric_.grid(), u);
    NodeArray<double> out = laplace_beltrami(metric_, G_, f).values;
    if (potential_ != 0.0) out -= potential_ * scalar_ * u;
    return out;
  }

  NodeArray<double> rk4(const NodeArray<double>& u, double h) const {
    const NodeArray<double> k1 = (*this)(u);
    const NodeArray<double> k2 = (*this)(u + h / 2 * k1);
    const NodeArray<double> k3 = (*this)(u + h / 2 * k2);
    const NodeArray<double> k4 = (*this)(u + h * k3);
    return u + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }

  double stiffness(int* node) const {
    const NodeArray<double> pot = potential_ * scalar_;
    const auto [lam, where] = laplace_stiffness(metric_, G_, potential_ != 0.0 ? &pot : nullptr);
    if (node) *node = where;
    return lam;
  }

 private:
  const LeafMetric<double>& metric_;
  Christoffel<double> G_;
  const NodeArray<double>& scalar_;
  double potential_;
};

void require_positive(const NodeArray<double>& u, const std::string& what, int sample) {
  for (int k = 0; k < u.size(); ++k) {
    if (!(u[k] > 0) || !std::isfinite(u[k])) throw DomainError(what, k, sample);
  }
}

}  // namespace

SampleCurvature flow_curvature(const LeafMetric<double>& metric) {
  if (is_reduced(metric)) {
    const double s = round_scale(metric);
    const auto& grid = metric.grid();
    const int n = grid.size();
    return {{grid, NodeArray<double>::Ones(n), NodeArray<double>::Zero(n), sin2(grid)},
            NodeArray<double>::Constant(n, 2.0 / s)};
  }
  auto pack = curvature(metric);
  return {std::move(pack.ricci), std::move(pack.scalar)};
}

LeafMetric<double> step_flow(const LeafMetric<double>& metric, FlowDirection direction, double dt) {
  if (!(dt > 0)) throw ConfigError("step_flow needs dt > 0");
  const double sign = flow_sign(direction);
  if (sign == 0.0) return metric;
  if (is_reduced(metric)) {
    // d/dt s = 2 * sign, since Ric of s * (unit metric) is the unit metric.
    const double s = round_scale(metric);
    const double k1 = 2 * sign, k2 = 2 * sign, k3 = 2 * sign, k4 = 2 * sign;
    const double next = s + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (!(next > 0)) throw SingularMetricError(0, next * std::sin(metric.grid().coordinate(0, 0)) *
                                                     std::sin(metric.grid().coordinate(0, 0)));
    return round_metric(metric.grid(), next);
  }
  const auto& g = metric.components();
  const auto k1 = scaled_ricci(metric, sign);
  const auto k2 = scaled_ricci(LeafMetric<double>::from_tensor(axpy(g, dt / 2, k1)), sign);
  const auto k3 = scaled_ricci(LeafMetric<double>::from_tensor(axpy(g, dt / 2, k2)), sign);
  const auto k4 = scaled_ricci(LeafMetric<double>::from_tensor(axpy(g, dt, k3)), sign);
  SymmetricTensorField<double> next = g;
  next.c00 += dt / 6 * (k1.c00 + 2 * k2.c00 + 2 * k3.c00 + k4.c00);
  next.c01 += dt / 6 * (k1.c01 + 2 * k2.c01 + 2 * k3.c01 + k4.c01);
  next.c11 += dt / 6 * (k1.c11 + 2 * k2.c11 + 2 * k3.c11 + k4.c11);
  return LeafMetric<double>::from_tensor(next);
}

NodeArray<double> heat_rhs(const LeafMetric<double>& metric, const NodeArray<double>& scalar,
                           const NodeArray<double>& u, double potential) {
  return HeatOperator(metric, scalar, potential)(u);
}

double heat_stiffness(const LeafMetric<double>& metric, const NodeArray<double>& scalar, double potential,
                      int* node) {
  return HeatOperator(metric, scalar, potential).stiffness(node);
}

FlowTrajectory run_flow(const LeafMetric<double>& initial, const FlowConfig& config,
                        const std::optional<NodeArray<double>>& u0) {
  config.validate();
  const bool heat = config.coupling != Coupling::None;
  const double potential = config.coupling == Coupling::ConjugateHeat ? 1.0 : 0.0;
  if (heat && !u0) throw ConfigError("heat coupling needs initial data");
  if (heat) {
    if (u0->size() != initial.size()) throw GridMismatchError();
    require_positive(*u0, "initial heat data must be positive", 0);
  }

  FlowTrajectory traj;
  traj.config = config;
  const double t_end = config.t_end;
  const double interval = config.interval();
  traj.singular_threshold = config.singular_fraction * min_eig(initial, nullptr);

  LeafMetric<double> metric = initial;
  SampleCurvature curv = flow_curvature(metric);
  std::optional<NodeArray<double>> u = heat ? u0 : std::nullopt;
  double t = 0.0;
  auto record = [&](double time) {
    const double mass = u ? metric.integrate(*u) : 0.0;
    traj.samples.push_back({time, metric, curv, u, mass});
  };
  record(0.0);

  double dt_prev = config.dt / 2;
  const int n_samples = static_cast<int>(std::ceil(t_end / interval - 1e-9));

  auto mark_singular = [&](double when, int node, double eig) {
    traj.termination = Termination::Singular;
    traj.singular_time = when;
    traj.singular_node = node;
    traj.singular_eigenvalue = eig;
  };

  for (int j = 1; j <= n_samples; ++j) {
    const double target = j == n_samples ? t_end : std::min(t_end, j * interval);
    int fixed_left = 0;
    double fixed_h = 0;
    if (config.controller == StepController::Fixed) {
      fixed_left = std::max(1, static_cast<int>(std::ceil((target - t) / config.dt - 1e-9)));
      fixed_h = (target - t) / fixed_left;
    }
    while (t < target) {
      double h;
      bool last;
      if (config.controller == StepController::Fixed) {
        h = fixed_h;
        last = --fixed_left == 0;
      } else {
        double dt = 2 * dt_prev;
        if (heat) dt = std::min(dt, config.cfl * 4 / HeatOperator(metric, curv.scalar, potential).stiffness(nullptr));
        if (flow_sign(config.direction) != 0.0) {
          const double ric = ricci_magnitude(metric, curv);
          if (ric > 0) dt = std::min(dt, config.cfl / ric);
        }
        if (dt < 1e-12 * t_end) {
          traj.termination = Termination::StepUnderflow;
          return traj;
        }
        dt_prev = dt;
        last = target - t <= dt * (1 + 1e-9);
        h = last ? target - t : dt;
      }

      if (heat) {
        const HeatOperator op(metric, curv.scalar, potential);
        if (config.controller == StepController::Fixed) {
          int node = 0;
          const double lam = op.stiffness(&node);
          if (h / 2 * lam > kRk4StableReach) throw CflViolation(h, 2 * kRk4StableReach / lam, node);
        }
        u = op.rk4(*u, h / 2);
      }

      try {
        LeafMetric<double> next = step_flow(metric, config.direction, h);
        int node = 0;
        const double eig = min_eig(next, &node);
        if (eig < traj.singular_threshold) {
          mark_singular(t + h, node, eig);
          return traj;
        }
        metric = std::move(next);
      } catch (const SingularMetricError& e) {
        mark_singular(t + h, e.node(), e.eigenvalue());
        return traj;
      }
      curv = flow_curvature(metric);
      t = last ? target : t + h;

      if (heat) {
        u = HeatOperator(metric, curv.scalar, potential).rk4(*u, h / 2);
        require_positive(*u, "heat solution lost positivity", static_cast<int>(traj.samples.size()));
      }
      ++traj.steps;
      traj.min_dt = std::min(traj.min_dt, h);
      traj.max_dt = std::max(traj.max_dt, h);
    }
    record(target);
  }
  return traj;
}

FlowTrajectory solve_heat(const LeafMetric<double>& initial, FlowConfig config, const NodeArray<double>& u0) {
  if (config.direction == FlowDirection::Backward) {
    throw ConfigError("the heat equation is coupled to the forward (or static) flow");
  }
  config.coupling = Coupling::Heat;
  return run_flow(initial, config, u0);
}

FlowTrajectory solve_conjugate_heat(const LeafMetric<double>& initial, FlowConfig config,
                                    const NodeArray<double>& u0) {
  config.coupling = Coupling::ConjugateHeat;
  return run_flow(initial, config, u0);
}

}  // namespace nullflow
