#include "nullflow/estimate/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nullflow/core/errors.hpp"
#include "nullflow/core/parallel.hpp"
#include "nullflow/estimate/bounds.hpp"
#include "nullflow/estimate/quantities.hpp"
#include "nullflow/metric/distance.hpp"
#include "nullflow/metric/operators.hpp"

namespace nullflow {

namespace {

constexpr double kHypothesisSlack = 1e-10;
constexpr double kDefaultASlack = 1e-9;

int default_center(const LeafGrid<double>& grid) {
  if (grid.topology() == Topology::SymmetricSphere) return 0;
  return grid.index(grid.nodes(0) / 2, grid.nodes(1) / 2);
}

// Per-sample curvature measurements restricted to the admissible nodes.
struct SampleMeasure {
  NodeArray<double> grad_sq;   // |grad u|^2 / u^2
  NodeArray<double> grad_abs;  // |grad u|^2
  double min_scal = std::numeric_limits<double>::infinity();
  double min_ric = std::numeric_limits<double>::infinity();
  double max_ric = -std::numeric_limits<double>::infinity();
  double max_grad_scal = 0.0;
  std::size_t count = 0;
};

struct SampleResult {
  std::vector<EstimatePoint> points;
  std::vector<double> proof_margin;
};

MarginQuantiles quantiles(std::vector<double> m) {
  std::sort(m.begin(), m.end());
  auto at = [&](double q) {
    const auto i = static_cast<std::size_t>(std::ceil(q * static_cast<double>(m.size()))) ;
    return m[std::min(m.size() - 1, i == 0 ? 0 : i - 1)];
  };
  return {m.front(), at(0.05), at(0.5), at(0.95), m.back()};
}

std::string describe(const HypothesisCheck& h) {
  std::ostringstream out;
  out.precision(17);
  out << h.name << ": measured " << h.measured << " against bound " << h.bound;
  return out.str();
}

}  // namespace

EstimateReport verify(const FlowTrajectory& trajectory, Theorem theorem, const EstimateParams& params,
                      const CutoffCertificate& cert) {
  params.validate();
  if (!trajectory.has_heat()) throw ConfigError("trajectory carries no heat solution");
  if (trajectory.size() < 3) throw ConfigError("verification needs at least three samples");

  EstimateReport rep;
  rep.theorem = theorem;
  const auto& grid = trajectory.grid();
  const int dim = 2;
  rep.constants = derive_constants(cert, dim);

  double sup_u = 0.0;
  for (const auto& s : trajectory.samples) sup_u = std::max(sup_u, s.u->maxCoeff());
  rep.A = params.A > 0 ? params.A : (1 + kDefaultASlack) * sup_u;
  rep.center = params.center >= 0 ? params.center : default_center(grid);
  if (rep.center >= grid.size()) throw ConfigError("estimate.center is outside the grid");

  std::vector<std::size_t> samples;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const double t = trajectory.samples[i].t;
    if (t > 0 && t >= params.t_min) samples.push_back(i);
  }
  if (samples.empty()) throw ConfigError("no admissible sample times");

  const bool local = is_local(theorem);
  std::vector<std::vector<char>> mask(samples.size(), std::vector<char>(static_cast<std::size_t>(grid.size()), 1));
  if (local) {
    const auto d0 = geodesic_distance(trajectory.samples.front().metric, rep.center);
    for (int k = 0; k < grid.size(); ++k) {
      if (d0.valid[static_cast<std::size_t>(k)]) rep.diameter = std::max(rep.diameter, d0.distance[k]);
    }
    rep.cube_radius = params.cube_radius > 0 ? params.cube_radius : rep.diameter / 4;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const auto d = geodesic_distance(trajectory.samples[samples[j]].metric, rep.center);
      rep.distance_method = d.method;
      for (int k = 0; k < grid.size(); ++k) {
        mask[j][static_cast<std::size_t>(k)] = d.valid[static_cast<std::size_t>(k)] && d.distance[k] <= 2 * rep.cube_radius;
      }
    }
  }
  rep.params = params;
  rep.params.A = rep.A;
  rep.params.center = rep.center;
  rep.params.cube_radius = rep.cube_radius;

  const auto ut = log_time_derivative(trajectory);

  std::vector<SampleMeasure> meas(samples.size());
  parallel_for(static_cast<std::ptrdiff_t>(samples.size()), [&](std::ptrdiff_t jj) {
    const auto j = static_cast<std::size_t>(jj);
    const auto& s = trajectory.samples[samples[j]];
    auto& m = meas[j];
    const ScalarField<double> uf(grid, *s.u);
    m.grad_abs = grad_norm_sq(s.metric, uf).values;
    m.grad_sq = m.grad_abs / s.u->square();
    const NodeArray<double> grad_scal =
        grad_norm_sq(s.metric, ScalarField<double>(grid, s.curvature.scalar)).values.sqrt();
    for (int k = 0; k < grid.size(); ++k) {
      if (!mask[j][static_cast<std::size_t>(k)]) continue;
      ++m.count;
      const auto [lo, hi] = relative_eigenvalues<double>(s.curvature.ricci.at(k), s.metric.at(k));
      m.min_scal = std::min(m.min_scal, s.curvature.scalar[k]);
      m.min_ric = std::min(m.min_ric, lo);
      m.max_ric = std::max(m.max_ric, hi);
      m.max_grad_scal = std::max(m.max_grad_scal, grad_scal[k]);
    }
  });

  SampleMeasure all;
  for (const auto& m : meas) {
    all.count += m.count;
    all.min_scal = std::min(all.min_scal, m.min_scal);
    all.min_ric = std::min(all.min_ric, m.min_ric);
    all.max_ric = std::max(all.max_ric, m.max_ric);
    all.max_grad_scal = std::max(all.max_grad_scal, m.max_grad_scal);
  }
  if (all.count == 0) throw ConfigError("empty admissible set: the cube is entirely masked");
  rep.admissible = all.count;

  const bool section4 = theorem == Theorem::LogGradientBackward || theorem == Theorem::LogGradientForward;
  CurvatureBounds measured;
  if (section4) {
    measured = {std::max(0.0, -all.min_scal), std::max(0.0, -all.min_ric), all.max_grad_scal};
  } else {
    measured = {std::max(0.0, -all.min_ric), std::max(0.0, all.max_ric), all.max_grad_scal};
  }
  rep.bounds = params.bounds ? *params.bounds : measured;
  rep.rho = params.rho >= 0 ? params.rho : std::max(0.0, all.max_ric);
  const bool nonnegative_branch = theorem == Theorem::HarnackGlobal && params.rho >= 0;

  const auto& cfg = trajectory.config;
  auto add = [&](std::string name, double value, double bound, bool ok) {
    rep.hypotheses.push_back({std::move(name), value, bound, ok});
  };
  auto lower = [&](const char* name, double value, double bound) {
    add(name, value, bound, value >= bound - kHypothesisSlack);
  };
  auto upper = [&](const char* name, double value, double bound) {
    add(name, value, bound, value <= bound + kHypothesisSlack);
  };
  const double sign = flow_sign(cfg.direction);
  switch (theorem) {
    case Theorem::LogGradientBackward:
      add("flow-direction-backward", sign, 1.0, cfg.direction == FlowDirection::Backward);
      add("heat-coupling", static_cast<double>(cfg.coupling), 1.0, cfg.coupling != Coupling::None);
      upper("u-upper-bound", sup_u, rep.A);
      lower("scalar-lower", all.min_scal, -rep.bounds.rho1);
      lower("ricci-lower", all.min_ric, -rep.bounds.rho2);
      upper("scalar-gradient", all.max_grad_scal, rep.bounds.rho3);
      break;
    case Theorem::LogGradientForward:
      add("flow-direction-forward", sign, -1.0, cfg.direction == FlowDirection::Forward);
      add("heat-coupling", static_cast<double>(cfg.coupling), 1.0, cfg.coupling != Coupling::None);
      upper("u-upper-bound", sup_u, rep.A);
      lower("scalar-lower", all.min_scal, -rep.bounds.rho1);
      upper("scalar-gradient", all.max_grad_scal, rep.bounds.rho3);
      break;
    default: {
      add("flow-direction-forward-or-static", sign, -1.0, cfg.direction != FlowDirection::Backward);
      add("heat-coupling", static_cast<double>(cfg.coupling), 1.0, cfg.coupling == Coupling::Heat);
      if (theorem == Theorem::LiYau || nonnegative_branch) {
        lower("ricci-nonnegative", all.min_ric, 0.0);
        upper("ricci-upper", all.max_ric, rep.rho);
      } else {
        lower("ricci-lower", all.min_ric, -rep.bounds.rho1);
        upper("ricci-upper", all.max_ric, rep.bounds.rho2);
      }
      if (theorem != Theorem::LiYau && !nonnegative_branch && theorem != Theorem::GradientSup) {
        add("alpha-above-one", params.alpha, 1.0, params.alpha > 1);
      }
      if (theorem == Theorem::GradientSup) upper("u-upper-bound", sup_u, rep.A);
    }
  }
  for (const auto& h : rep.hypotheses) {
    if (!h.ok) {
      rep.failed_hypothesis = describe(h);
      rep.status = EstimateStatus::HypothesisViolated;
      return rep;
    }
  }

  const int n = dim;
  const double alpha = params.alpha, p = params.p, q = params.q;
  const double T = trajectory.samples.back().t;
  const auto& b = rep.bounds;
  std::vector<SampleResult> results(samples.size());
  parallel_for(static_cast<std::ptrdiff_t>(samples.size()), [&](std::ptrdiff_t jj) {
    const auto j = static_cast<std::size_t>(jj);
    const std::size_t i = samples[j];
    const auto& s = trajectory.samples[i];
    const double t = s.t;
    const auto& m = meas[j];
    auto& out = results[j];
    double scalar_rhs = 0.0;
    switch (theorem) {
      case Theorem::HarnackLocal:
        scalar_rhs = bound_local_forward(t, b, rep.cube_radius, alpha, p, q, rep.constants.c4, n);
        break;
      case Theorem::HarnackGlobal:
        scalar_rhs = nonnegative_branch ? bound_global_nonnegative(t, rep.rho, alpha, p, q, n)
                                        : bound_global_forward(t, b.rho1, b.rho2, alpha, p, q, n);
        break;
      case Theorem::LiYau: scalar_rhs = bound_alpha_one(t, rep.rho, n); break;
      case Theorem::GradientSup: scalar_rhs = bound_gradient_sup(T, b.rho1, rep.A, rep.constants.cn); break;
      case Theorem::HarnackCorollary:
        scalar_rhs = bound_harnack_corollary(t, b.rho1, b.rho2, alpha, p, n, rep.constants.cn);
        break;
      default: break;
    }
    for (int k = 0; k < grid.size(); ++k) {
      if (!mask[j][static_cast<std::size_t>(k)]) continue;
      const double u = (*s.u)[k];
      EstimatePoint pt{static_cast<int>(i), k, t, 0.0, scalar_rhs};
      switch (theorem) {
        case Theorem::LogGradientBackward:
          pt.lhs = m.grad_sq[k];
          pt.rhs = bound_backward(t, b, rep.cube_radius, cert, rep.A, u);
          out.proof_margin.push_back(bound_backward_proof_variant(t, b, rep.cube_radius, cert, rep.A, u) - pt.lhs);
          break;
        case Theorem::LogGradientForward:
          pt.lhs = m.grad_sq[k];
          pt.rhs = bound_forward(t, b.rho1, b.rho3, rep.cube_radius, cert, rep.A, u);
          break;
        case Theorem::HarnackLocal:
        case Theorem::HarnackGlobal: pt.lhs = m.grad_sq[k] - alpha * ut[i][k]; break;
        case Theorem::LiYau:
        case Theorem::HarnackCorollary: pt.lhs = m.grad_sq[k] - ut[i][k]; break;
        case Theorem::GradientSup: pt.lhs = t * m.grad_abs[k]; break;
      }
      out.points.push_back(pt);
    }
  });

  std::vector<double> margins;
  margins.reserve(rep.admissible);
  rep.worst.sample = -1;
  double worst_margin = std::numeric_limits<double>::infinity();
  double proof_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < results.size(); ++j) {
    double sample_min = std::numeric_limits<double>::infinity();
    for (const auto& pt : results[j].points) {
      const double mg = pt.margin();
      margins.push_back(mg);
      sample_min = std::min(sample_min, mg);
      rep.max_lhs = std::max(rep.max_lhs, pt.lhs);
      if (mg < worst_margin) {
        worst_margin = mg;
        rep.worst = pt;
      }
      if (-mg > params.tolerance && rep.violations.size() < kMaxListedViolations) rep.violations.push_back(pt);
    }
    for (double pm : results[j].proof_margin) proof_min = std::min(proof_min, pm);
    rep.sample_times.push_back(trajectory.samples[samples[j]].t);
    rep.sample_min_margin.push_back(sample_min);
  }
  if (theorem == Theorem::LogGradientBackward) rep.proof_variant_min_margin = proof_min;
  rep.quantiles = quantiles(std::move(margins));
  rep.max_violation = std::max(0.0, -worst_margin);
  rep.status = rep.max_violation > params.tolerance ? EstimateStatus::Violated : EstimateStatus::Holds;
  return rep;
}

}  // namespace nullflow
