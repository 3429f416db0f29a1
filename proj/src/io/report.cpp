#include "nullflow/io/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace nullflow {

using nlohmann::ordered_json;

namespace {

// JSON has no NaN or infinity; both render as null.
ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json point_json(const EstimatePoint& p) {
  return {{"sample", p.sample}, {"node", p.node}, {"t", num(p.t)},
          {"lhs", num(p.lhs)},   {"rhs", num(p.rhs)}, {"margin", num(p.margin())}};
}

ordered_json report_json(const EstimateReport& r) {
  ordered_json j;
  j["theorem"] = to_string(r.theorem);
  j["status"] = to_string(r.status);
  j["failed_hypothesis"] = r.failed_hypothesis.empty() ? ordered_json(nullptr) : ordered_json(r.failed_hypothesis);
  j["hypotheses"] = ordered_json::array();
  for (const auto& h : r.hypotheses) {
    j["hypotheses"].push_back({{"name", h.name}, {"measured", num(h.measured)}, {"bound", num(h.bound)}, {"ok", h.ok}});
  }
  const auto& p = r.params;
  j["params"] = {{"alpha", p.alpha}, {"p", p.p}, {"q", p.q}, {"tolerance", p.tolerance}, {"t_min", p.t_min}};
  j["bounds"] = {{"rho1", num(r.bounds.rho1)}, {"rho2", num(r.bounds.rho2)}, {"rho3", num(r.bounds.rho3)}};
  j["rho"] = num(r.rho);
  j["A"] = num(r.A);
  j["cube"] = {{"center", r.center}, {"radius", num(r.cube_radius)}, {"diameter", num(r.diameter)},
               {"distance_method", r.distance_method}};
  j["admissible"] = r.admissible;
  if (r.status == EstimateStatus::HypothesisViolated) {
    j["max_lhs"] = nullptr;
    j["max_violation"] = nullptr;
    j["worst"] = nullptr;
    j["quantiles"] = nullptr;
  } else {
    j["max_lhs"] = num(r.max_lhs);
    j["max_violation"] = num(r.max_violation);
    j["worst"] = point_json(r.worst);
    const auto& q = r.quantiles;
    j["quantiles"] = {{"q0", num(q.q0)}, {"q05", num(q.q05)}, {"q50", num(q.q50)}, {"q95", num(q.q95)},
                      {"q100", num(q.q100)}};
  }
  j["violations"] = ordered_json::array();
  for (const auto& v : r.violations) j["violations"].push_back(point_json(v));
  j["proof_variant_min_margin"] = num(r.proof_variant_min_margin);
  return j;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Series {
  std::string name;
  std::string colour;
  std::vector<double> x, y;
  bool dashed = false;
};

// Fixed-layout line chart; identical input gives identical bytes.
std::string line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Series>& series) {
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  const auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  out += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" + title +
         "</text>\n";
  out += "<rect x=\"" + fmt(L) + "\" y=\"" + fmt(T) + "\" width=\"" + fmt(W - L - R) + "\" height=\"" +
         fmt(H - T - B) + "\" fill=\"none\" stroke=\"black\"/>\n";
  const auto text = [&](double x, double y, const std::string& anchor, const std::string& s) {
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" text-anchor=\"" + anchor +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + s + "</text>\n";
  };
  text(L, H - B + 16, "start", label(x0));
  text(W - R, H - B + 16, "end", label(x1));
  text(L - 6, H - B, "end", label(y0));
  text(L - 6, T + 10, "end", label(y1));
  text((L + W - R) / 2, H - 12, "middle", xlabel);
  out += "<text x=\"18\" y=\"" + fmt((T + H - B) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 18 " +
         fmt((T + H - B) / 2) + ")\">" + ylabel + "</text>\n";
  if (y0 < 0 && y1 > 0) {
    out += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(py(0)) + "\" x2=\"" + fmt(W - R) + "\" y2=\"" + fmt(py(0)) +
           "\" stroke=\"grey\" stroke-dasharray=\"2,3\"/>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    out += "<polyline fill=\"none\" stroke=\"" + s.colour + "\" stroke-width=\"1.5\"" +
           (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + " points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!first) out += ' ';
      out += fmt(px(s.x[i])) + "," + fmt(py(s.y[i]));
      first = false;
    }
    out += "\"/>\n";
    const double ly = T + 16 + 14 * static_cast<double>(k);
    out += "<line x1=\"" + fmt(W - R - 150) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" + fmt(W - R - 130) + "\" y2=\"" +
           fmt(ly - 4) + "\" stroke=\"" + s.colour + "\"" + (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    text(W - R - 125, ly, "start", s.name);
  }
  out += "</svg>\n";
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

double numerical_radius(const FlowSample& s) {
  const auto& g = s.metric(0, 0);
  return std::sqrt(g.mean());
}

double exact_radius(const FlowTrajectory& traj, double r0, double t) {
  return std::sqrt(r0 * r0 + 2 * flow_sign(traj.config.direction) * t);
}

}  // namespace

std::string render_report(const EstimateReport& report) { return report_json(report).dump(2) + "\n"; }

double max_radius_error(const FlowTrajectory& traj, double r0, double t_max) {
  double worst = 0;
  for (const auto& s : traj.samples) {
    if (s.t > t_max) break;
    const double exact = exact_radius(traj, r0, s.t);
    worst = std::max(worst, std::abs(numerical_radius(s) - exact) / exact);
  }
  return worst;
}

std::string render_run_report(const RunConfig& config, const FlowTrajectory& traj,
                              const std::vector<EstimateReport>& reports) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  const auto& grid = traj.grid();
  j["scenario"] = {{"id", config.scenario},
                   {"topology", to_string(grid.topology())},
                   {"nodes", grid.size()},
                   {"radius", config.params.radius},
                   {"side", config.params.side},
                   {"amplitude", config.params.amplitude},
                   {"resolution", config.params.resolution},
                   {"seed", config.seed}};
  const auto& f = traj.config;
  ordered_json flow = {{"direction", to_string(f.direction)},
                       {"controller", to_string(f.controller)},
                       {"coupling", to_string(f.coupling)},
                       {"t_end", f.t_end},
                       {"dt", f.dt},
                       {"termination", to_string(traj.termination)},
                       {"singular_time", num(traj.singular_time)},
                       {"singular_node", traj.termination == Termination::Singular ? ordered_json(traj.singular_node)
                                                                                   : ordered_json(nullptr)},
                       {"steps", traj.steps},
                       {"samples", traj.size()},
                       {"last_time", traj.samples.back().t},
                       {"min_dt", num(traj.min_dt)},
                       {"max_dt", num(traj.max_dt)}};
  if (traj.has_heat()) {
    flow["mass_initial"] = traj.samples.front().mass;
    flow["mass_final"] = traj.samples.back().mass;
  }
  if (is_sphere(config.scenario)) {
    flow["radius_max_relative_error"] = max_radius_error(traj, config.params.radius, traj.samples.back().t);
  }
  j["flow"] = std::move(flow);
  const auto& cert = shipped_cutoff();
  const auto k = derive_constants(cert, 2);
  j["constants"] = {{"n", k.n},   {"c1", k.c1},         {"c2", k.c2},         {"c3", k.c3},
                    {"c4", k.c4}, {"c(n)", k.cn},       {"samples", cert.samples}, {"safety", cert.safety},
                    {"sup_neg_second", cert.sup_neg_second}, {"sup_ratio", cert.sup_ratio}};
  j["theorems"] = ordered_json::array();
  for (const auto& r : reports) j["theorems"].push_back(report_json(r));
  j["all_hold_or_gated"] = std::all_of(reports.begin(), reports.end(),
                                       [](const EstimateReport& r) { return r.status != EstimateStatus::Violated; });
  return j.dump(2) + "\n";
}

std::string render_radius_svg(const FlowTrajectory& traj, double r0) {
  Series num_s{"numerical", kPalette[0], {}, {}, false};
  Series exact_s{"exact", kPalette[1], {}, {}, true};
  for (const auto& s : traj.samples) {
    num_s.x.push_back(s.t);
    num_s.y.push_back(numerical_radius(s));
    exact_s.x.push_back(s.t);
    exact_s.y.push_back(exact_radius(traj, r0, s.t));
  }
  return line_chart("sphere radius", "t", "r(t)", {num_s, exact_s});
}

std::string render_margin_svg(const std::vector<EstimateReport>& reports) {
  std::vector<Series> series;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    Series s{std::string(to_string(r.theorem)), kPalette[i % std::size(kPalette)], r.sample_times, {}, false};
    for (double m : r.sample_min_margin) s.y.push_back(std::asinh(m));
    if (r.status == EstimateStatus::HypothesisViolated) s.x.clear(), s.y.clear();
    series.push_back(std::move(s));
  }
  return line_chart("smallest margin per sample", "t", "asinh(min margin)", series);
}

}  // namespace nullflow
