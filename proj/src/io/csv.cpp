#include "nullflow/io/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "nullflow/core/errors.hpp"
#include "nullflow/flow/engine.hpp"

namespace nullflow {

namespace {

constexpr std::string_view kHeader = "t,node,g11,g12,g22,u";

void put(std::string& line, double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  line.append(buf, static_cast<std::size_t>(len));
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double number(std::string_view s, long row) {
  double v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw ConfigError("trajectory csv row " + std::to_string(row) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const FlowTrajectory& traj) {
  out << kHeader << '\n';
  std::string line;
  for (const auto& s : traj.samples) {
    const auto& m = s.metric;
    for (int k = 0; k < m.size(); ++k) {
      line.clear();
      put(line, s.t);
      line += ',';
      line += std::to_string(k);
      for (double v : {m(0, 0)[k], m(0, 1)[k], m(1, 1)[k]}) {
        line += ',';
        put(line, v);
      }
      line += ',';
      if (s.u) put(line, (*s.u)[k]);
      line += '\n';
      out << line;
    }
  }
}

FlowTrajectory read_trajectory_csv(std::istream& in, const LeafGrid<double>& grid, const FlowConfig& config) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw ConfigError("trajectory csv must start with the header '" + std::string(kHeader) + "'");
  }
  const int n = grid.size();
  FlowTrajectory traj;
  traj.config = config;
  NodeArray<double> g00(n), g01(n), g11(n), u(n);
  double t = 0;
  int next = 0;
  bool heat = false;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cols = split(line);
    if (cols.size() != 6) throw ConfigError("trajectory csv row " + std::to_string(row) + ": expected 6 columns");
    const double tr = number(cols[0], row);
    const int node = static_cast<int>(number(cols[1], row));
    if (node != next) {
      throw GridMismatchError("trajectory csv row " + std::to_string(row) + ": node " + std::to_string(node) +
                              " out of order for a grid of " + std::to_string(n) + " nodes");
    }
    if (node == 0) {
      t = tr;
      heat = !cols[5].empty();
    } else if (tr != t || heat == cols[5].empty()) {
      throw ConfigError("trajectory csv row " + std::to_string(row) + ": inconsistent sample block");
    }
    g00[node] = number(cols[2], row);
    g01[node] = number(cols[3], row);
    g11[node] = number(cols[4], row);
    if (heat) u[node] = number(cols[5], row);
    if (++next == n) {
      LeafMetric<double> metric(grid, g00, g01, g11);
      SampleCurvature curv = flow_curvature(metric);
      std::optional<NodeArray<double>> us;
      double mass = 0;
      if (heat) {
        us = u;
        mass = metric.integrate(u);
      }
      traj.samples.push_back({t, std::move(metric), std::move(curv), std::move(us), mass});
      next = 0;
    }
  }
  if (next != 0) throw GridMismatchError("trajectory csv ends inside a sample block");
  if (traj.samples.empty()) throw ConfigError("trajectory csv holds no samples");
  return traj;
}

}  // namespace nullflow
