#include "nullflow/io/run.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nullflow/flow/engine.hpp"
#include "nullflow/io/csv.hpp"
#include "nullflow/io/report.hpp"

namespace nullflow {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error("cannot write " + path.string());
}

void apply_fault(FlowTrajectory& traj, const FaultConfig& fault) {
  if (fault.sample < 0 || fault.sample >= static_cast<int>(traj.size())) {
    throw ConfigError("fault.sample " + std::to_string(fault.sample) + " outside the " +
                      std::to_string(traj.size()) + " recorded samples");
  }
  auto& s = traj.samples[fault.sample];
  if (!s.u) throw ConfigError("fault injection needs heat data");
  if (fault.node < 0 || fault.node >= s.metric.size()) {
    throw ConfigError("fault.node " + std::to_string(fault.node) + " outside the grid");
  }
  (*s.u)[fault.node] *= fault.factor;
  s.mass = s.metric.integrate(*s.u);
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code(const std::vector<EstimateReport>& reports) {
  for (const auto& r : reports) {
    if (r.status == EstimateStatus::Violated) return 1;
  }
  return 0;
}

RunSummary run(const RunConfig& config) {
  config.validate();
  RunSummary summary;
  auto start = Clock::now();
  const auto metric = build_scenario_metric<double>(config.scenario, config.params);
  std::optional<NodeArray<double>> u0;
  if (config.heat.initial != InitialData::None) u0 = initial_heat(config, metric.grid());
  FlowTrajectory traj = run_flow(metric, config.flow, u0);
  if (config.fault) apply_fault(traj, *config.fault);
  summary.flow_seconds = seconds_since(start);
  summary.termination = traj.termination;
  if (traj.termination == Termination::Singular) summary.singular_time = traj.singular_time;
  summary.steps = traj.steps;

  start = Clock::now();
  std::vector<EstimateReport> reports;
  for (Theorem th : config.theorems) {
    reports.push_back(verify(traj, th, config.estimate));
    const auto& r = reports.back();
    summary.theorems.push_back({th, r.status,
                                r.status == EstimateStatus::HypothesisViolated
                                    ? std::numeric_limits<double>::quiet_NaN()
                                    : r.worst.margin()});
  }
  summary.verify_seconds = seconds_since(start);
  summary.exit_code = exit_code(reports);

  start = Clock::now();
  const std::filesystem::path dir(config.output);
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "trajectory.csv", std::ios::binary);
    write_trajectory_csv(csv, traj);
    csv.close();
    if (!csv) throw Error("cannot write " + (dir / "trajectory.csv").string());
  }
  write_text_file(dir / "config.json", render_config(config));
  write_text_file(dir / "report.json", render_run_report(config, traj, reports));
  if (is_sphere(config.scenario)) write_text_file(dir / "radius.svg", render_radius_svg(traj, config.params.radius));
  if (!reports.empty()) write_text_file(dir / "margins.svg", render_margin_svg(reports));
  summary.write_seconds = seconds_since(start);

  nlohmann::ordered_json j;
  j["termination"] = to_string(summary.termination);
  j["singular_time"] = summary.singular_time ? nlohmann::ordered_json(*summary.singular_time) : nullptr;
  j["steps"] = summary.steps;
  j["theorems"] = nlohmann::ordered_json::array();
  for (const auto& t : summary.theorems) {
    j["theorems"].push_back({{"theorem", to_string(t.theorem)},
                             {"status", to_string(t.status)},
                             {"min_margin", std::isfinite(t.min_margin) ? nlohmann::ordered_json(t.min_margin)
                                                                        : nlohmann::ordered_json(nullptr)}});
  }
  j["exit_code"] = summary.exit_code;
  j["timings"] = {{"flow_seconds", summary.flow_seconds},
                  {"verify_seconds", summary.verify_seconds},
                  {"write_seconds", summary.write_seconds}};
  write_text_file(dir / "summary.json", j.dump(2) + "\n");
  return summary;
}

EstimateReport verify_csv(const std::string& csv_path, Theorem theorem, const RunConfig& config) {
  const auto grid = scenario_grid<double>(config.scenario, config.params);
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Error("cannot read " + csv_path);
  const FlowTrajectory traj = read_trajectory_csv(in, grid, config.flow);
  return verify(traj, theorem, config.estimate);
}

}  // namespace nullflow
