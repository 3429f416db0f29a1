#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nullflow/estimate/verify.hpp"
#include "nullflow/io/config.hpp"

namespace nullflow {

struct TheoremSummary {
  Theorem theorem;
  EstimateStatus status;
  double min_margin;  // NaN when hypothesis-gated
};

struct RunSummary {
  Termination termination = Termination::ReachedEnd;
  std::optional<double> singular_time;
  long steps = 0;
  std::vector<TheoremSummary> theorems;
  double flow_seconds = 0.0;
  double verify_seconds = 0.0;
  double write_seconds = 0.0;
  int exit_code = 0;  // 0 all hold or gated, 1 any violation
};

// Exit code contract: 0 when every report holds or is hypothesis-gated, 1 otherwise.
int exit_code(const std::vector<EstimateReport>& reports);

// Flow, optional fault injection, verification and artifacts in config.output:
// trajectory.csv, report.json, summary.json, margins.svg and, on spheres, radius.svg.
RunSummary run(const RunConfig& config);

// Reads a trajectory CSV written by run() and checks one theorem with the config's
// scenario grid, flow settings and estimate parameters.
EstimateReport verify_csv(const std::string& csv_path, Theorem theorem, const RunConfig& config);

std::string read_text_file(const std::string& path);

}  // namespace nullflow
