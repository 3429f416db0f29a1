#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nullflow/core/errors.hpp"
#include "nullflow/estimate/params.hpp"
#include "nullflow/flow/config.hpp"
#include "nullflow/metric/scenarios.hpp"

namespace nullflow {

// Malformed document; line and column are 1-based.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& what, int line, int column)
      : ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

enum class InitialData { None, Constant, CosTheta, SinX, RandomSmooth };
std::string_view to_string(InitialData d);
InitialData parse_initial_data(std::string_view s);

struct HeatConfig {
  InitialData initial = InitialData::None;
  double value = 2.0;  // constant level; the modes are added on top of it
  bool operator==(const HeatConfig&) const = default;
};

// Multiplies u at one (sample, node) after the run, before verification.
struct FaultConfig {
  int sample = 0;
  int node = 0;
  double factor = 1.1;
  bool operator==(const FaultConfig&) const = default;
};

struct RunConfig {
  std::string scenario = "round-sphere";
  ScenarioParams params;
  FlowConfig flow;
  HeatConfig heat;
  std::optional<FaultConfig> fault;
  EstimateParams estimate;
  std::vector<Theorem> theorems;
  std::string output = "nullflow-out";
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> ignored_keys;  // lenient mode only
};

// JSON document to a validated RunConfig. Strict mode rejects unknown keys.
ParsedConfig parse_config(std::string_view text, bool strict = true);

// Canonical JSON rendering; parse_config(render_config(c)).config == c.
std::string render_config(const RunConfig& config);

// Initial heat data on the scenario grid, deterministic in the seed.
NodeArray<double> initial_heat(const RunConfig& config, const LeafGrid<double>& grid);

}  // namespace nullflow
