#include "nullflow/flow/config.hpp"

#include <cmath>

#include "nullflow/core/errors.hpp"

namespace nullflow {

void FlowConfig::validate() const {
  if (!(t_end > 0) || !std::isfinite(t_end)) throw ConfigError("flow.t_end must be positive");
  if (!(dt > 0) || !std::isfinite(dt)) throw ConfigError("flow.dt must be positive");
  if (!(cfl > 0)) throw ConfigError("flow.cfl must be positive");
  if (!(singular_fraction > 0)) throw ConfigError("flow.singular_fraction must be positive");
  if (sample_interval < 0) throw ConfigError("flow.sample_interval must be non-negative");
}

std::string_view to_string(FlowDirection d) {
  switch (d) {
    case FlowDirection::Forward: return "forward";
    case FlowDirection::Backward: return "backward";
    case FlowDirection::Static: return "static";
  }
  return "forward";
}

std::string_view to_string(StepController c) {
  return c == StepController::Fixed ? "fixed" : "adaptive";
}

std::string_view to_string(Coupling c) {
  switch (c) {
    case Coupling::None: return "none";
    case Coupling::Heat: return "heat";
    case Coupling::ConjugateHeat: return "conjugate-heat";
  }
  return "none";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ReachedEnd: return "reached-t_end";
    case Termination::Singular: return "singular";
    case Termination::StepUnderflow: return "step-underflow";
  }
  return "reached-t_end";
}

FlowDirection parse_direction(std::string_view s) {
  if (s == "forward") return FlowDirection::Forward;
  if (s == "backward") return FlowDirection::Backward;
  if (s == "static") return FlowDirection::Static;
  throw ConfigError("unknown flow direction '" + std::string(s) + "'");
}

StepController parse_controller(std::string_view s) {
  if (s == "fixed") return StepController::Fixed;
  if (s == "adaptive") return StepController::Adaptive;
  throw ConfigError("unknown step controller '" + std::string(s) + "'");
}

Coupling parse_coupling(std::string_view s) {
  if (s == "none") return Coupling::None;
  if (s == "heat") return Coupling::Heat;
  if (s == "conjugate-heat") return Coupling::ConjugateHeat;
  throw ConfigError("unknown heat coupling '" + std::string(s) + "'");
}

}  // namespace nullflow
