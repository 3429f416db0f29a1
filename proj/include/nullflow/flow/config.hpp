#pragma once

#include <string>
#include <string_view>

namespace nullflow {

enum class FlowDirection {
  Forward,   // d/dt g = -2 Ric
  Backward,  // d/dt g = +2 Ric
  Static,    // metric frozen; heat equations still run
};

enum class StepController { Fixed, Adaptive };

enum class Coupling { None, Heat, ConjugateHeat };

enum class Termination { ReachedEnd, Singular, StepUnderflow };

struct FlowConfig {
  FlowDirection direction = FlowDirection::Forward;
  double t_end = 1.0;
  double dt = 1e-4;
  StepController controller = StepController::Fixed;
  double cfl = 0.2;
  double singular_fraction = 1e-6;  // threshold relative to the initial smallest eigenvalue
  Coupling coupling = Coupling::None;
  double sample_interval = 0.0;     // 0 selects t_end / 100

  double interval() const { return sample_interval > 0 ? sample_interval : t_end / 100; }
  void validate() const;
  bool operator==(const FlowConfig&) const = default;
};

std::string_view to_string(FlowDirection d);
std::string_view to_string(StepController c);
std::string_view to_string(Coupling c);
std::string_view to_string(Termination t);

FlowDirection parse_direction(std::string_view s);
StepController parse_controller(std::string_view s);
Coupling parse_coupling(std::string_view s);

// Sign of d/dt g in units of Ric: -1 forward, +1 backward, 0 static.
inline double flow_sign(FlowDirection d) {
  switch (d) {
    case FlowDirection::Forward: return -1.0;
    case FlowDirection::Backward: return 1.0;
    case FlowDirection::Static: return 0.0;
  }
  return 0.0;
}

}  // namespace nullflow
