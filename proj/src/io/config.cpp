#include "nullflow/io/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace nullflow {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Reads keys of one JSON object, tracking the ones consumed.
class Section {
 public:
  Section(const json& obj, std::string path, ParsedConfig& out, bool strict)
      : obj_(obj), path_(std::move(path)), out_(out), strict_(strict) {
    if (!obj_.is_object()) throw ConfigError(path_ + " must be an object");
  }

  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, _] : obj_.items()) {
      if (used_.count(key)) continue;
      if (strict_) throw ConfigError("unknown key " + name(key));
      out_.ignored_keys.push_back(name(key));
    }
  }

  template <class T>
  void read(const char* key, T& target) {
    used_.insert(key);
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) throw ConfigError("");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) throw ConfigError("");
      } else if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer()) throw ConfigError("");
      } else {
        if (!it->is_string()) throw ConfigError("");
      }
      target = it->get<T>();
    } catch (const std::exception&) {
      throw ConfigError(name(key) + " has the wrong type");
    }
  }

  template <class Fn>
  void read_enum(const char* key, Fn&& parse) {
    std::string s;
    used_.insert(key);
    if (!obj_.contains(key)) return;
    read(key, s);
    parse(s);
  }

  bool has(const char* key) const { return obj_.contains(key); }
  const json& at(const char* key) {
    used_.insert(key);
    return obj_.at(key);
  }
  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const json& obj_;
  std::string path_;
  ParsedConfig& out_;
  bool strict_;
  std::set<std::string> used_;
};

}  // namespace

std::string_view to_string(InitialData d) {
  switch (d) {
    case InitialData::None: return "none";
    case InitialData::Constant: return "constant";
    case InitialData::CosTheta: return "cos-theta";
    case InitialData::SinX: return "sin-x";
    case InitialData::RandomSmooth: return "random-smooth";
  }
  return "none";
}

InitialData parse_initial_data(std::string_view s) {
  for (auto d : {InitialData::None, InitialData::Constant, InitialData::CosTheta, InitialData::SinX,
                 InitialData::RandomSmooth}) {
    if (to_string(d) == s) return d;
  }
  throw ConfigError("unknown heat.initial '" + std::string(s) + "'");
}

void RunConfig::validate() const {
  validate_scenario(scenario, params);
  flow.validate();
  estimate.validate();
  const bool heat_on = heat.initial != InitialData::None;
  if (heat_on != (flow.coupling != Coupling::None)) {
    throw ConfigError("flow.coupling and heat.initial must both be set or both be none");
  }
  if (heat_on && !(heat.value > 0)) throw ConfigError("heat.value must be positive");
  if (!theorems.empty() && !heat_on) throw ConfigError("theorem checks need heat data");
  if (fault && !(fault->factor > 0)) throw ConfigError("fault.factor must be positive");
  if (output.empty()) throw ConfigError("output must be a directory path");
}

ParsedConfig parse_config(std::string_view text, bool strict) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(what, line, column);
  }

  ParsedConfig out;
  RunConfig& c = out.config;
  Section root(doc, "", out, strict);
  if (root.has("scenario")) {
    Section s(root.at("scenario"), "scenario", out, strict);
    s.read("id", c.scenario);
    s.read("radius", c.params.radius);
    s.read("side", c.params.side);
    s.read("amplitude", c.params.amplitude);
    s.read("resolution", c.params.resolution);
    s.read("resolution_phi", c.params.resolution_phi);
    s.read("reduced", c.params.reduced);
  }
  bool coupling_given = false;
  if (root.has("flow")) {
    Section s(root.at("flow"), "flow", out, strict);
    s.read_enum("direction", [&](const std::string& v) { c.flow.direction = parse_direction(v); });
    s.read("t_end", c.flow.t_end);
    s.read("dt", c.flow.dt);
    s.read_enum("controller", [&](const std::string& v) { c.flow.controller = parse_controller(v); });
    s.read("cfl", c.flow.cfl);
    s.read("singular_fraction", c.flow.singular_fraction);
    s.read_enum("coupling", [&](const std::string& v) {
      c.flow.coupling = parse_coupling(v);
      coupling_given = true;
    });
    s.read("sample_interval", c.flow.sample_interval);
  }
  if (root.has("heat")) {
    Section s(root.at("heat"), "heat", out, strict);
    s.read_enum("initial", [&](const std::string& v) { c.heat.initial = parse_initial_data(v); });
    s.read("value", c.heat.value);
  }
  if (!coupling_given && c.heat.initial != InitialData::None) c.flow.coupling = Coupling::Heat;
  if (root.has("fault")) {
    Section s(root.at("fault"), "fault", out, strict);
    FaultConfig f;
    s.read("sample", f.sample);
    s.read("node", f.node);
    s.read("factor", f.factor);
    c.fault = f;
  }
  if (root.has("estimate")) {
    Section s(root.at("estimate"), "estimate", out, strict);
    auto& e = c.estimate;
    s.read("alpha", e.alpha);
    s.read("p", e.p);
    s.read("q", e.q);
    s.read("cube_radius", e.cube_radius);
    s.read("center", e.center);
    s.read("A", e.A);
    s.read("tolerance", e.tolerance);
    s.read("t_min", e.t_min);
    s.read("rho", e.rho);
    if (s.has("bounds")) {
      Section b(s.at("bounds"), "estimate.bounds", out, strict);
      CurvatureBounds cb;
      b.read("rho1", cb.rho1);
      b.read("rho2", cb.rho2);
      b.read("rho3", cb.rho3);
      e.bounds = cb;
    }
  }
  if (root.has("theorems")) {
    const json& list = root.at("theorems");
    if (!list.is_array()) throw ConfigError("theorems must be an array of ids");
    for (const auto& id : list) {
      if (!id.is_string()) throw ConfigError("theorems must be an array of ids");
      c.theorems.push_back(parse_theorem(id.get<std::string>()));
    }
  }
  root.read("output", c.output);
  if (root.has("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      throw ConfigError("seed must be a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  c.validate();
  return out;
}

std::string render_config(const RunConfig& c) {
  ordered_json doc;
  doc["scenario"] = {{"id", c.scenario},
                     {"radius", c.params.radius},
                     {"side", c.params.side},
                     {"amplitude", c.params.amplitude},
                     {"resolution", c.params.resolution},
                     {"resolution_phi", c.params.resolution_phi},
                     {"reduced", c.params.reduced}};
  doc["flow"] = {{"direction", to_string(c.flow.direction)},
                 {"t_end", c.flow.t_end},
                 {"dt", c.flow.dt},
                 {"controller", to_string(c.flow.controller)},
                 {"cfl", c.flow.cfl},
                 {"singular_fraction", c.flow.singular_fraction},
                 {"coupling", to_string(c.flow.coupling)},
                 {"sample_interval", c.flow.sample_interval}};
  doc["heat"] = {{"initial", to_string(c.heat.initial)}, {"value", c.heat.value}};
  if (c.fault) doc["fault"] = {{"sample", c.fault->sample}, {"node", c.fault->node}, {"factor", c.fault->factor}};
  const auto& e = c.estimate;
  doc["estimate"] = {{"alpha", e.alpha}, {"p", e.p}, {"q", e.q}, {"cube_radius", e.cube_radius},
                     {"center", e.center}, {"A", e.A}, {"tolerance", e.tolerance}, {"t_min", e.t_min},
                     {"rho", e.rho}};
  if (e.bounds) doc["estimate"]["bounds"] = {{"rho1", e.bounds->rho1}, {"rho2", e.bounds->rho2}, {"rho3", e.bounds->rho3}};
  doc["theorems"] = ordered_json::array();
  for (Theorem t : c.theorems) doc["theorems"].push_back(to_string(t));
  doc["output"] = c.output;
  doc["seed"] = c.seed;
  return doc.dump(2) + "\n";
}

NodeArray<double> initial_heat(const RunConfig& config, const LeafGrid<double>& grid) {
  const double v = config.heat.value;
  switch (config.heat.initial) {
    case InitialData::None: return {};
    case InitialData::Constant: return NodeArray<double>::Constant(grid.size(), v);
    case InitialData::CosTheta:
      return ScalarField<double>::sample(grid, [&](double th, double) { return v + std::cos(th); }).values;
    case InitialData::SinX:
      return ScalarField<double>::sample(grid, [&](double x, double) { return v + std::sin(x); }).values;
    case InitialData::RandomSmooth: {
      // Unit-amplitude sum of low modes with seeded coefficients.
      std::mt19937_64 rng(config.seed);
      std::uniform_real_distribution<double> coef(-1.0, 1.0);
      double c[4];
      for (double& x : c) x = coef(rng);
      const bool sphere = grid.axis(0).kind == AxisKind::Polar;
      NodeArray<double> f = ScalarField<double>::sample(grid, [&](double a, double b) {
                              if (sphere) return c[0] * std::cos(a) + c[1] * std::sin(a) * std::cos(b) +
                                                 c[2] * std::sin(a) * std::sin(b) + c[3] * std::cos(a) * std::cos(a);
                              return c[0] * std::sin(a) + c[1] * std::cos(b) + c[2] * std::sin(a + b) +
                                     c[3] * std::cos(a - b);
                            }).values;
      const double scale = f.abs().maxCoeff();
      if (scale > 0) f /= scale;
      return v + f;
    }
  }
  return {};
}

}  // namespace nullflow
