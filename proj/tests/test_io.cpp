#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nullflow/flow/engine.hpp"
#include "nullflow/io/config.hpp"
#include "nullflow/io/csv.hpp"
#include "nullflow/io/report.hpp"
#include "nullflow/io/run.hpp"

using namespace nullflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nullflow_test_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

int cli(const std::string& args) {
  const int status = std::system((std::string(NULLFLOW_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string message_of(const std::string& text, bool strict = true) {
  try {
    parse_config(text, strict);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const char* kStaticSphere = R"({
  "scenario": {"id": "round-sphere", "resolution": 64},
  "flow": {"direction": "static", "t_end": 1.0, "dt": 1e-4},
  "heat": {"initial": "cos-theta", "value": 2.0},
  "estimate": {"t_min": 0.05},
  "theorems": ["li-yau"]
})";

}  // namespace

TEST_CASE("parse_config") {
  SUBCASE("minimal sphere config fills defaults") {
    const auto c = parse_config(R"({"scenario": {"id": "round-sphere", "radius": 1}, "flow": {"t_end": 0.45}})").config;
    CHECK(c.scenario == "round-sphere");
    CHECK(c.params.radius == 1.0);
    CHECK(c.params.resolution == ScenarioParams{}.resolution);
    CHECK(c.flow.t_end == 0.45);
    CHECK(c.flow.direction == FlowDirection::Forward);
    CHECK(c.flow.coupling == Coupling::None);
    CHECK(c.heat.initial == InitialData::None);
    CHECK(c.estimate == EstimateParams{});
    CHECK(c.theorems.empty());
    CHECK_FALSE(c.fault.has_value());
  }
  SUBCASE("heat data switches the coupling on") {
    const auto c = parse_config(R"({"heat": {"initial": "constant"}})").config;
    CHECK(c.flow.coupling == Coupling::Heat);
  }
  SUBCASE("alpha = 2, p = 3, q = 6 is accepted") {
    const auto c = parse_config(R"({"estimate": {"alpha": 2, "p": 3, "q": 6}})").config;
    CHECK(c.estimate.p == 3.0);
    CHECK(c.estimate.q == 6.0);
  }
  SUBCASE("alpha = 2, p = 3, q = 5 is rejected naming the constraint") {
    const auto msg = message_of(R"({"estimate": {"alpha": 2, "p": 3, "q": 5}})");
    CHECK(msg.find("alpha-p-q constraint") != std::string::npos);
  }
  SUBCASE("syntax errors carry line and column") {
    const std::string text = "{\n  \"flow\": {\n    \"t_end\": 0.45,,\n  }\n}\n";
    try {
      parse_config(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 19);
      CHECK(std::string(e.what()).rfind("line 3, column 19", 0) == 0);
    }
  }
  SUBCASE("strict mode rejects unknown keys, lenient mode reports them") {
    const std::string text = R"({"flow": {"t_end": 1, "tend": 2}, "colour": "red"})";
    CHECK(message_of(text).find("unknown key flow.tend") != std::string::npos);
    const auto parsed = parse_config(text, false);
    CHECK(parsed.ignored_keys == std::vector<std::string>{"flow.tend", "colour"});
    CHECK(parsed.config.flow.t_end == 1.0);
  }
  SUBCASE("type errors name the key path") {
    CHECK(message_of(R"({"scenario": {"resolution": "many"}})").find("scenario.resolution") != std::string::npos);
    CHECK(message_of(R"({"scenario": {"resolution": 64.5}})").find("scenario.resolution") != std::string::npos);
    CHECK(message_of(R"({"flow": 3})").find("flow must be an object") != std::string::npos);
  }
  SUBCASE("unknown ids and inconsistent settings") {
    CHECK(message_of(R"({"scenario": {"id": "klein-bottle"}})").find("unknown scenario") != std::string::npos);
    CHECK(message_of(R"({"theorems": ["li-yau"]})").find("need heat data") != std::string::npos);
    CHECK(message_of(R"({"heat": {"initial": "cos-theta"}, "theorems": ["nope"]})").find("unknown theorem") !=
          std::string::npos);
    CHECK(message_of(R"({"flow": {"coupling": "heat"}})").find("both") != std::string::npos);
    CHECK(message_of(R"({"seed": -3})").find("seed") != std::string::npos);
  }
  SUBCASE("render round-trips every field") {
    RunConfig c;
    c.scenario = "torus-bump";
    c.params.amplitude = 0.3;
    c.params.resolution = 24;
    c.params.resolution_phi = 32;
    c.flow.direction = FlowDirection::Backward;
    c.flow.controller = StepController::Adaptive;
    c.flow.coupling = Coupling::ConjugateHeat;
    c.flow.t_end = 0.1 + 0.2;  // not exactly representable
    c.flow.sample_interval = 1.0 / 3;
    c.heat = {InitialData::RandomSmooth, 2.5};
    c.fault = FaultConfig{3, 7, 0.9};
    c.estimate.alpha = 1.5;
    c.estimate.p = 3;
    c.estimate.q = 3;
    c.estimate.bounds = CurvatureBounds{0.1, 0.2, 0.3};
    c.estimate.center = 5;
    c.theorems = {Theorem::LiYau, Theorem::HarnackLocal};
    c.output = "somewhere/else";
    c.seed = 18446744073709551615ull;
    const auto back = parse_config(render_config(c)).config;
    CHECK(back == c);
    CHECK(render_config(back) == render_config(c));
  }
}

TEST_CASE("initial heat data") {
  RunConfig c;
  c.scenario = "flat-torus";
  c.params.resolution = 16;
  const auto grid = scenario_grid<double>(c.scenario, c.params);
  c.heat = {InitialData::RandomSmooth, 2.0};
  c.seed = 7;
  const auto a = initial_heat(c, grid);
  const auto b = initial_heat(c, grid);
  CHECK((a == b).all());
  CHECK(a.minCoeff() >= 1.0);
  CHECK(a.maxCoeff() <= 3.0);
  CHECK((a - 2.0).abs().maxCoeff() == doctest::Approx(1.0));
  c.seed = 8;
  CHECK_FALSE((initial_heat(c, grid) == a).all());
  c.heat = {InitialData::SinX, 2.0};
  const auto s = initial_heat(c, grid);
  const auto [x, y] = grid.position(5);
  CHECK(s[5] == 2.0 + std::sin(x));
}

TEST_CASE("trajectory csv") {
  RunConfig c = parse_config(R"({
    "scenario": {"id": "torus-bump", "resolution": 16},
    "flow": {"t_end": 0.05, "dt": 1e-3, "sample_interval": 0.01},
    "heat": {"initial": "random-smooth", "value": 3.0},
    "seed": 4
  })").config;
  const auto metric = build_scenario_metric<double>(c.scenario, c.params);
  const auto traj = run_flow(metric, c.flow, initial_heat(c, metric.grid()));
  std::stringstream ss;
  write_trajectory_csv(ss, traj);
  const std::string text = ss.str();
  CHECK(text.rfind("t,node,g11,g12,g22,u\n", 0) == 0);

  SUBCASE("read-back is bit exact and recomputes curvature") {
    std::istringstream in(text);
    const auto back = read_trajectory_csv(in, metric.grid(), c.flow);
    REQUIRE(back.size() == traj.size());
    for (std::size_t j = 0; j < traj.size(); ++j) {
      const auto& a = traj.samples[j];
      const auto& b = back.samples[j];
      CHECK(a.t == b.t);
      CHECK((a.metric(0, 0) == b.metric(0, 0)).all());
      CHECK((a.metric(0, 1) == b.metric(0, 1)).all());
      CHECK((a.metric(1, 1) == b.metric(1, 1)).all());
      CHECK((*a.u == *b.u).all());
      CHECK((a.curvature.scalar == b.curvature.scalar).all());
      CHECK(a.mass == b.mass);
    }
    std::stringstream again;
    write_trajectory_csv(again, back);
    CHECK(again.str() == text);
  }
  SUBCASE("malformed input") {
    std::istringstream no_header("0,0,1,0,1,2\n");
    CHECK_THROWS_AS(read_trajectory_csv(no_header, metric.grid(), c.flow), ConfigError);
    const auto cut = text.substr(0, text.rfind('\n', text.size() - 2) + 1);
    std::istringstream truncated(cut);
    CHECK_THROWS_AS(read_trajectory_csv(truncated, metric.grid(), c.flow), GridMismatchError);
    ScenarioParams other = c.params;
    other.resolution = 8;
    std::istringstream wrong_grid(text);
    CHECK_THROWS_AS(read_trajectory_csv(wrong_grid, scenario_grid<double>(c.scenario, other), c.flow),
                    GridMismatchError);
  }
  SUBCASE("no heat leaves u empty") {
    FlowConfig f = c.flow;
    f.coupling = Coupling::None;
    std::stringstream plain;
    write_trajectory_csv(plain, run_flow(metric, f));
    std::string header, first;
    std::getline(plain, header);
    std::getline(plain, first);
    CHECK(first.back() == ',');
    std::istringstream in(plain.str());
    CHECK_FALSE(read_trajectory_csv(in, metric.grid(), f).has_heat());
  }
}

TEST_CASE("run artifacts and exit codes") {
  SUBCASE("sphere acceptance config turns singular near 0.5 with li-yau holding") {
    auto c = parse_config(read_text_file(NULLFLOW_ACCEPTANCE_CONFIG)).config;
    c.output = scratch("acceptance").string();
    const auto summary = run(c);
    CHECK(summary.exit_code == 0);
    CHECK(summary.termination == Termination::Singular);
    REQUIRE(summary.singular_time.has_value());
    CHECK(std::abs(*summary.singular_time - 0.5) <= 1e-2);
    REQUIRE(summary.theorems.size() == 1);
    CHECK(summary.theorems[0].theorem == Theorem::LiYau);
    CHECK(summary.theorems[0].status == EstimateStatus::Holds);
    const auto s = nlohmann::json::parse(read_text_file(c.output + "/summary.json"));
    CHECK(s["termination"] == "singular");
    CHECK(s["timings"].contains("flow_seconds"));
    const auto report = read_text_file(c.output + "/report.json");
    CHECK(report.find("seconds") == std::string::npos);
  }
  SUBCASE("flat torus without theorems exits 0 with the trajectory only") {
    const auto dir = scratch("torus");
    write(dir / "cfg.json", R"({"scenario": {"id": "flat-torus", "resolution": 16}, "flow": {"t_end": 0.1, "dt": 1e-2}})");
    CHECK(cli("run " + (dir / "cfg.json").string() + " --out " + (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "trajectory.csv"));
    CHECK_FALSE(fs::exists(dir / "out" / "margins.svg"));
    CHECK_FALSE(fs::exists(dir / "out" / "radius.svg"));
    const auto report = nlohmann::json::parse(read_text_file((dir / "out" / "report.json").string()));
    CHECK(report["theorems"].empty());
    CHECK(report["flow"]["termination"] == "reached-t_end");
  }
  SUBCASE("static sphere li-yau holds and the csv verifies the same way") {
    const auto dir = scratch("sphere");
    write(dir / "cfg.json", kStaticSphere);
    const auto out = dir / "out";
    CHECK(cli("run " + (dir / "cfg.json").string() + " --out " + out.string()) == 0);
    const auto report = nlohmann::json::parse(read_text_file((out / "report.json").string()));
    CHECK(report["schema_version"] == kReportSchemaVersion);
    CHECK(report["theorems"][0]["status"] == "holds");
    CHECK(report["theorems"][0]["worst"]["margin"].get<double>() >= 0);
    for (const char* key : {"c1", "c2", "c3", "c4", "c(n)"}) CHECK(report["constants"].contains(key));
    CHECK(fs::exists(out / "radius.svg"));
    CHECK(fs::exists(out / "margins.svg"));

    const auto cfg = parse_config(kStaticSphere).config;
    const auto rep = verify_csv((out / "trajectory.csv").string(), Theorem::LiYau, cfg);
    CHECK(nlohmann::json::parse(render_report(rep)) == report["theorems"][0]);
    CHECK(cli("verify " + (out / "trajectory.csv").string() + " --theorem li-yau --params " +
              (dir / "cfg.json").string()) == 0);
  }
  SUBCASE("fault injection exits 1 and names the node") {
    const auto dir = scratch("fault");
    auto doc = nlohmann::json::parse(kStaticSphere);
    doc["fault"] = {{"sample", 50}, {"node", 20}, {"factor", 1.1}};
    write(dir / "cfg.json", doc.dump());
    CHECK(cli("run " + (dir / "cfg.json").string() + " --out " + (dir / "out").string()) == 1);
    const auto report = nlohmann::json::parse(read_text_file((dir / "out" / "report.json").string()));
    const auto& th = report["theorems"][0];
    CHECK(th["status"] == "violated");
    CHECK(th["worst"]["node"] == 20);
    REQUIRE_FALSE(th["violations"].empty());
    CHECK(report["all_hold_or_gated"] == false);
  }
  SUBCASE("hypothesis-gated report exits 0 and records the measured bound") {
    const auto dir = scratch("gated");
    auto doc = nlohmann::json::parse(kStaticSphere);
    doc["estimate"]["rho"] = 0.5;
    write(dir / "cfg.json", doc.dump());
    CHECK(cli("run " + (dir / "cfg.json").string() + " --out " + (dir / "out").string()) == 0);
    const auto report = nlohmann::json::parse(read_text_file((dir / "out" / "report.json").string()));
    const auto& th = report["theorems"][0];
    CHECK(th["status"] == "hypothesis-violated");
    const std::string failed = th["failed_hypothesis"];
    CHECK(failed.rfind("ricci-upper: measured", 0) == 0);
  }
  SUBCASE("runtime and usage errors exit 2") {
    const auto dir = scratch("errors");
    write(dir / "bad.json", "{\"flow\": ");
    CHECK(cli("run " + (dir / "bad.json").string()) == 2);
    write(dir / "unknown.json", R"({"flw": {}})");
    CHECK(cli("run " + (dir / "unknown.json").string() + " --strict --out " + (dir / "o").string()) == 2);
    CHECK(cli("run " + (dir / "missing.json").string()) == 2);
    CHECK(cli("") == 2);
    auto doc = nlohmann::json::parse(kStaticSphere);
    doc["fault"] = {{"sample", 500}, {"node", 0}};
    write(dir / "fault.json", doc.dump());
    CHECK(cli("run " + (dir / "fault.json").string() + " --out " + (dir / "o").string()) == 2);
  }
  SUBCASE("seed override changes random data and nothing else") {
    const auto dir = scratch("seed");
    write(dir / "cfg.json", R"({"scenario": {"id": "flat-torus", "resolution": 16},
      "flow": {"direction": "static", "t_end": 0.1, "dt": 1e-2}, "heat": {"initial": "random-smooth"}, "seed": 1})");
    const auto c = (dir / "cfg.json").string();
    REQUIRE(cli("run " + c + " --out " + (dir / "a").string()) == 0);
    REQUIRE(cli("run " + c + " --out " + (dir / "b").string()) == 0);
    REQUIRE(cli("run " + c + " --seed 2 --out " + (dir / "c").string()) == 0);
    const auto a = read_text_file((dir / "a" / "trajectory.csv").string());
    CHECK(a == read_text_file((dir / "b" / "trajectory.csv").string()));
    CHECK(a != read_text_file((dir / "c" / "trajectory.csv").string()));
    CHECK(read_text_file((dir / "c" / "config.json").string()).find("\"seed\": 2") != std::string::npos);
  }
}
