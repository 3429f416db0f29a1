#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "nullflow/core/errors.hpp"
#include "nullflow/estimate/bounds.hpp"
#include "nullflow/estimate/quantities.hpp"
#include "nullflow/estimate/verify.hpp"
#include "nullflow/flow/engine.hpp"
#include "nullflow/metric/scenarios.hpp"
#include "support.hpp"

using namespace nullflow;
using testing::kPi;

namespace {

LeafMetric<double> scenario(const char* id, int n = 32, double r = 1.0) {
  ScenarioParams p;
  p.resolution = n;
  p.radius = r;
  return build_scenario_metric<double>(id, p);
}

NodeArray<double> sampled(const LeafGrid<double>& grid, double (*fn)(double, double)) {
  return ScalarField<double>::sample(grid, fn).values;
}

FlowConfig config(FlowDirection dir, double t_end, double dt) {
  FlowConfig c;
  c.direction = dir;
  c.t_end = t_end;
  c.dt = dt;
  return c;
}

FlowTrajectory static_sphere_heat() {
  const auto g = scenario("round-sphere", 64);
  const auto u0 = sampled(g.grid(), [](double th, double) { return 2 + std::cos(th); });
  return solve_heat(g, config(FlowDirection::Static, 1.0, 1e-4), u0);
}

FlowTrajectory flat_torus_heat(double (*u0)(double, double), int n = 64) {
  const auto g = scenario("flat-torus", n);
  return solve_heat(g, config(FlowDirection::Static, 1.0, 1e-3), sampled(g.grid(), u0));
}

// Independent restatement of the cutoff polynomial in the monomial basis of x = s - 1.
struct CutoffOracle {
  static double psi(double s) {
    if (s <= 1) return 1;
    if (s >= 2) return 0;
    const double x = s - 1;
    return 1 - 10 * std::pow(x, 3) + 15 * std::pow(x, 4) - 6 * std::pow(x, 5);
  }
  static double d1(double s) {
    if (s <= 1 || s >= 2) return 0;
    const double x = s - 1;
    return -30 * x * x + 60 * std::pow(x, 3) - 30 * std::pow(x, 4);
  }
  static double d2(double s) {
    if (s <= 1 || s >= 2) return 0;
    const double x = s - 1;
    return -60 * x + 180 * x * x - 120 * std::pow(x, 3);
  }
};

}  // namespace

TEST_CASE("cutoff certificate") {
  const auto& cert = shipped_cutoff();
  SUBCASE("plateau and support") {
    CHECK(cutoff_profile(0.5) == 1.0);
    CHECK(cutoff_profile(3.0) == 0.0);
    CHECK(cutoff_profile(1.0) == 1.0);
    CHECK(cutoff_profile(2.0) == 0.0);
    CHECK(std::abs(cutoff_derivative(1 + 1e-7)) < 1e-12);
    CHECK(std::abs(cutoff_second_derivative(2 - 1e-7)) < 1e-5);
  }
  SUBCASE("matches the dense sampling oracle") {
    const std::size_t N = 1'000'000;
    double neg2 = 0, ratio = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double s = 1.0 + static_cast<double>(i) / static_cast<double>(N - 1);
      CHECK_EQ(cutoff_profile(s), doctest::Approx(CutoffOracle::psi(s)).epsilon(1e-12));
      neg2 = std::max(neg2, -CutoffOracle::d2(s));
      const double psi = CutoffOracle::psi(s);
      if (psi > 0) ratio = std::max(ratio, CutoffOracle::d1(s) * CutoffOracle::d1(s) / psi);
    }
    CHECK(cert.c1 == doctest::Approx(1.05 * neg2).epsilon(1e-12));
    CHECK(cert.c2 == doctest::Approx(1.05 * ratio).epsilon(1e-9));
    CHECK(cert.sup_neg_second == doctest::Approx(10 / std::sqrt(3.0)).epsilon(1e-9));
    CHECK(std::isfinite(cert.c2));
    CHECK(cert.constraints_hold);
  }
  SUBCASE("certified constants hold on offset samples") {
    const std::size_t N = 1'000'000;
    bool ok = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double s = 0.5 + 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(N);
      const double psi = cutoff_profile(s);
      const double d1 = cutoff_derivative(s);
      ok = ok && psi >= 0 && psi <= 1 && d1 <= 0 && cutoff_second_derivative(s) >= -cert.c1;
      if (psi > 0) ok = ok && d1 * d1 / psi <= cert.c2;
    }
    CHECK(ok);
  }
  SUBCASE("derived constants") {
    const auto c = derive_constants(cert, 2);
    CHECK(c.c3 == std::max(cert.c1, cert.c2));
    CHECK(c.c4 == 2 * c.c3);
    CHECK(c.cn == 2 * c.c4);
  }
}

TEST_CASE("log density and phi") {
  const auto g = scenario("flat-torus", 64);
  SUBCASE("u = A gives zero") {
    const NodeArray<double> u = NodeArray<double>::Constant(g.size(), 3.0);
    CHECK(log_density(u, 3.0).abs().maxCoeff() == 0.0);
    CHECK(phi_quantity(g, log_density(u, 3.0)).abs().maxCoeff() == 0.0);
  }
  SUBCASE("u = A/e gives -1") {
    NodeArray<double> u = NodeArray<double>::Constant(g.size(), 2.0);
    u[5] = 2.0 / std::exp(1.0);
    const auto f = log_density(u, 2.0);
    CHECK(f[5] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(1 - f[5] == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("random u with A = sup u peaks at zero at the argmax") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.1, 5.0);
    NodeArray<double> u(g.size());
    for (auto& v : u) v = dist(rng);
    Eigen::Index arg = 0;
    const double A = u.maxCoeff(&arg);
    const auto f = log_density(u, A);
    CHECK(f.maxCoeff() == 0.0);
    CHECK(f[arg] == 0.0);
    CHECK((1 - f).minCoeff() >= 1.0);
  }
  SUBCASE("u above A is rejected with its node") {
    NodeArray<double> u = NodeArray<double>::Ones(g.size());
    u[11] = 1.5;
    try {
      log_density(u, 1.2);
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(e.node() == 11);
    }
  }
  SUBCASE("phi on the flat torus against analytic differentiation") {
    const double A = 3.0;
    const NodeArray<double> u = A * sampled(g.grid(), [](double x, double) { return std::exp(std::sin(x) - 1); });
    const auto f = log_density(u, A);
    const auto phi = phi_quantity(g, f);
    const auto exact = sampled(g.grid(), [](double x, double) {
      return std::cos(x) * std::cos(x) / ((2 - std::sin(x)) * (2 - std::sin(x)));
    });
    const double h = 2 * kPi / 64;
    CHECK((phi - exact).abs().maxCoeff() <= h * h);
    const NodeArray<double> gf = phi * (1 - f).square();
    CHECK((phi <= gf + 1e-15).all());
  }
}

TEST_CASE("harnack quantity") {
  SUBCASE("spatially constant decay gives t alpha lambda") {
    const auto g = scenario("round-sphere", 32, 1.0);
    const NodeArray<double> u0 = NodeArray<double>::Ones(g.size());
    const auto traj = solve_conjugate_heat(g, config(FlowDirection::Static, 1.0, 1e-3), u0);
    const auto ut = log_time_derivative(traj);
    const double lambda = 2.0;
    for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
      const auto G = harnack_quantity(traj.samples[i].metric, *traj.samples[i].u, ut[i], 1.5, traj.samples[i].t);
      CHECK((G - traj.samples[i].t * 1.5 * lambda).abs().maxCoeff() <= 1e-3);
    }
  }
  SUBCASE("constant data has exactly zero time derivative") {
    const auto traj = flat_torus_heat([](double, double) { return 2.5; }, 32);
    for (const auto& d : log_time_derivative(traj)) CHECK(d.abs().maxCoeff() == 0.0);
  }
  SUBCASE("flat torus Fourier mode at x = pi/2, t = 1") {
    const auto traj = flat_torus_heat([](double x, double) { return 2 + std::sin(x); }, 64);
    const auto ut = log_time_derivative(traj);
    const auto& last = traj.samples.back();
    REQUIRE(last.t == 1.0);
    const int node = traj.grid().index(16, 0);
    REQUIRE(traj.grid().position(node).first == doctest::Approx(kPi / 2));
    const auto G = harnack_quantity(last.metric, *last.u, ut.back(), 1.0, 1.0);
    const double e = std::exp(-1.0);
    const double oracle = 1.0 * (std::exp(-2.0) * 0.0 / ((2 + e) * (2 + e)) + e / (2 + e));
    const double h = 2 * kPi / 64;
    const double dt = 0.01;
    CHECK(std::abs(G[node] - oracle) <= h * h + dt * dt);
  }
  SUBCASE("chain-rule identity and alpha scaling") {
    const auto traj = flat_torus_heat([](double x, double y) { return 2 + std::sin(x) * std::cos(y); }, 32);
    const auto ut = log_time_derivative(traj);
    for (std::size_t i = 1; i < traj.size(); i += 17) {
      const auto& s = traj.samples[i];
      const auto G1 = harnack_quantity(s.metric, *s.u, ut[i], 1.0, s.t);
      const auto G2 = harnack_quantity(s.metric, *s.u, ut[i], 3.0, s.t);
      const NodeArray<double> direct = log_gradient_sq(s.metric, *s.u) - 3.0 * ut[i];
      CHECK((G2 / s.t - direct).abs().maxCoeff() <= 1e-12);
      CHECK((G2 - G1 + 2.0 * s.t * ut[i]).abs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("bound evaluators") {
  const auto& cert = shipped_cutoff();
  const double c1 = cert.c1, c2 = cert.c2;
  SUBCASE("backward with zero bounds") {
    const double rho = 0.7, t = 0.3, A = 2.0, u = 1.1;
    const double pre = std::pow(1 + std::log(A / u), 2);
    CHECK(bound_backward(t, {}, rho, cert, A, u) == doctest::Approx(pre * (1 / t + c2 / (rho * rho))).epsilon(1e-14));
    CHECK(bound_backward(t, {}, rho, cert, A, A) == doctest::Approx(1 / t + c2 / (rho * rho)).epsilon(1e-14));
  }
  SUBCASE("backward substitution oracle") {
    const CurvatureBounds b{0.3, 0.2, 0.05};
    const double t = 0.1, rho = kPi / 4, A = 3.0, u = 2.2;
    const double oracle = std::pow(1 + std::log(3.0 / 2.2), 2) *
                          (10.0 + c2 * 0.3 + 0.8 + 0.1 + (rho * c1 * std::sqrt(0.2) + c2) / (rho * rho));
    CHECK(bound_backward(t, b, rho, cert, A, u) == doctest::Approx(oracle).epsilon(1e-12));
    const double variant = std::pow(1 + std::log(3.0 / 2.2), 2) *
                           (10.0 + c2 * 0.3 + 0.8 + 0.05 + std::sqrt(0.05) + (rho * c1 * std::sqrt(0.2) + c2) / (rho * rho));
    CHECK(bound_backward_proof_variant(t, b, rho, cert, A, u) == doctest::Approx(variant).epsilon(1e-12));
  }
  SUBCASE("forward") {
    CHECK(bound_forward(0.5, 0, 0, 1.3, cert, 2, 2) == doctest::Approx(2 + c2 / 1.69).epsilon(1e-14));
    const double a = bound_forward(0.5, 0, 0, 1.0, cert, 2, 2) - 2;
    const double b = bound_forward(0.5, 0, 0, 2.0, cert, 2, 2) - 2;
    CHECK(b == doctest::Approx(a / 4).epsilon(1e-14));
    const double oracle = std::pow(1 + std::log(2.0), 2) * (1 / 0.2 + c2 * 0.4 + 2 * 0.1 + c2 / 4.0);
    CHECK(bound_forward(0.2, 0.4, 0.1, 2.0, cert, 2.0, 1.0) == doctest::Approx(oracle).epsilon(1e-12));
  }
  SUBCASE("local forward") {
    const double c = 1.7, rho = 1.3, t = 0.4;
    CHECK(bound_local_forward(t, {}, rho, 2, 4, 4, c, 2) ==
          doctest::Approx(4 / t + c * 4 * (16 / (rho * rho) + 1 / t)).epsilon(1e-14));
    const CurvatureBounds b{0.0, 0.5, 0.0};
    const double with = bound_local_forward(t, b, rho, 2, 4, 4, c, 2);
    const double without = bound_local_forward(t, {}, rho, 2, 4, 4, c, 2);
    CHECK(with - without == doctest::Approx(c * 4 * 0.5 + 2 * 0.5 * 4).epsilon(1e-12));
    const double cn4 = 2 * 2 * std::max(c1, c2);
    CHECK(bound_local_forward(1.0, {}, 1.0, 2, 4, 4, cn4, 2) == doctest::Approx(4 + cn4 * 4 * 17).epsilon(1e-14));
  }
  SUBCASE("global forward") {
    CHECK(bound_global_forward(1, 0, 0, 2, 4, 4, 2) == doctest::Approx(4.0));
    CHECK(bound_global_nonnegative(0.5, 0.3, 1, 2, 2, 2) == doctest::Approx(1 / 0.5 + 2 * 0.3).epsilon(1e-14));
    CHECK(bound_global_forward(0.3, 0.2, 0.7, 2, 3, 6, 2) ==
          doctest::Approx(2 * 2 * 3 / 1.2 + 4 * 2 * 3 * 0.2 / 2 + 2 * 0.9 * std::sqrt(18.0)).epsilon(1e-12));
  }
  SUBCASE("alpha one") {
    CHECK(bound_alpha_one(1, 0, 2) == 1.0);
    CHECK(bound_alpha_one(0.5, 1, 2) == 4.0);
  }
  SUBCASE("corollaries") {
    CHECK(bound_gradient_sup(2.0, 0.5, 3.0, 10.0) == doctest::Approx(60.0));
    CHECK(bound_harnack_corollary(1.0, 0.5, 0.5, 2, 4, 2, 10.0) == doctest::Approx(4 + 40.0));
  }
  SUBCASE("parameter errors") {
    CHECK_THROWS_AS(bound_local_forward(1, {}, 1, 1.0, 2, 2, 1, 2), ConfigError);
    CHECK_THROWS_AS(bound_global_forward(1, 0, 0, 1.0, 2, 2, 2), ConfigError);
    CHECK_NOTHROW(bound_global_nonnegative(1, 0, 1.0, 2, 2, 2));
    try {
      bound_global_forward(1, 0, 0, 2, 3, 5, 2);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("alpha-p-q") != std::string::npos);
    }
  }
  SUBCASE("monotone in t and in each curvature scale") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.01, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double t = d(rng), dt = d(rng), r1 = d(rng), r2 = d(rng), r3 = d(rng), dr = d(rng);
      const double rho = d(rng) + 0.5, A = 3, u = 1;
      const CurvatureBounds b{r1, r2, r3};
      auto all = [&](double tt, const CurvatureBounds& bb) {
        return std::vector<double>{bound_backward(tt, bb, rho, cert, A, u),
                                   bound_forward(tt, bb.rho1, bb.rho3, rho, cert, A, u),
                                   bound_local_forward(tt, bb, rho, 2, 4, 4, 1.3, 2),
                                   bound_global_forward(tt, bb.rho1, bb.rho2, 2, 4, 4, 2),
                                   bound_global_nonnegative(tt, bb.rho2, 2, 4, 4, 2),
                                   bound_alpha_one(tt, bb.rho2, 2),
                                   bound_harnack_corollary(tt, bb.rho1, bb.rho2, 2, 4, 2, 5.0)};
      };
      const auto base = all(t, b);
      const auto later = all(t + dt, b);
      const auto up1 = all(t, {r1 + dr, r2, r3});
      const auto up2 = all(t, {r1, r2 + dr, r3});
      const auto up3 = all(t, {r1, r2, r3 + dr});
      for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(later[i] <= base[i]);
        CHECK(up1[i] >= base[i]);
        CHECK(up2[i] >= base[i]);
        CHECK(up3[i] >= base[i]);
      }
    }
  }
}

TEST_CASE("verify on the static unit sphere") {
  const auto traj = static_sphere_heat();
  SUBCASE("li-yau holds with rho = 1") {
    EstimateParams p;
    p.t_min = 0.05;
    const auto rep = verify(traj, Theorem::LiYau, p);
    CHECK(rep.status == EstimateStatus::Holds);
    CHECK(rep.rho == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.worst.margin() >= -1e-6);
    CHECK(rep.sample_times.front() >= 0.05);
    CHECK(rep.admissible == rep.sample_times.size() * 64);
  }
  SUBCASE("fault injection pinpoints the corrupted node") {
    FlowTrajectory bad = traj;
    const int node = 20;
    const std::size_t sample = 50;
    (*bad.samples[sample].u)[node] *= 1.1;
    EstimateParams p;
    p.t_min = 0.05;
    const auto rep = verify(bad, Theorem::LiYau, p);
    REQUIRE(rep.status == EstimateStatus::Violated);
    CHECK(rep.worst.node == node);
    CHECK(std::abs(rep.worst.sample - static_cast<int>(sample)) <= 1);
    for (const auto& v : rep.violations) CHECK(std::abs(v.node - node) <= 1);
  }
  SUBCASE("global and corollary theorems hold") {
    EstimateParams p;
    p.t_min = 0.05;
    for (Theorem t : {Theorem::HarnackGlobal, Theorem::HarnackCorollary, Theorem::GradientSup}) {
      const auto rep = verify(traj, t, p);
      INFO(to_string(t));
      CHECK(rep.status == EstimateStatus::Holds);
    }
    p.rho = 1.0;
    p.alpha = 1.0;
    p.p = 2.0;
    p.q = 2.0;
    CHECK(verify(traj, Theorem::HarnackGlobal, p).status == EstimateStatus::Holds);
  }
  SUBCASE("harnack-local holds on the cube") {
    EstimateParams p;
    p.t_min = 0.05;
    const auto rep = verify(traj, Theorem::HarnackLocal, p);
    CHECK(rep.status == EstimateStatus::Holds);
    CHECK(rep.cube_radius == doctest::Approx(rep.diameter / 4));
    CHECK(rep.distance_method == "radial-quadrature");
    CHECK(rep.admissible < rep.sample_times.size() * 64);
  }
  SUBCASE("log-gradient theorems are gated on the flow direction") {
    const auto rep = verify(traj, Theorem::LogGradientBackward, {});
    CHECK(rep.status == EstimateStatus::HypothesisViolated);
    CHECK(rep.failed_hypothesis.find("flow-direction-backward") == 0);
    CHECK(rep.violations.empty());
  }
  SUBCASE("supplied rho below the observed Ricci") {
    EstimateParams p;
    p.rho = 0.5;
    const auto rep = verify(traj, Theorem::LiYau, p);
    CHECK(rep.status == EstimateStatus::HypothesisViolated);
    CHECK(rep.failed_hypothesis.find("ricci-upper") == 0);
  }
  SUBCASE("hypothesis failure wins over a corrupted conclusion") {
    FlowTrajectory bad = traj;
    (*bad.samples[50].u)[20] *= 1.5;
    EstimateParams p;
    p.rho = 0.5;
    CHECK(verify(bad, Theorem::LiYau, p).status == EstimateStatus::HypothesisViolated);
  }
  SUBCASE("no admissible times") {
    EstimateParams p;
    p.t_min = 2.0;
    CHECK_THROWS_AS(verify(traj, Theorem::LiYau, p), ConfigError);
  }
  SUBCASE("bit-stable across thread counts") {
    EstimateParams p;
    p.t_min = 0.05;
    setenv("NULLFLOW_THREADS", "1", 1);
    const auto a = verify(traj, Theorem::HarnackLocal, p);
    setenv("NULLFLOW_THREADS", "4", 1);
    const auto b = verify(traj, Theorem::HarnackLocal, p);
    unsetenv("NULLFLOW_THREADS");
    CHECK(a.sample_min_margin == b.sample_min_margin);
    CHECK(a.worst.node == b.worst.node);
    CHECK(a.quantiles.q50 == b.quantiles.q50);
  }
}

TEST_CASE("verify on the flat torus") {
  SUBCASE("classical li-yau with the exact Fourier mode") {
    const auto traj = flat_torus_heat([](double x, double) { return 2 + std::sin(x); });
    const auto rep = verify(traj, Theorem::LiYau, {});
    CHECK(rep.status == EstimateStatus::Holds);
    CHECK(rep.rho == 0.0);
    CHECK(rep.worst.margin() >= -1e-6);
  }
  SUBCASE("constant data: LHS is zero and the margin is n/(2t)") {
    const auto traj = flat_torus_heat([](double, double) { return 1.7; }, 32);
    const auto rep = verify(traj, Theorem::LiYau, {});
    CHECK(rep.status == EstimateStatus::Holds);
    CHECK(rep.max_lhs == 0.0);
    for (std::size_t j = 0; j < rep.sample_times.size(); ++j) {
      CHECK(rep.sample_min_margin[j] == 2 / (2 * rep.sample_times[j]));
    }
  }
  SUBCASE("harnack-local at t = 1 against substitution") {
    const auto traj = flat_torus_heat([](double x, double) { return 2 + std::sin(x); }, 32);
    EstimateParams p;
    p.cube_radius = 1.0;
    const auto rep = verify(traj, Theorem::HarnackLocal, p);
    CHECK(rep.status == EstimateStatus::Holds);
    const double c = rep.constants.c4;
    const double oracle = 2 * 2 * 4 / 4.0 + c * 4 * (4 * 4 / 1.0 + 1.0);
    CHECK(bound_local_forward(1.0, rep.bounds, 1.0, 2, 4, 4, c, 2) == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(rep.bounds.rho1 == 0.0);
    CHECK(rep.bounds.rho2 == 0.0);
  }
  SUBCASE("bump Ricci changes sign so li-yau is gated") {
    const auto g = scenario("torus-bump", 32);
    const auto u0 = sampled(g.grid(), [](double x, double) { return 2 + std::sin(x); });
    const auto traj = solve_heat(g, config(FlowDirection::Static, 0.5, 1e-3), u0);
    const auto rep = verify(traj, Theorem::LiYau, {});
    CHECK(rep.status == EstimateStatus::HypothesisViolated);
    CHECK(rep.failed_hypothesis.find("ricci-nonnegative") == 0);
  }
  SUBCASE("trajectory without heat is rejected") {
    const auto traj = run_flow(scenario("flat-torus"), config(FlowDirection::Forward, 0.1, 1e-2));
    CHECK_THROWS_AS(verify(traj, Theorem::LiYau, {}), ConfigError);
  }
}

TEST_CASE("log-gradient sweeps on the sphere") {
  const auto g = scenario("round-sphere", 64);
  const auto u0 = sampled(g.grid(), [](double th, double) { return 2 + std::cos(th); });
  SUBCASE("backward flow with conjugate heat") {
    const auto traj = solve_conjugate_heat(g, config(FlowDirection::Backward, 0.5, 1e-4), u0);
    const auto rep = verify(traj, Theorem::LogGradientBackward, {});
    CHECK(rep.status == EstimateStatus::Holds);
    double sup_u = 0;
    for (const auto& s : traj.samples) sup_u = std::max(sup_u, s.u->maxCoeff());
    CHECK(rep.A == (1 + 1e-9) * sup_u);
    CHECK(rep.bounds.rho1 == 0.0);
    CHECK(rep.bounds.rho2 == 0.0);
    CHECK(rep.bounds.rho3 == 0.0);
    CHECK(std::isfinite(rep.proof_variant_min_margin));
    const double rho = rep.cube_radius;
    const double u = 2.5;
    const double oracle =
        std::pow(1 + std::log(rep.A / u), 2) * (1 / 0.1 + (rho * rep.constants.c1 * 0.0 + rep.constants.c2) / (rho * rho));
    CHECK(bound_backward(0.1, rep.bounds, rho, shipped_cutoff(), rep.A, u) == doctest::Approx(oracle).epsilon(1e-12));
  }
  SUBCASE("forward flow with heat") {
    const auto traj = solve_heat(g, config(FlowDirection::Forward, 0.4, 1e-4), u0);
    const auto rep = verify(traj, Theorem::LogGradientForward, {});
    CHECK(rep.status == EstimateStatus::Holds);
    CHECK(rep.constants.c1 == shipped_cutoff().c1);
  }
}
