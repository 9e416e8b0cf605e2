#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mcf/flow.hpp"
#include "mcf/oracle.hpp"

using namespace mcf;

namespace {

double mean_radius(const DiscreteImmersion& imm, int dims) {
  double acc = 0.0;
  for (int v = 0; v < imm.num_vertices(); ++v)
    acc += imm.positions.row(v).head(dims).norm();
  return acc / imm.num_vertices();
}

} // namespace

TEST_CASE("a flat patch is stationary under an explicit Euler step") {
  DiscreteImmersion plane = plane_patch(2, 2.0, 0.25, 3, 1);
  DiscreteImmersion stepped = step(plane, 1e-3, Integrator::ExplicitEuler);
  CHECK((stepped.positions - plane.positions).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("euler step shrinks the unit circle by dt within 1e-7") {
  DiscreteImmersion circle = circle_polyline(256, 1.0);
  DiscreteImmersion stepped = step(circle, 1e-4, Integrator::ExplicitEuler);
  CHECK(mean_radius(stepped, 2) == doctest::Approx(1.0 - 1e-4).epsilon(1e-7));
}

TEST_CASE("euler step shrinks the unit sphere by 2 dt within 1e-6") {
  DiscreteImmersion sphere = icosphere(4, 1.0);
  DiscreteImmersion stepped = step(sphere, 1e-4, Integrator::ExplicitEuler);
  CHECK(std::abs(mean_radius(stepped, 3) - (1.0 - 2e-4)) < 1e-6);
}

TEST_CASE("semi-implicit step matches the circle law to first order") {
  DiscreteImmersion circle = circle_polyline(256, 1.0);
  DiscreteImmersion stepped = step(circle, 1e-4, Integrator::SemiImplicit);
  CHECK(mean_radius(stepped, 2) == doctest::Approx(1.0 - 1e-4).epsilon(1e-6));
}

TEST_CASE("step rejects nonpositive dt") {
  CHECK_THROWS_AS(step(circle_polyline(16, 1.0), 0.0, Integrator::ExplicitEuler),
                  Error);
}

TEST_CASE("run requires a closed immersion") {
  FlowConfig cfg;
  CHECK_THROWS_AS(run(plane_patch(2, 1.0, 0.25, 3, 1), cfg), Error);
}

TEST_CASE("circle trajectory reaches extinction at T = 1/2 within 1%") {
  FlowConfig cfg;
  cfg.dt_safety = 0.01;
  cfg.stop_curvature = 1e4;
  cfg.record_every = 8;
  FlowTrajectory traj = run(circle_polyline(256, 1.0), cfg);
  CHECK_FALSE(traj.failed);
  CHECK(traj.final_time() == doctest::Approx(0.5).epsilon(0.01));
  // measure decreases strictly
  for (size_t k = 1; k < traj.trace.size(); ++k)
    CHECK(traj.trace[k].total_measure < traj.trace[k - 1].total_measure);

  SingularityReport report = estimate_singular_time(traj);
  CHECK(report.T_hat == doctest::Approx(0.5).epsilon(0.01));
  CHECK(report.T_hat >= 0.495);
  CHECK(report.T_hat <= 0.505);
  CHECK(report.C0_hat >= 0.98);
  CHECK(report.C0_hat <= 1.05);
  CHECK(report.type_verdict == TypeVerdict::TypeI);
  // lower blow-up bound over the fitted window
  for (auto& [t, r] : report.ratio_trend) CHECK(r >= 0.95);
}

TEST_CASE("small sphere trajectory reaches T = R^2/4 within 2%") {
  FlowConfig cfg;
  cfg.dt_safety = 0.01;
  cfg.stop_curvature = 2e3;
  cfg.record_every = 16;
  FlowTrajectory traj = run(icosphere(3, 1.0), cfg);
  CHECK(traj.final_time() == doctest::Approx(0.25).epsilon(0.02));
  SingularityReport report = estimate_singular_time(traj);
  CHECK(report.T_hat == doctest::Approx(0.25).epsilon(0.01));
  CHECK(report.type_verdict == TypeVerdict::TypeI);
}

TEST_CASE("ellipse trace keeps the curve identity |h|^2 = |H|^2") {
  FlowConfig cfg;
  cfg.dt_safety = 0.02;
  cfg.stop_curvature = 100.0;
  FlowTrajectory traj = run(ellipse_polyline(2.0, 1.0, 200), cfg);
  for (const auto& row : traj.trace)
    CHECK(row.max_ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a barely evolving trajectory cannot be fitted") {
  FlowConfig cfg;
  cfg.dt_safety = 0.01;
  cfg.t_max = 1e-3;
  FlowTrajectory traj = run(circle_polyline(64, 10.0), cfg);
  CHECK_THROWS_AS(estimate_singular_time(traj), NumericalError);
}

TEST_CASE("embeddedness gap of the unit circle is the strip-width chord") {
  DiscreteImmersion circle = circle_polyline(256, 1.0);
  GeometrySnapshot geom = compute_geometry(circle);
  double gap = embeddedness_gap(circle, geom);
  CHECK(gap == doctest::Approx(2.0 * std::sin(0.25)).epsilon(0.01));
}

TEST_CASE("coincident circles have zero embeddedness gap") {
  DiscreteImmersion one = circle_polyline(64, 1.0);
  DiscreteImmersion two = one;
  two.positions.conservativeResize(128, Eigen::NoChange);
  two.positions.bottomRows(64) = one.positions;
  two.cells.conservativeResize(128, Eigen::NoChange);
  two.cells.bottomRows(64) = one.cells.array() + 64;
  GeometrySnapshot geom = compute_geometry(two);
  CHECK(embeddedness_gap(two, geom) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("icosphere embeddedness gap is positive") {
  DiscreteImmersion sphere = icosphere(3, 1.0);
  GeometrySnapshot geom = compute_geometry(sphere);
  CHECK(embeddedness_gap(sphere, geom) > 0.1);
}

TEST_CASE("normalized flow fixes the circle") {
  FlowConfig cfg;
  cfg.dt_safety = 0.02;
  cfg.t_max = 0.5;
  DiscreteImmersion circle = circle_polyline(128, 1.0);
  FlowTrajectory traj = normalized_run(circle, cfg);
  CHECK_FALSE(traj.failed);
  const DiscreteImmersion& last = traj.final_state();
  CHECK((last.positions - circle.positions).cwiseAbs().maxCoeff() < 1e-10);
  for (const auto& row : traj.trace) {
    CHECK(row.max_traceless_sq == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(row.total_measure == doctest::Approx(traj.trace[0].total_measure));
  }
}

TEST_CASE("normalized ellipse rounds out: measure fixed, gradient decays") {
  FlowConfig cfg;
  cfg.dt_safety = 0.02;
  cfg.t_max = 1.5;
  FlowTrajectory traj = normalized_run(ellipse_polyline(2.0, 1.0, 128), cfg);
  CHECK_FALSE(traj.failed);
  double m0 = traj.trace.front().total_measure;
  for (const auto& row : traj.trace)
    CHECK(row.total_measure == doctest::Approx(m0).epsilon(1e-6));
  double early = traj.trace[traj.trace.size() / 4].max_grad_h_sq;
  double late = traj.trace.back().max_grad_h_sq;
  CHECK(late < 0.1 * early);
}

TEST_CASE("axisymmetric flat cylinder follows the radial shrinking law") {
  std::vector<std::array<double, 2>> profile;
  for (int i = 0; i < 64; ++i) profile.push_back({i * 0.1, 1.0});
  FlowConfig cfg;
  cfg.dt_safety = 0.01;
  cfg.t_max = 0.2;
  cfg.stop_curvature = 1e6;
  FlowTrajectory traj = axisymmetric_run(profile, 2, cfg);
  for (const auto& row : traj.trace) {
    double r_expected = std::sqrt(1.0 - 2.0 * row.t);
    double r_measured = 1.0 / std::sqrt(row.max_h_sq);
    CHECK(r_measured == doctest::Approx(r_expected).epsilon(0.01));
    CHECK(row.max_ratio == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("axisymmetric semicircle reproduces the sphere extinction time") {
  std::vector<std::array<double, 2>> profile;
  const int M = 200;
  for (int i = 0; i <= M; ++i) {
    double theta = 3.14159265358979323846 * i / M;
    profile.push_back({-std::cos(theta), std::sin(theta)});
  }
  FlowConfig cfg;
  cfg.dt_safety = 0.01;
  cfg.stop_curvature = 1e5;
  cfg.record_every = 50;
  FlowTrajectory traj = axisymmetric_run(profile, 2, cfg);
  CHECK_FALSE(traj.neck_event);
  SingularityReport report = estimate_singular_time(traj);
  CHECK(report.T_hat == doctest::Approx(0.25).epsilon(0.02));

  // recorded states are valid closed revolution meshes
  REQUIRE(!traj.states.empty());
  ValidationReport rep = validate(traj.states.front());
  CHECK(rep.is_manifold);
  CHECK(rep.is_closed);
}

TEST_CASE("axisymmetric dumbbell pinches at the neck before the bulbs vanish") {
  auto profile = dumbbell_profile(1.0, 0.35, 1.0, 240);
  FlowConfig cfg;
  cfg.dt_safety = 0.05;
  cfg.stop_curvature = 1e9;
  cfg.record_every = 40;
  FlowTrajectory traj = axisymmetric_run(profile, 2, cfg);
  CHECK(traj.neck_event);
  CHECK(std::abs(traj.neck_location) < 1.0); // inside the neck section
  // strictly before the bulb extinction time R^2/(2n) = 0.25
  CHECK(traj.neck_time < 0.25);
}

TEST_CASE("axisymmetric run rejects bad profiles") {
  FlowConfig cfg;
  std::vector<std::array<double, 2>> mixed = {{0, 0}, {1, 0.5}, {2, 0.7}, {3, 0.5}};
  CHECK_THROWS_AS(axisymmetric_run(mixed, 2, cfg), Error);
  std::vector<std::array<double, 2>> open = {{0, 0.5}, {1, 0.6}, {2, 0.8}, {3, 0.5001}};
  CHECK_THROWS_AS(axisymmetric_run(open, 2, cfg), Error);
  CHECK_THROWS_AS(axisymmetric_run(mixed, 1, cfg), Error);
}
