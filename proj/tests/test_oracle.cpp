#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcf/immersion.hpp"
#include "mcf/oracle.hpp"

using namespace mcf;

namespace {

double max_radius(const DiscreteImmersion& imm, int dims) {
  double r = 0.0;
  for (int v = 0; v < imm.num_vertices(); ++v)
    r = std::max(r, imm.positions.row(v).head(dims).norm());
  return r;
}

} // namespace

TEST_CASE("extinction times follow the closed-form shrinking laws") {
  ExactSolutionSpec circle{ExactKind::Sphere, 1, 1, 2, 1.0, 256, 0, 1};
  CHECK(extinction_time(circle) == doctest::Approx(0.5));
  ExactSolutionSpec sphere{ExactKind::Sphere, 2, 1, 3, 1.0, 80, 0, 1};
  CHECK(extinction_time(sphere) == doctest::Approx(0.25));
  ExactSolutionSpec cyl{ExactKind::Cylinder, 2, 1, 3, 1.0, 48, 0, 1};
  CHECK(extinction_time(cyl) == doctest::Approx(0.5));
  ExactSolutionSpec plane{ExactKind::Plane, 2, 1, 3, 1.0, 32, 0, 1};
  CHECK_THROWS_AS(extinction_time(plane), Error);
}

TEST_CASE("make_exact evolves the radius by R(t) = sqrt(R0^2 - 2nt)") {
  ExactSolutionSpec circle{ExactKind::Sphere, 1, 1, 2, 1.0, 64, 0, 1};
  DiscreteImmersion imm = make_exact(circle, 0.375);
  CHECK(max_radius(imm, 2) == doctest::Approx(0.5).epsilon(1e-12));

  ExactSolutionSpec sphere{ExactKind::Sphere, 2, 1, 3, 1.0, 80, 0, 1};
  DiscreteImmersion seed = make_exact(sphere, 0.0);
  CHECK(max_radius(seed, 3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(seed.num_vertices() == 2562); // icosphere level 4

  ExactSolutionSpec cyl{ExactKind::Cylinder, 2, 1, 3, 1.0, 48, 0, 1};
  DiscreteImmersion tube = make_exact(cyl, 0.25);
  CHECK(max_radius(tube, 2) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  CHECK_THROWS_AS(make_exact(circle, 0.5), Error);
  ExactSolutionSpec bad_m{ExactKind::Cylinder, 2, 2, 4, 1.0, 48, 0, 1};
  CHECK_THROWS_AS(make_exact(bad_m, 0.0), Error);
}

TEST_CASE("shrinker_at matches the S^n(sqrt n) normalization at s = -1/2") {
  ExactSolutionSpec sphere{ExactKind::Sphere, 2, 1, 3, 1.0, 80, 0, 1};
  CHECK(max_radius(shrinker_at(sphere, -0.5), 3) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  ExactSolutionSpec cyl{ExactKind::Cylinder, 2, 1, 3, 1.0, 48, 0, 1};
  CHECK(max_radius(shrinker_at(cyl, -0.5), 2) == doctest::Approx(1.0).epsilon(1e-12));

  ExactSolutionSpec circle{ExactKind::Sphere, 1, 1, 2, 1.0, 64, 0, 1};
  CHECK(max_radius(shrinker_at(circle, -0.5), 2) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(shrinker_at(circle, 0.0), Error);
  CHECK_THROWS_AS(shrinker_at(circle, 0.25), Error);
}

TEST_CASE("shrinker family is self-similar: F(s) = sqrt(-2s) F(-1/2)") {
  ExactSolutionSpec circle{ExactKind::Sphere, 1, 1, 3, 1.0, 64, 0, 1};
  DiscreteImmersion base = shrinker_at(circle, -0.5);
  for (double s : {-0.1, -0.7, -2.0}) {
    DiscreteImmersion at_s = shrinker_at(circle, s);
    Eigen::MatrixXd expected = std::sqrt(-2.0 * s) * base.positions;
    CHECK((at_s.positions - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("mesh builders produce valid immersions") {
  CHECK(validate(icosphere(4, 1.0)).is_closed);
  CHECK(validate(ellipse_polyline(2.0, 1.0, 256)).is_closed);
  CHECK(validate(ellipsoid_mesh(1.5, 1.0, 1.0, 3)).is_closed);
  CHECK(validate(limacon_polyline(0.5, 1.0, 256)).is_closed);

  ValidationReport cyl = validate(cylinder_mesh(1.0, 6.0, 48));
  CHECK(cyl.is_manifold);
  CHECK_FALSE(cyl.is_closed); // truncated ends

  ValidationReport plane = validate(plane_patch(2, 4.0, 0.4, 3, 1));
  CHECK(plane.is_manifold);

  ValidationReport line = validate(plane_patch(1, 4.0, 0.25, 2, 1));
  CHECK(line.is_manifold);
}

TEST_CASE("perturbation is deterministic in the seed") {
  DiscreteImmersion a = perturbed(icosphere(2, 1.0), 0.01, 7);
  DiscreteImmersion b = perturbed(icosphere(2, 1.0), 0.01, 7);
  DiscreteImmersion c = perturbed(icosphere(2, 1.0), 0.01, 8);
  CHECK((a.positions - b.positions).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.positions - c.positions).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("dumbbell profile closes at both poles with the stated radii") {
  auto profile = dumbbell_profile(1.0, 0.35, 1.0, 240);
  CHECK(profile.front()[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(profile.back()[1] == doctest::Approx(0.0).epsilon(1e-12));
  double neck_min = 1e300, rmax = 0.0;
  for (size_t i = 1; i + 1 < profile.size(); ++i) {
    rmax = std::max(rmax, profile[i][1]);
    if (std::abs(profile[i][0]) <= 1.0) neck_min = std::min(neck_min, profile[i][1]);
  }
  CHECK(rmax == doctest::Approx(1.0).epsilon(0.02));
  CHECK(neck_min == doctest::Approx(0.35).epsilon(0.02));
}
