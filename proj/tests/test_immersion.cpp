#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "mcf/immersion.hpp"
#include "mcf/oracle.hpp"

using namespace mcf;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/mcf_test_") + name;
}

DiscreteImmersion random_closed_polyline_r4(int count, unsigned seed) {
  DiscreteImmersion imm = circle_polyline(count, 1.0, 4);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int v = 0; v < count; ++v)
    for (int d = 0; d < 4; ++d) imm.positions(v, d) += u(rng);
  return imm;
}

} // namespace

TEST_CASE("ndoff round trip is the identity on all fields") {
  DiscreteImmersion imm = random_closed_polyline_r4(37, 123);
  std::string path = temp_path("roundtrip.ndoff");
  save_immersion(imm, path);
  DiscreteImmersion back = load_immersion(path);
  CHECK(back.ambient_dim == 4);
  CHECK(back.intrinsic_dim == 1);
  REQUIRE(back.positions.rows() == imm.positions.rows());
  CHECK(back.cells == imm.cells);
  // 17 significant digits round-trip doubles exactly
  CHECK((back.positions - imm.positions).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ndoff header echoes dimensions and counts") {
  DiscreteImmersion sphere = icosphere(3, 1.0);
  std::string path = temp_path("sphere.ndoff");
  save_immersion(sphere, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "NDOFF 3 2");
  DiscreteImmersion back = load_immersion(path);
  CHECK(back.num_vertices() == 642);
  CHECK(back.num_cells() == 1280);
}

TEST_CASE("unit circle writes a 2-dimensional polyline file") {
  std::string path = temp_path("circle.ndoff");
  save_immersion(circle_polyline(64, 1.0), path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "NDOFF 2 1");
  std::getline(in, line);
  CHECK(line == "64 64");
}

TEST_CASE("vertex row with wrong coordinate count is a dimension mismatch") {
  std::string path = temp_path("badrow.ndoff");
  {
    std::ofstream out(path);
    out << "NDOFF 3 1\n2 1\n0 0\n1 0 0\n2 0 1\n";
  }
  CHECK_THROWS_AS(load_immersion(path), ParseError);
}

TEST_CASE("malformed header and bad indices are parse errors") {
  std::string path = temp_path("badheader.ndoff");
  {
    std::ofstream out(path);
    out << "OFF 3 2\n0 0\n";
  }
  CHECK_THROWS_AS(load_immersion(path), ParseError);
  {
    std::ofstream out(path);
    out << "NDOFF 2 1\n2 1\n0 0\n1 0\n2 0 7\n";
  }
  CHECK_THROWS_AS(load_immersion(path), ParseError);
  CHECK_THROWS_AS(load_immersion("/tmp/definitely_missing_file.ndoff"), IoError);
}

TEST_CASE("comments and blank lines are skipped") {
  std::string path = temp_path("comments.ndoff");
  {
    std::ofstream out(path);
    out << "# a comment\nNDOFF 2 1  # inline\n\n3 3\n0 0\n1 0\n0 1\n2 0 1\n2 1 2\n2 2 0\n";
  }
  DiscreteImmersion imm = load_immersion(path);
  CHECK(imm.num_vertices() == 3);
  CHECK(imm.closed);
}

TEST_CASE("save to an unwritable path fails cleanly") {
  CHECK_THROWS_AS(save_immersion(circle_polyline(8, 1.0), "/nonexistent_dir/x.ndoff"),
                  IoError);
}

TEST_CASE("validation accepts canonical meshes") {
  ValidationReport rep = validate(icosphere(2, 1.0));
  CHECK(rep.is_manifold);
  CHECK(rep.is_closed);
  CHECK(rep.defects.empty());
  CHECK(rep.min_cell_measure > 0.0);

  rep = validate(circle_polyline(64, 1.0));
  CHECK(rep.is_manifold);
  CHECK(rep.is_closed);
}

TEST_CASE("a triangle fan with boundary is manifold but not closed") {
  DiscreteImmersion fan;
  fan.ambient_dim = 3;
  fan.intrinsic_dim = 2;
  fan.positions.resize(5, 3);
  fan.positions << 0, 0, 0, 1, 0, 0, 0, 1, 0, -1, 0, 0, 0, -1, 0;
  fan.cells.resize(3, 3);
  fan.cells << 0, 1, 2, 0, 2, 3, 0, 3, 4;
  fan.closed = false;
  ValidationReport rep = validate(fan);
  CHECK(rep.is_manifold);
  CHECK_FALSE(rep.is_closed);
}

TEST_CASE("zero-area triangles are reported as defects") {
  DiscreteImmersion bad = icosphere(1, 1.0);
  // collapse one triangle by duplicating a vertex position
  bad.positions.row(bad.cells(0, 1)) = bad.positions.row(bad.cells(0, 0));
  ValidationReport rep = validate(bad);
  CHECK_FALSE(rep.is_manifold);
  CHECK(rep.min_cell_measure == 0.0);
  bool found = false;
  for (auto& [cell, kind] : rep.defects)
    if (kind == DefectKind::ZeroMeasure) found = true;
  CHECK(found);
}

TEST_CASE("repeated vertices and non-manifold polylines are defects") {
  DiscreteImmersion imm = circle_polyline(8, 1.0);
  imm.cells(3, 1) = imm.cells(3, 0);
  ValidationReport rep = validate(imm);
  CHECK_FALSE(rep.is_manifold);

  DiscreteImmersion tri = circle_polyline(8, 1.0);
  tri.cells.conservativeResize(9, Eigen::NoChange);
  tri.cells(8, 0) = 0;
  tri.cells(8, 1) = 4; // third edge at vertices 0 and 4
  rep = validate(tri);
  CHECK_FALSE(rep.is_manifold);
}

TEST_CASE("coincident plane sheets are disjoint manifold components") {
  DiscreteImmersion two = plane_patch(2, 1.0, 0.25, 3, 2);
  ValidationReport rep = validate(two);
  CHECK(rep.is_manifold);
  CHECK_FALSE(rep.is_closed);
}

TEST_CASE("inconsistent orientation is detected") {
  DiscreteImmersion imm = icosphere(1, 1.0);
  std::swap(imm.cells(5, 0), imm.cells(5, 1)); // flip one face
  ValidationReport rep = validate(imm);
  CHECK_FALSE(rep.is_manifold);
  bool found = false;
  for (auto& [cell, kind] : rep.defects)
    if (kind == DefectKind::InconsistentOrientation) found = true;
  CHECK(found);
}
