#include "mcf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace mcf {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXd embed(const Eigen::MatrixXd& pts, int N) {
  if (pts.cols() == N) return pts;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(pts.rows(), N);
  out.leftCols(pts.cols()) = pts;
  return out;
}

int icosphere_level_for_resolution(int resolution) {
  // resolution is roughly the vertex count along a great circle; one
  // subdivision level doubles it (level L has ~5*2^L equatorial vertices).
  double level = std::log2(std::max(resolution, 8) / 5.0);
  return std::clamp(static_cast<int>(std::lround(level)), 0, 8);
}

double smootherstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

} // namespace

DiscreteImmersion circle_polyline(int count, double radius, int N) {
  DiscreteImmersion imm;
  imm.ambient_dim = N;
  imm.intrinsic_dim = 1;
  imm.closed = true;
  Eigen::MatrixXd pts(count, 2);
  for (int i = 0; i < count; ++i) {
    double phi = 2.0 * kPi * i / count;
    pts(i, 0) = radius * std::cos(phi);
    pts(i, 1) = radius * std::sin(phi);
  }
  imm.positions = embed(pts, N);
  imm.cells.resize(count, 2);
  for (int i = 0; i < count; ++i) {
    imm.cells(i, 0) = i;
    imm.cells(i, 1) = (i + 1) % count;
  }
  return imm;
}

DiscreteImmersion ellipse_polyline(double a, double b, int count, int N) {
  DiscreteImmersion imm = circle_polyline(count, 1.0, N);
  imm.positions.col(0) *= a;
  imm.positions.col(1) *= b;
  return imm;
}

DiscreteImmersion limacon_polyline(double base, double loop, int count, int N) {
  DiscreteImmersion imm;
  imm.ambient_dim = N;
  imm.intrinsic_dim = 1;
  imm.closed = true;
  Eigen::MatrixXd pts(count, 2);
  for (int i = 0; i < count; ++i) {
    double phi = 2.0 * kPi * i / count;
    double r = base + loop * std::cos(phi);
    pts(i, 0) = r * std::cos(phi);
    pts(i, 1) = r * std::sin(phi);
  }
  imm.positions = embed(pts, N);
  imm.cells.resize(count, 2);
  for (int i = 0; i < count; ++i) {
    imm.cells(i, 0) = i;
    imm.cells(i, 1) = (i + 1) % count;
  }
  return imm;
}

DiscreteImmersion icosphere(int level, double radius, int N) {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::RowVector3d> verts = {
      {-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0},
      {0, -1, p}, {0, 1, p}, {0, -1, -p}, {0, 1, -p},
      {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (auto& v : verts) v.normalize();

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::RowVector3d m = (verts[a] + verts[b]).normalized();
      verts.push_back(m);
      int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  DiscreteImmersion imm;
  imm.ambient_dim = N;
  imm.intrinsic_dim = 2;
  imm.closed = true;
  Eigen::MatrixXd pts(verts.size(), 3);
  for (size_t i = 0; i < verts.size(); ++i) pts.row(i) = radius * verts[i];
  imm.positions = embed(pts, N);
  imm.cells.resize(faces.size(), 3);
  for (size_t f = 0; f < faces.size(); ++f)
    for (int a = 0; a < 3; ++a) imm.cells(f, a) = faces[f][a];
  return imm;
}

DiscreteImmersion ellipsoid_mesh(double a, double b, double c, int level, int N) {
  DiscreteImmersion imm = icosphere(level, 1.0, N);
  imm.positions.col(0) *= a;
  imm.positions.col(1) *= b;
  imm.positions.col(2) *= c;
  return imm;
}

DiscreteImmersion cylinder_mesh(double radius, double half_length, int azimuthal,
                                int N) {
  const int mphi = std::max(azimuthal, 8);
  const double target = 2.0 * kPi * radius / mphi;
  const int mz = std::max(2, static_cast<int>(std::lround(2.0 * half_length / target)));
  const double dz = 2.0 * half_length / mz;

  DiscreteImmersion imm;
  imm.ambient_dim = N;
  imm.intrinsic_dim = 2;
  imm.closed = false; // truncated: open at both ends
  Eigen::MatrixXd pts((mz + 1) * mphi, 3);
  for (int j = 0; j <= mz; ++j)
    for (int i = 0; i < mphi; ++i) {
      double phi = 2.0 * kPi * i / mphi;
      pts.row(j * mphi + i) << radius * std::cos(phi), radius * std::sin(phi),
          -half_length + j * dz;
    }
  imm.positions = embed(pts, N);
  imm.cells.resize(2 * mz * mphi, 3);
  int f = 0;
  for (int j = 0; j < mz; ++j)
    for (int i = 0; i < mphi; ++i) {
      int i1 = (i + 1) % mphi;
      int v00 = j * mphi + i, v10 = j * mphi + i1;
      int v01 = (j + 1) * mphi + i, v11 = (j + 1) * mphi + i1;
      imm.cells.row(f++) << v00, v10, v11;
      imm.cells.row(f++) << v00, v11, v01;
    }
  return imm;
}

DiscreteImmersion plane_patch(int n, double radius, double spacing, int N,
                              int multiplicity) {
  DiscreteImmersion sheet;
  sheet.ambient_dim = N;
  sheet.intrinsic_dim = n;
  sheet.closed = false;
  const int K = static_cast<int>(std::ceil(radius / spacing));
  if (n == 1) {
    int count = 2 * K + 1;
    Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(count, 1);
    for (int i = -K; i <= K; ++i) pts(i + K, 0) = i * spacing;
    sheet.positions = embed(pts, N);
    sheet.cells.resize(count - 1, 2);
    for (int i = 0; i + 1 < count; ++i) sheet.cells.row(i) << i, i + 1;
  } else {
    // uniform grid clipped to the disk; interior vertex weights are then
    // exactly trapezoidal, which the Gaussian quadrature relies on
    std::map<std::pair<int, int>, int> index;
    std::vector<Eigen::RowVector2d> pts;
    const double keep = radius + 0.25 * spacing;
    for (int i = -K; i <= K; ++i)
      for (int j = -K; j <= K; ++j) {
        Eigen::RowVector2d p(i * spacing, j * spacing);
        if (p.norm() <= keep) {
          index[{i, j}] = static_cast<int>(pts.size());
          pts.push_back(p);
        }
      }
    std::vector<std::array<int, 3>> faces;
    for (int i = -K; i < K; ++i)
      for (int j = -K; j < K; ++j) {
        auto v00 = index.find({i, j}), v10 = index.find({i + 1, j});
        auto v01 = index.find({i, j + 1}), v11 = index.find({i + 1, j + 1});
        if (v00 == index.end() || v10 == index.end() || v01 == index.end() ||
            v11 == index.end())
          continue;
        faces.push_back({v00->second, v10->second, v11->second});
        faces.push_back({v00->second, v11->second, v01->second});
      }
    Eigen::MatrixXd P(pts.size(), 2);
    for (size_t i = 0; i < pts.size(); ++i) P.row(i) = pts[i];
    sheet.positions = embed(P, N);
    sheet.cells.resize(faces.size(), 3);
    for (size_t f = 0; f < faces.size(); ++f)
      for (int a = 0; a < 3; ++a) sheet.cells(f, a) = faces[f][a];
  }

  if (multiplicity <= 1) return sheet;
  DiscreteImmersion imm = sheet;
  const int V = sheet.num_vertices(), C = sheet.num_cells();
  imm.positions.conservativeResize(V * multiplicity, Eigen::NoChange);
  imm.cells.conservativeResize(C * multiplicity, Eigen::NoChange);
  for (int copy = 1; copy < multiplicity; ++copy) {
    imm.positions.middleRows(copy * V, V) = sheet.positions;
    imm.cells.middleRows(copy * C, C) = sheet.cells.array() + copy * V;
  }
  return imm;
}

DiscreteImmersion perturbed(const DiscreteImmersion& imm, double amplitude,
                            std::uint64_t seed) {
  DiscreteImmersion out = imm;
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return (rng() >> 11) * 0x1.0p-53; };
  // Box-Muller, fixed evaluation order for reproducibility
  auto gauss = [&] {
    double u1 = std::max(uniform(), 1e-300), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };
  for (int v = 0; v < out.num_vertices(); ++v)
    for (int d = 0; d < out.ambient_dim; ++d)
      out.positions(v, d) += amplitude * gauss();
  return out;
}

DiscreteImmersion scaled_translated(const DiscreteImmersion& imm, double scale,
                                    const Eigen::RowVectorXd& offset) {
  DiscreteImmersion out = imm;
  out.positions *= scale;
  out.positions.rowwise() += offset;
  return out;
}

double extinction_time(const ExactSolutionSpec& spec) {
  switch (spec.kind) {
    case ExactKind::Sphere:
      return spec.radius0 * spec.radius0 / (2.0 * spec.n);
    case ExactKind::Cylinder:
      return spec.radius0 * spec.radius0 / (2.0 * spec.m);
    case ExactKind::Plane:
      throw Error("plane is stationary: no extinction time");
  }
  throw Error("unreachable");
}

DiscreteImmersion make_exact(const ExactSolutionSpec& spec, double t) {
  if (spec.N < spec.n + 1) throw Error("ambient dimension must be at least n+1");
  switch (spec.kind) {
    case ExactKind::Sphere: {
      if (t >= extinction_time(spec)) throw Error("time is beyond extinction");
      double r = std::sqrt(spec.radius0 * spec.radius0 - 2.0 * spec.n * t);
      if (spec.n == 1) return circle_polyline(spec.resolution, r, spec.N);
      return icosphere(icosphere_level_for_resolution(spec.resolution), r, spec.N);
    }
    case ExactKind::Cylinder: {
      if (spec.n != 2 || spec.m < 1 || spec.m > spec.n - 1)
        throw Error("cylinder spherical factor m out of range");
      if (t >= extinction_time(spec)) throw Error("time is beyond extinction");
      double r = std::sqrt(spec.radius0 * spec.radius0 - 2.0 * spec.m * t);
      double L = spec.cylinder_length > 0 ? spec.cylinder_length : 6.0 * r;
      return cylinder_mesh(r, L, std::max(spec.resolution / 2, 16), spec.N);
    }
    case ExactKind::Plane: {
      double spacing = 2.0 * kPi * spec.radius0 / std::max(spec.resolution, 8);
      return plane_patch(spec.n, spec.radius0, spacing, spec.N, spec.multiplicity);
    }
  }
  throw Error("unreachable");
}

DiscreteImmersion shrinker_at(const ExactSolutionSpec& spec, double s) {
  if (s >= 0.0) throw Error("shrinker is defined for backward time s < 0");
  switch (spec.kind) {
    case ExactKind::Sphere: {
      double r = std::sqrt(-2.0 * spec.n * s);
      if (spec.n == 1) return circle_polyline(spec.resolution, r, spec.N);
      return icosphere(icosphere_level_for_resolution(spec.resolution), r, spec.N);
    }
    case ExactKind::Cylinder: {
      if (spec.n != 2 || spec.m < 1 || spec.m > spec.n - 1)
        throw Error("cylinder spherical factor m out of range");
      double r = std::sqrt(-2.0 * spec.m * s);
      double L = spec.cylinder_length > 0 ? spec.cylinder_length : 6.0 * r;
      return cylinder_mesh(r, L, std::max(spec.resolution / 2, 16), spec.N);
    }
    case ExactKind::Plane: {
      double spacing = 2.0 * kPi * spec.radius0 / std::max(spec.resolution, 8);
      return plane_patch(spec.n, spec.radius0, spacing, spec.N, spec.multiplicity);
    }
  }
  throw Error("unreachable");
}

std::vector<std::array<double, 2>> dumbbell_profile(double bulb_radius,
                                                    double neck_radius,
                                                    double neck_half_length,
                                                    int samples) {
  // Neck r = neck_radius on |x| <= Ln, smootherstep blend up to the bulb
  // equator at |x| = c, hemispherical caps beyond. C^2 at all joints.
  const double R = bulb_radius;
  const double Ln = neck_half_length;
  const double w = R; // blend width
  const double c = Ln + w;
  auto radius_at = [&](double ax) {
    if (ax <= Ln) return neck_radius;
    double u = (ax - Ln) / w;
    return neck_radius + (R - neck_radius) * smootherstep(u);
  };

  const double arc_mid = 2.0 * c;          // rough flat part, both sides
  const double arc_caps = kPi * R;         // two quarter... two half arcs
  const double total = arc_mid + arc_caps;
  const int mid_pts = std::max(8, static_cast<int>(std::lround(samples * arc_mid / total)));
  const int cap_pts = std::max(8, (samples - mid_pts) / 2);

  std::vector<std::array<double, 2>> profile;
  // left cap, from pole (x = -(c+R), r = 0) to equator (x = -c, r = R)
  for (int i = 0; i <= cap_pts; ++i) {
    double theta = 0.5 * kPi * i / cap_pts; // 0 at pole
    profile.push_back({-c - R * std::cos(theta), R * std::sin(theta)});
  }
  // middle, exclusive of both equators
  for (int i = 1; i < mid_pts; ++i) {
    double x = -c + 2.0 * c * i / mid_pts;
    profile.push_back({x, radius_at(std::abs(x))});
  }
  // right cap, equator to pole
  for (int i = 0; i <= cap_pts; ++i) {
    double theta = 0.5 * kPi * (1.0 - static_cast<double>(i) / cap_pts);
    profile.push_back({c + R * std::cos(theta), R * std::sin(theta)});
  }
  return profile;
}

} // namespace mcf
