#include <algorithm>
#include <cmath>

#include "mcf/flow.hpp"

namespace mcf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNeckFloor = 1e-3;
constexpr long kMaxSteps = 400000;
constexpr int kMaxProfilePoints = 60000;

struct Profile {
  std::vector<double> x, r;
  bool periodic = false;

  int size() const { return static_cast<int>(x.size()); }
  bool pole(int i) const { return !periodic && (i == 0 || i == size() - 1); }
  int prev(int i) const { return periodic ? (i + size() - 1) % size() : i - 1; }
  int next(int i) const { return periodic ? (i + 1) % size() : i + 1; }
};

struct ProfileGeometry {
  std::vector<double> vx, vr, h_sq, H_sq; ///< motion vector and curvatures
  double max_h_sq = 0, min_H_sq = 0, max_ratio = 0, total_measure = 0,
         pinch_gap = 0, min_edge = 0;
};

double unit_sphere_area(int dim) { // area of S^(dim-1)
  return 2.0 * std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0);
}

ProfileGeometry profile_geometry(const Profile& P, int n, double pinch_c,
                                 double pinch_a) {
  const int M = P.size();
  ProfileGeometry G;
  G.vx.assign(M, 0.0);
  G.vr.assign(M, 0.0);
  G.h_sq.assign(M, 0.0);
  G.H_sq.assign(M, 0.0);
  G.min_H_sq = std::numeric_limits<double>::infinity();
  G.min_edge = std::numeric_limits<double>::infinity();
  G.pinch_gap = -std::numeric_limits<double>::infinity();

  for (int i = 0; i < M; ++i) {
    if (P.pole(i)) {
      // ghost reflection across the axis: the revolved cap is smooth, all
      // principal curvatures coincide there and the pole moves axially
      int j = (i == 0) ? 1 : M - 2;
      double dx = P.x[j] - P.x[i];
      double dr = P.r[j] - P.r[i];
      double l2 = dx * dx + dr * dr;
      if (!(l2 > 0.0)) throw DegenerateGeometryError(i, "collapsed profile edge");
      double kx = 2.0 * dx / l2; // curvature vector is purely axial
      G.vx[i] = n * kx;
      G.vr[i] = 0.0;
      G.h_sq[i] = n * kx * kx;
      G.H_sq[i] = n * n * kx * kx;
    } else {
      int im = P.prev(i), ip = P.next(i);
      double lxm = P.x[im] - P.x[i], lrm = P.r[im] - P.r[i];
      double lxp = P.x[ip] - P.x[i], lrp = P.r[ip] - P.r[i];
      double lm = std::hypot(lxm, lrm), lp = std::hypot(lxp, lrp);
      if (!(lm > 0.0) || !(lp > 0.0))
        throw DegenerateGeometryError(i, "collapsed profile edge");
      G.min_edge = std::min(G.min_edge, std::min(lm, lp));
      double inv = 2.0 / (lm + lp);
      double kx = inv * (lxp / lp + lxm / lm);
      double kr = inv * (lrp / lp + lrm / lm);
      // tangent from central difference, normal rotated +90 degrees
      double tx = P.x[ip] - P.x[im], tr = P.r[ip] - P.r[im];
      double tn = std::hypot(tx, tr);
      tx /= tn;
      tr /= tn;
      double nx = -tr, nr = tx;
      double ks = kx * nx + kr * nr;
      double azim = nr / P.r[i]; // rotational principal curvature
      double rot = (n - 1) * azim;
      G.vx[i] = kx - rot * nx;
      G.vr[i] = kr - rot * nr;
      G.h_sq[i] = ks * ks + (n - 1) * azim * azim;
      double Hs = ks + rot;
      G.H_sq[i] = Hs * Hs;
    }
    G.max_h_sq = std::max(G.max_h_sq, G.h_sq[i]);
    G.min_H_sq = std::min(G.min_H_sq, G.H_sq[i]);
    if (G.H_sq[i] > 1e-30)
      G.max_ratio = std::max(G.max_ratio, G.h_sq[i] / G.H_sq[i]);
    G.pinch_gap = std::max(G.pinch_gap, G.h_sq[i] + pinch_a - pinch_c * G.H_sq[i]);
  }

  const double omega = unit_sphere_area(n); // S^(n-1) factor of the revolution
  const int E = P.periodic ? M : M - 1;
  for (int e = 0; e < E; ++e) {
    int i = e, j = P.next(e);
    double l = std::hypot(P.x[j] - P.x[i], P.r[j] - P.r[i]);
    double rmean = 0.5 * (std::pow(P.r[i], n - 1) + std::pow(P.r[j], n - 1));
    G.total_measure += omega * rmean * l;
  }
  return G;
}

// Curvature-adaptive point insertion; 4-point interpolatory subdivision
// where a full stencil exists, linear midpoints otherwise.
void refine(Profile& P, const ProfileGeometry& G, double eta) {
  const int M = P.size();
  if (M >= kMaxProfilePoints) return;
  std::vector<double> nx, nr;
  nx.reserve(2 * M);
  nr.reserve(2 * M);
  const int E = P.periodic ? M : M - 1;
  for (int e = 0; e < E; ++e) {
    int i = e, j = P.next(e);
    nx.push_back(P.x[i]);
    nr.push_back(P.r[i]);
    double l = std::hypot(P.x[j] - P.x[i], P.r[j] - P.r[i]);
    double hmax = std::sqrt(std::max(G.h_sq[i], G.h_sq[j]));
    if (l * hmax > eta) {
      int i0 = P.periodic ? P.prev(i) : i - 1;
      int j1 = P.periodic ? P.next(j) : j + 1;
      double mx, mr;
      if (i0 >= 0 && j1 < M && !P.pole(i0) && !P.pole(j1)) {
        mx = (9.0 * (P.x[i] + P.x[j]) - (P.x[i0] + P.x[j1])) / 16.0;
        mr = (9.0 * (P.r[i] + P.r[j]) - (P.r[i0] + P.r[j1])) / 16.0;
      } else {
        mx = 0.5 * (P.x[i] + P.x[j]);
        mr = 0.5 * (P.r[i] + P.r[j]);
      }
      nx.push_back(mx);
      nr.push_back(std::max(mr, 0.0));
    }
  }
  if (!P.periodic) {
    nx.push_back(P.x[M - 1]);
    nr.push_back(P.r[M - 1]);
  }
  P.x = std::move(nx);
  P.r = std::move(nr);
}

DiscreteImmersion revolve(const Profile& P, int azimuthal) {
  const int M = P.size();
  const int mphi = azimuthal;
  DiscreteImmersion imm;
  imm.ambient_dim = 3;
  imm.intrinsic_dim = 2;
  imm.closed = !P.periodic;

  std::vector<int> row_start(M, -1);
  int count = 0;
  for (int i = 0; i < M; ++i) {
    row_start[i] = count;
    count += P.pole(i) ? 1 : mphi;
  }
  imm.positions.resize(count, 3);
  for (int i = 0; i < M; ++i) {
    if (P.pole(i)) {
      imm.positions.row(row_start[i]) << P.x[i], 0.0, 0.0;
    } else {
      for (int j = 0; j < mphi; ++j) {
        double phi = 2.0 * kPi * j / mphi;
        imm.positions.row(row_start[i] + j) << P.x[i], P.r[i] * std::cos(phi),
            P.r[i] * std::sin(phi);
      }
    }
  }

  std::vector<std::array<int, 3>> tris;
  const int bands = P.periodic ? M : M - 1;
  for (int i = 0; i < bands; ++i) {
    int a = i, b = P.next(i);
    if (P.pole(a)) {
      for (int j = 0; j < mphi; ++j) {
        int j1 = (j + 1) % mphi;
        tris.push_back({row_start[a], row_start[b] + j1, row_start[b] + j});
      }
    } else if (P.pole(b)) {
      for (int j = 0; j < mphi; ++j) {
        int j1 = (j + 1) % mphi;
        tris.push_back({row_start[b], row_start[a] + j, row_start[a] + j1});
      }
    } else {
      for (int j = 0; j < mphi; ++j) {
        int j1 = (j + 1) % mphi;
        int v00 = row_start[a] + j, v10 = row_start[a] + j1;
        int v01 = row_start[b] + j, v11 = row_start[b] + j1;
        tris.push_back({v00, v10, v11});
        tris.push_back({v00, v11, v01});
      }
    }
  }
  imm.cells.resize(tris.size(), 3);
  for (size_t f = 0; f < tris.size(); ++f)
    for (int a = 0; a < 3; ++a) imm.cells(f, a) = tris[f][a];
  return imm;
}

} // namespace

FlowTrajectory axisymmetric_run(const std::vector<std::array<double, 2>>& profile,
                                int n, const FlowConfig& cfg) {
  if (n < 2) throw Error("axisymmetric flow requires n >= 2");
  if (profile.size() < 4) throw Error("profile too short");

  Profile P;
  P.x.reserve(profile.size());
  P.r.reserve(profile.size());
  for (const auto& p : profile) {
    if (p[1] < -1e-12) throw Error("profile radius must be nonnegative");
    P.x.push_back(p[0]);
    P.r.push_back(std::max(p[1], 0.0));
  }
  const bool left_pole = P.r.front() < 1e-9, right_pole = P.r.back() < 1e-9;
  if (left_pole != right_pole)
    throw Error("profile must either close at both poles or be periodic");
  if (!left_pole) {
    if (std::abs(P.r.front() - P.r.back()) > 1e-12 || P.x.front() == P.x.back())
      throw Error("open profile with positive end radii must be periodic in x");
    P.periodic = true;
  } else {
    P.r.front() = 0.0;
    P.r.back() = 0.0;
  }

  const double c = cfg.pinching_c > 0.0 ? cfg.pinching_c : 4.0 / (3.0 * n);
  const int azim = 48;
  FlowTrajectory traj;
  double t = 0.0;
  bool recorded = false;

  for (long k = 0; k < kMaxSteps; ++k) {
    ProfileGeometry G;
    try {
      G = profile_geometry(P, n, c, cfg.pinching_a);
    } catch (const DegenerateGeometryError& e) {
      traj.failed = true;
      traj.failure = e.what();
      break;
    }

    // interior radius floor; a neck event is an off-center local minimum
    double rmin = std::numeric_limits<double>::infinity();
    int argmin = -1;
    for (int i = 0; i < P.size(); ++i) {
      if (P.pole(i)) continue;
      if (P.r[i] < rmin) {
        rmin = P.r[i];
        argmin = i;
      }
    }
    const bool floor_hit = rmin < kNeckFloor;
    if (floor_hit && argmin > 1 && argmin < P.size() - 2 &&
        P.r[P.prev(argmin)] >= P.r[argmin] && P.r[P.next(argmin)] >= P.r[argmin]) {
      traj.neck_event = true;
      traj.neck_location = P.x[argmin];
      traj.neck_time = t;
    }

    TraceRow row;
    row.t = t;
    row.max_h_sq = G.max_h_sq;
    row.max_ratio = G.max_ratio;
    row.min_H_sq = G.min_H_sq;
    row.total_measure = G.total_measure;
    row.pinching_gap = G.pinch_gap;
    traj.trace.push_back(row);

    const bool cadence = (k % std::max(1, cfg.record_every)) == 0;
    const bool stopping =
        floor_hit || G.max_h_sq >= cfg.stop_curvature || t >= cfg.t_max;
    recorded = false;
    if ((cadence || stopping) && n == 2) {
      traj.state_times.push_back(t);
      traj.states.push_back(revolve(P, azim));
      recorded = true;
    }
    if (stopping) break;

    double dt = cfg.dt_safety / std::max(G.max_h_sq, 1e-12);
    dt = std::min(dt, 0.3 * G.min_edge * G.min_edge); // explicit 1D stability
    if (t + dt > cfg.t_max) dt = cfg.t_max - t;
    for (int i = 0; i < P.size(); ++i) {
      P.x[i] += dt * G.vx[i];
      P.r[i] += dt * G.vr[i];
      if (!P.pole(i) && P.r[i] < 0.0) P.r[i] = 0.5 * kNeckFloor;
    }
    t += dt;
    refine(P, G, 0.25);
  }
  if (!recorded && !traj.trace.empty() && n == 2) {
    traj.state_times.push_back(t);
    traj.states.push_back(revolve(P, azim));
  }
  return traj;
}

} // namespace mcf
