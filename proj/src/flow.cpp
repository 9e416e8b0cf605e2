#include "mcf/flow.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <queue>

namespace mcf {

namespace {

constexpr long kMaxSteps = 1000000;

Eigen::VectorXd vertex_measures(const DiscreteImmersion& imm) {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(imm.num_vertices());
  const double share = imm.intrinsic_dim == 1 ? 0.5 : 1.0 / 3.0;
  for (int c = 0; c < imm.num_cells(); ++c) {
    double m = imm.cell_measure(c) * share;
    for (int a = 0; a <= imm.intrinsic_dim; ++a) mu(imm.cells(c, a)) += m;
  }
  return mu;
}

// Weak metric Laplacian: cotangent weights for surfaces, inverse edge
// lengths for curves. Negative semidefinite with the sign convention
// (L x)_i = sum_j w_ij (x_j - x_i).
Eigen::SparseMatrix<double> weak_laplacian(const DiscreteImmersion& imm) {
  const int V = imm.num_vertices();
  std::vector<Eigen::Triplet<double>> trip;
  auto add = [&](int i, int j, double w) {
    trip.emplace_back(i, j, w);
    trip.emplace_back(j, i, w);
    trip.emplace_back(i, i, -w);
    trip.emplace_back(j, j, -w);
  };
  if (imm.intrinsic_dim == 1) {
    for (int c = 0; c < imm.num_cells(); ++c) {
      int i = imm.cells(c, 0), j = imm.cells(c, 1);
      double l = imm.cell_measure(c);
      if (!(l > 0.0)) throw DegenerateGeometryError(i, "zero-length edge");
      add(i, j, 1.0 / l);
    }
  } else {
    for (int c = 0; c < imm.num_cells(); ++c) {
      double area = imm.cell_measure(c);
      if (!(area > 0.0))
        throw DegenerateGeometryError(imm.cells(c, 0), "zero-area triangle");
      const int tri[3] = {imm.cells(c, 0), imm.cells(c, 1), imm.cells(c, 2)};
      const Eigen::MatrixXd& X = imm.positions;
      for (int a = 0; a < 3; ++a) {
        int p = tri[a], q = tri[(a + 1) % 3], r = tri[(a + 2) % 3];
        double cot = (X.row(q) - X.row(p)).dot(X.row(r) - X.row(p)) / (2.0 * area);
        add(q, r, 0.5 * cot);
      }
    }
  }
  Eigen::SparseMatrix<double> L(V, V);
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

DiscreteImmersion semi_implicit_step(const DiscreteImmersion& imm, double dt) {
  const int V = imm.num_vertices();
  Eigen::SparseMatrix<double> A = -dt * weak_laplacian(imm);
  Eigen::VectorXd mu = vertex_measures(imm);
  for (int v = 0; v < V; ++v) A.coeffRef(v, v) += mu(v);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success)
    throw NumericalError("semi-implicit factorization failed");
  DiscreteImmersion out = imm;
  Eigen::MatrixXd rhs = mu.asDiagonal() * imm.positions;
  out.positions = solver.solve(rhs);
  if (solver.info() != Eigen::Success)
    throw NumericalError("semi-implicit solve did not converge");
  return out;
}


double min_edge_length(const DiscreteImmersion& imm) {
  double m = std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd& X = imm.positions;
  for (int c = 0; c < imm.num_cells(); ++c) {
    const int k = imm.intrinsic_dim + 1;
    for (int a = 0; a < k; ++a) {
      int i = imm.cells(c, a), j = imm.cells(c, (a + 1) % k);
      if (imm.intrinsic_dim == 1 && a == 1) break;
      m = std::min(m, (X.row(j) - X.row(i)).norm());
    }
  }
  return m;
}

double max_ratio_of(const GeometrySnapshot& geom) {
  double r = 0.0;
  for (int v = 0; v < geom.num_vertices(); ++v)
    if (geom.norm_H_sq(v) > 1e-30)
      r = std::max(r, geom.norm_h_sq(v) / geom.norm_H_sq(v));
  return r;
}

TraceRow make_trace_row(double t, const GeometrySnapshot& geom, double c, double a) {
  TraceRow row;
  row.t = t;
  row.max_h_sq = geom.max_norm_h_sq();
  row.max_ratio = max_ratio_of(geom);
  row.min_H_sq = geom.norm_H_sq.minCoeff();
  row.total_measure = geom.total_measure;
  row.pinching_gap = pinching_gap(geom, c, a);
  return row;
}

bool quick_valid(const DiscreteImmersion& imm) {
  if (!imm.positions.allFinite()) return false;
  for (int c = 0; c < imm.num_cells(); ++c)
    if (!(imm.cell_measure(c) > 0.0)) return false;
  return true;
}

DiscreteImmersion interpolate_states(const DiscreteImmersion& a,
                                     const DiscreteImmersion& b, double w) {
  if (a.cells.rows() != b.cells.rows() || (a.cells.size() > 0 && a.cells != b.cells))
    throw NumericalError("cannot interpolate states with different connectivity");
  DiscreteImmersion out = a;
  out.positions = (1.0 - w) * a.positions + w * b.positions;
  return out;
}

} // namespace

const char* type_verdict_name(TypeVerdict v) {
  switch (v) {
    case TypeVerdict::TypeI: return "TypeI";
    case TypeVerdict::TypeII: return "TypeII";
    case TypeVerdict::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

DiscreteImmersion FlowTrajectory::state_at(double t) const {
  if (states.empty()) throw NumericalError("trajectory holds no states");
  if (t <= state_times.front()) return states.front();
  if (t >= state_times.back()) return states.back();
  auto it = std::upper_bound(state_times.begin(), state_times.end(), t);
  size_t hi = static_cast<size_t>(it - state_times.begin());
  size_t lo = hi - 1;
  double w = (t - state_times[lo]) / (state_times[hi] - state_times[lo]);
  return interpolate_states(states[lo], states[hi], w);
}

DiscreteImmersion step(const DiscreteImmersion& imm, double dt, Integrator integrator) {
  if (!(dt > 0.0)) throw Error("step requires dt > 0");
  if (integrator == Integrator::SemiImplicit) return semi_implicit_step(imm, dt);
  GeometrySnapshot geom = compute_geometry(imm);
  DiscreteImmersion out = imm;
  out.positions += dt * geom.mean_curvature;
  return out;
}

FlowTrajectory run(const DiscreteImmersion& imm, const FlowConfig& cfg) {
  ValidationReport rep = validate(imm);
  if (!rep.is_manifold || !rep.is_closed)
    throw Error("flow requires a valid closed immersion");

  const double c = cfg.pinching_c > 0.0 ? cfg.pinching_c : 4.0 / (3.0 * imm.intrinsic_dim);
  const Adjacency adj = build_adjacency(imm);
  FlowTrajectory traj;
  DiscreteImmersion cur = imm;
  double t = 0.0;
  bool recorded = false;

  for (long k = 0; k < kMaxSteps; ++k) {
    if (!quick_valid(cur)) {
      traj.failed = true;
      traj.failure = "mesh collapsed at t = " + std::to_string(t);
      break;
    }
    GeometrySnapshot geom;
    try {
      geom = compute_geometry(cur, adj);
    } catch (const DegenerateGeometryError& e) {
      traj.failed = true;
      traj.failure = e.what();
      break;
    }

    TraceRow row = make_trace_row(t, geom, c, cfg.pinching_a);
    const bool cadence = (k % std::max(1, cfg.record_every)) == 0;
    const bool stopping =
        geom.max_norm_h_sq() >= cfg.stop_curvature || t >= cfg.t_max;
    if (cfg.monitor_embeddedness && (cadence || stopping))
      row.embed_gap = embeddedness_gap(cur, geom);
    traj.trace.push_back(row);
    recorded = false;
    if (cadence || stopping) {
      traj.state_times.push_back(t);
      traj.states.push_back(cur);
      recorded = true;
    }
    if (stopping) break;

    double dt = cfg.dt_safety / std::max(geom.max_norm_h_sq(), 1e-12);
    if (cfg.integrator == Integrator::ExplicitEuler) {
      // explicit stability also needs the parabolic mesh CFL
      double l = min_edge_length(cur);
      dt = std::min(dt, 0.25 * l * l);
    }
    if (t + dt > cfg.t_max) dt = cfg.t_max - t;
    if (cfg.integrator == Integrator::ExplicitEuler) {
      cur.positions += dt * geom.mean_curvature;
    } else {
      cur = semi_implicit_step(cur, dt);
    }
    t += dt;
  }
  if (!recorded && !traj.trace.empty()) {
    traj.state_times.push_back(t);
    traj.states.push_back(cur);
  }
  return traj;
}

SingularityReport estimate_singular_time(const FlowTrajectory& traj, double window) {
  const auto& trace = traj.trace;
  if (trace.size() < 2) throw NumericalError("trajectory trace too short");
  double h0 = trace.front().max_h_sq;
  double hmax = 0.0;
  for (const auto& row : trace) hmax = std::max(hmax, row.max_h_sq);
  if (hmax < 10.0 * h0)
    throw NumericalError("insufficient curvature growth for singular-time fit");

  const size_t K = trace.size();
  size_t count = std::max<size_t>(static_cast<size_t>(std::ceil(window * K)), 2);
  if (count > K) count = K;
  const size_t first = K - count;
  if (count < 10) throw NumericalError("insufficient samples in fit window");

  // least squares y = alpha + beta t with y = 1/(2 max|h|^2)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = first; k < K; ++k) {
    double x = trace[k].t, y = 0.5 / trace[k].max_h_sq;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(count);
  double denom = m * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw NumericalError("degenerate fit window");
  double beta = (m * sxy - sx * sy) / denom;
  double alpha = (sy - beta * sx) / m;
  if (!(beta < 0.0)) throw NumericalError("curvature is not blowing up in the window");

  SingularityReport report;
  report.T_hat = -alpha / beta;
  double ss = 0.0;
  for (size_t k = first; k < K; ++k) {
    double y = 0.5 / trace[k].max_h_sq;
    double r = y - (alpha + beta * trace[k].t);
    ss += r * r;
  }
  report.fit_residual = std::sqrt(ss / m);

  constexpr double kTol = 0.1;
  constexpr double kCap = 100.0;
  bool type1 = true, monotone = true;
  double cmax = -std::numeric_limits<double>::infinity();
  double prev = -std::numeric_limits<double>::infinity();
  for (size_t k = first; k < K; ++k) {
    double r = 2.0 * (report.T_hat - trace[k].t) * trace[k].max_h_sq;
    report.ratio_trend.emplace_back(trace[k].t, r);
    cmax = std::max(cmax, r);
    if (r < 1.0 - kTol || r > kCap) type1 = false;
    if (r < prev) monotone = false;
    prev = r;
  }
  report.C0_hat = cmax;
  if (type1)
    report.type_verdict = TypeVerdict::TypeI;
  else if (monotone && cmax > kCap)
    report.type_verdict = TypeVerdict::TypeII;
  else
    report.type_verdict = TypeVerdict::Undetermined;

  GeometrySnapshot geom = compute_geometry(traj.final_state());
  int argmax = 0;
  geom.norm_h_sq.maxCoeff(&argmax);
  report.singular_vertex = argmax;
  return report;
}

double embeddedness_gap(const DiscreteImmersion& imm, const GeometrySnapshot& geom) {
  const int V = imm.num_vertices();
  const double c_hat = std::sqrt(std::max(geom.max_norm_h_sq(), 1e-300));
  const double r0 = 0.5 / c_hat;
  const Adjacency adj = build_adjacency(imm);
  const Eigen::MatrixXd& X = imm.positions;

  double gap = std::numeric_limits<double>::infinity();
  std::vector<double> dist(V);
  std::vector<char> inside(V);
  using Item = std::pair<double, int>;
  for (int src = 0; src < V; ++src) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::fill(inside.begin(), inside.end(), 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    // truncated Dijkstra: only the intrinsic ball of radius r0 matters
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      if (d >= r0) continue;
      inside[v] = 1;
      for (int j : adj.neighbors[v]) {
        double nd = d + (X.row(j) - X.row(v)).norm();
        if (nd < dist[j]) {
          dist[j] = nd;
          pq.push({nd, j});
        }
      }
    }
    for (int q = 0; q < V; ++q) {
      if (inside[q]) continue;
      double d = (X.row(q) - X.row(src)).norm();
      gap = std::min(gap, d);
    }
  }
  return gap;
}

FlowTrajectory normalized_run(const DiscreteImmersion& imm, const FlowConfig& cfg) {
  ValidationReport rep = validate(imm);
  if (!rep.is_manifold || !rep.is_closed)
    throw Error("normalized flow requires a valid closed immersion");

  const int n = imm.intrinsic_dim;
  const double c = cfg.pinching_c > 0.0 ? cfg.pinching_c : 4.0 / (3.0 * n);
  const Adjacency adj = build_adjacency(imm);
  FlowTrajectory traj;
  DiscreteImmersion cur = imm;
  const double measure0 = imm.total_cell_measure();
  double t_norm = 0.0;
  bool recorded = false;

  for (long k = 0; k < kMaxSteps; ++k) {
    if (!quick_valid(cur)) {
      traj.failed = true;
      traj.failure = "mesh collapsed at normalized time " + std::to_string(t_norm);
      break;
    }
    GeometrySnapshot geom;
    try {
      geom = compute_geometry(cur, adj);
    } catch (const DegenerateGeometryError& e) {
      traj.failed = true;
      traj.failure = e.what();
      break;
    }
    TraceRow row = make_trace_row(t_norm, geom, c, cfg.pinching_a);
    row.max_traceless_sq = geom.traceless_sq.maxCoeff();
    row.max_grad_h_sq = geom.grad_h_sq.maxCoeff();
    traj.trace.push_back(row);
    recorded = false;
    const bool cadence = (k % std::max(1, cfg.record_every)) == 0;
    const bool stopping =
        geom.max_norm_h_sq() >= cfg.stop_curvature || t_norm >= cfg.t_max;
    if (cadence || stopping) {
      traj.state_times.push_back(t_norm);
      traj.states.push_back(cur);
      recorded = true;
    }
    if (stopping) break;

    double dt = cfg.dt_safety / std::max(geom.max_norm_h_sq(), 1e-12);
    if (cfg.integrator == Integrator::ExplicitEuler) {
      double l = min_edge_length(cur);
      dt = std::min(dt, 0.25 * l * l);
    }
    if (cfg.integrator == Integrator::ExplicitEuler) {
      cur.positions += dt * geom.mean_curvature;
    } else {
      cur = semi_implicit_step(cur, dt);
    }
    // rescale about the measure-weighted centroid back to the initial
    // total measure; steps act on the already-normalized surface, so dt
    // is directly an increment of normalized time
    Eigen::VectorXd mu = vertex_measures(cur);
    Eigen::RowVectorXd centroid = (mu.transpose() * cur.positions) / mu.sum();
    double lambda = std::pow(measure0 / cur.total_cell_measure(), 1.0 / n);
    cur.positions = ((cur.positions.rowwise() - centroid) * lambda).rowwise() + centroid;
    t_norm += dt;
  }
  if (!recorded && !traj.trace.empty()) {
    traj.state_times.push_back(t_norm);
    traj.states.push_back(cur);
  }
  return traj;
}

} // namespace mcf
