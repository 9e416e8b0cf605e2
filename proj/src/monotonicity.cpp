#include "mcf/monotonicity.hpp"

#include <cmath>

namespace mcf {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double heat_kernel(const Eigen::RowVectorXd& x, double t,
                   const Eigen::RowVectorXd& center, double horizon, int n) {
  const double tau = horizon - t;
  if (!(tau > 0.0)) throw Error("heat kernel requires t < horizon");
  double d2 = (center - x).squaredNorm();
  return std::pow(4.0 * kPi * tau, -0.5 * n) * std::exp(-d2 / (4.0 * tau));
}

double heat_density(const DiscreteImmersion& imm, const GeometrySnapshot& geom,
                    double t, const Eigen::RowVectorXd& center, double horizon) {
  const double tau = horizon - t;
  if (!(tau > 0.0)) throw Error("heat density requires t < horizon");
  const int n = imm.intrinsic_dim;
  const double norm = std::pow(4.0 * kPi * tau, -0.5 * n);
  double theta = 0.0;
  for (int v = 0; v < imm.num_vertices(); ++v) {
    double d2 = (imm.positions.row(v) - center).squaredNorm();
    theta += norm * std::exp(-d2 / (4.0 * tau)) * geom.vertex_measure(v);
  }
  return theta;
}

DensityTrace density_trace(const FlowTrajectory& traj,
                           const Eigen::RowVectorXd& center, double horizon) {
  if (traj.states.empty()) throw Error("density trace requires stored states");
  if (!(horizon > traj.state_times.back()))
    throw Error("density horizon must lie beyond the last trajectory time");
  DensityTrace trace;
  trace.center = center;
  trace.horizon = horizon;
  trace.samples.reserve(traj.states.size());
  for (size_t k = 0; k < traj.states.size(); ++k) {
    GeometrySnapshot geom = compute_geometry(traj.states[k]);
    double theta =
        heat_density(traj.states[k], geom, traj.state_times[k], center, horizon);
    trace.samples.emplace_back(traj.state_times[k], theta);
  }
  for (size_t k = 0; k + 1 < trace.samples.size(); ++k)
    if (trace.samples[k + 1].second > trace.samples[k].second * (1.0 + 1e-3))
      ++trace.monotonicity_violations;
  trace.theta_limit = trace.samples.back().second;
  trace.extrapolation_residual =
      trace.samples.size() >= 2
          ? std::abs(trace.samples.back().second -
                     trace.samples[trace.samples.size() - 2].second)
          : 0.0;
  return trace;
}

std::pair<double, double> rescaling_invariance_check(const FlowTrajectory& traj,
                                                     const Eigen::RowVectorXd& center,
                                                     double horizon, double lambda,
                                                     double s) {
  if (!(lambda > 0.0) || !(s < 0.0))
    throw Error("rescaling check requires lambda > 0 and s < 0");
  const double t = horizon + s / (lambda * lambda);
  if (traj.states.empty() || t < traj.state_times.front() ||
      t > traj.state_times.back())
    throw Error("rescaled sample time lies outside the trajectory");

  DiscreteImmersion state = traj.state_at(t);
  GeometrySnapshot geom = compute_geometry(state);
  double theta_original = heat_density(state, geom, t, center, horizon);

  // rescaled state: y = lambda (F - center), measures scale by lambda^n
  const int n = state.intrinsic_dim;
  DiscreteImmersion rescaled = state;
  rescaled.positions = lambda * (state.positions.rowwise() - center);
  const double tau = -s;
  const double norm = std::pow(4.0 * kPi * tau, -0.5 * n);
  const double mscale = std::pow(lambda, n);
  double theta_rescaled = 0.0;
  for (int v = 0; v < rescaled.num_vertices(); ++v) {
    double d2 = rescaled.positions.row(v).squaredNorm();
    theta_rescaled += norm * std::exp(-d2 / (4.0 * tau)) * mscale * geom.vertex_measure(v);
  }
  return {theta_original, theta_rescaled};
}

double tail_mass(const DiscreteImmersion& imm, const GeometrySnapshot& geom,
                 double t, const Eigen::RowVectorXd& center, double horizon,
                 double R) {
  const double tau = horizon - t;
  if (!(tau > 0.0)) throw Error("tail mass requires t < horizon");
  if (R < 0.0) throw Error("tail mass requires R >= 0");
  const int n = imm.intrinsic_dim;
  const double norm = std::pow(4.0 * kPi * tau, -0.5 * n);
  double mass = 0.0;
  for (int v = 0; v < imm.num_vertices(); ++v) {
    Eigen::RowVectorXd d = imm.positions.row(v) - center;
    double d2 = d.squaredNorm();
    if (d2 <= R * R) continue;
    mass += norm * std::exp(-d2 / (4.0 * tau)) * geom.vertex_measure(v);
  }
  return mass;
}

} // namespace mcf
