#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "mcf/flow.hpp"
#include "mcf/geometry.hpp"
#include "mcf/immersion.hpp"

namespace mcf {

/// Backwards heat kernel centred at (center, horizon):
///   rho = (4 pi (horizon - t))^(-n/2) exp(-|center - x|^2 / (4 (horizon - t))).
/// Requires t < horizon.
double heat_kernel(const Eigen::RowVectorXd& x, double t,
                   const Eigen::RowVectorXd& center, double horizon, int n);

/// Vertex-lumped Gaussian-weighted measure: theta = sum rho(F(v), t) mu(v).
double heat_density(const DiscreteImmersion& imm, const GeometrySnapshot& geom,
                    double t, const Eigen::RowVectorXd& center, double horizon);

struct DensityTrace {
  Eigen::RowVectorXd center;
  double horizon = 0.0;
  std::vector<std::pair<double, double>> samples; ///< (t, theta)
  double theta_limit = 0.0;             ///< last sample
  double extrapolation_residual = 0.0;  ///< |last - second to last|
  int monotonicity_violations = 0;      ///< steps with theta rising beyond slack
};

/// theta sampled at every stored state of the trajectory. The limit value
/// is reported as the last sample together with its extrapolation residual,
/// never extrapolated. Violations count samples with
/// theta_{k+1} > theta_k (1 + 1e-3).
DensityTrace density_trace(const FlowTrajectory& traj,
                           const Eigen::RowVectorXd& center, double horizon);

/// Computes theta twice for the same spacetime sample: once on the original
/// state at t = horizon + s/lambda^2 with the kernel at (center, horizon),
/// once on the parabolically rescaled state lambda (F - center) at backward
/// time s with the kernel at the origin. The two agree identically.
std::pair<double, double> rescaling_invariance_check(const FlowTrajectory& traj,
                                                     const Eigen::RowVectorXd& center,
                                                     double horizon, double lambda,
                                                     double s);

/// Gaussian-weighted mass outside the ball B_R(center).
double tail_mass(const DiscreteImmersion& imm, const GeometrySnapshot& geom,
                 double t, const Eigen::RowVectorXd& center, double horizon,
                 double R);

} // namespace mcf
