#pragma once

#include <Eigen/Core>
#include <vector>

#include "mcf/flow.hpp"
#include "mcf/geometry.hpp"
#include "mcf/immersion.hpp"

namespace mcf {

enum class CenterKind { FixedPoint, MovingPoints, CurvatureMax };

struct RescalingSnapshot {
  double s = 0.0; ///< backward time of this slice
  DiscreteImmersion immersion;
  double shrinker_residual = 0.0;
  /// type I: max|h|^2_k (-2s) / C0_hat, predicted <= 1 by the rescaled
  /// curvature bound; type II (s = 0): plain max|h|^2 of the snapshot.
  double curvature_bound_check = 0.0;
};

struct RescalingSequence {
  CenterKind center_kind = CenterKind::FixedPoint;
  std::vector<Eigen::RowVectorXd> centers; ///< q_hat, or F(p_k, t_k)
  std::vector<double> times;               ///< t_k
  std::vector<double> scales;              ///< lambda_k, strictly increasing
  std::vector<std::vector<RescalingSnapshot>> snapshots; ///< per k, per s
};

/// Type I blow-up about the singular vertex's final position:
/// F_k(s) = lambda_k (F(T_hat + s/lambda_k^2) - q_hat) with
/// lambda_k = 1/sqrt(2 (T_hat - t_k)) and t_k = T_hat (1 - 2^-k)
/// intersected with the trajectory range. Positions between stored states
/// are linearly interpolated.
RescalingSequence make_rescaled_sequence(const FlowTrajectory& traj,
                                         const SingularityReport& report,
                                         int num_scales = 8,
                                         const std::vector<double>& s_samples = {-0.5});

/// Gaussian-weighted L2 deviation from the self-shrinker equation at
/// backward time s < 0:
///   sqrt( sum_v |H + F_perp/(2(-s))|^2 rho mu / theta ).
/// Zero exactly on the shrinker family (where H = F_perp/(2s)).
double shrinker_residual(const DiscreteImmersion& imm, const GeometrySnapshot& geom,
                         double s);

/// Hamilton rescaling at the curvature maximum: p_k = argmax |H|(., t_k),
/// lambda_k = |H|(p_k, t_k), snapshots at s = 0 normalized to
/// max |H|_k = 1. Uses the trailing recorded states (their spacing is
/// already geometric in T - t).
RescalingSequence make_type2_sequence(const FlowTrajectory& traj, int num_scales = 8);

/// One-sided Hausdorff distance, restricted to the ball B_R(0), from the
/// second-to-last snapshot's vertices at backward time s to the last
/// snapshot's vertex set: the numerical compact-set convergence indicator.
double stabilization_check(const RescalingSequence& seq, double s, double R);

/// The same indicator for every consecutive snapshot pair, in k order.
std::vector<double> stabilization_profile(const RescalingSequence& seq, double s,
                                          double R);

} // namespace mcf
