#include "mcf/blowup.hpp"

#include <algorithm>
#include <cmath>

#include "mcf/monotonicity.hpp"

namespace mcf {

namespace {

DiscreteImmersion rescale_about(const DiscreteImmersion& state,
                                const Eigen::RowVectorXd& center, double lambda) {
  DiscreteImmersion out = state;
  out.positions = lambda * (state.positions.rowwise() - center);
  return out;
}

double hausdorff_one_sided(const DiscreteImmersion& from, const DiscreteImmersion& to,
                           double R) {
  double worst = 0.0;
  for (int p = 0; p < from.num_vertices(); ++p) {
    if (from.positions.row(p).norm() > R) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int q = 0; q < to.num_vertices(); ++q)
      best = std::min(best, (from.positions.row(p) - to.positions.row(q)).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

const RescalingSnapshot* find_snapshot(const RescalingSequence& seq, size_t k,
                                       double s) {
  for (const auto& snap : seq.snapshots[k])
    if (std::abs(snap.s - s) <= 1e-12) return &snap;
  return nullptr;
}

} // namespace

double shrinker_residual(const DiscreteImmersion& imm, const GeometrySnapshot& geom,
                         double s) {
  if (!(s < 0.0)) throw Error("shrinker residual requires backward time s < 0");
  const double tau = -s;
  const Eigen::RowVectorXd origin = Eigen::RowVectorXd::Zero(imm.ambient_dim);
  double theta = 0.0, acc = 0.0;
  for (int v = 0; v < imm.num_vertices(); ++v) {
    double rho = heat_kernel(imm.positions.row(v), s, origin, 0.0, imm.intrinsic_dim);
    double w = rho * geom.vertex_measure(v);
    Eigen::RowVectorXd f_perp = geom.normal_part(v, imm.positions.row(v));
    Eigen::RowVectorXd res = geom.mean_curvature.row(v) + f_perp / (2.0 * tau);
    theta += w;
    acc += res.squaredNorm() * w;
  }
  if (!(theta > 0.0)) throw NumericalError("empty Gaussian support");
  return std::sqrt(acc / theta);
}

RescalingSequence make_rescaled_sequence(const FlowTrajectory& traj,
                                         const SingularityReport& report,
                                         int num_scales,
                                         const std::vector<double>& s_samples) {
  if (report.type_verdict != TypeVerdict::TypeI)
    throw Error("type I rescaled sequence requires a TypeI verdict");
  if (traj.states.empty()) throw Error("trajectory holds no states");
  for (double s : s_samples)
    if (!(s < 0.0)) throw Error("blow-up samples must be at backward time s < 0");

  const double T = report.T_hat;
  const double t_front = traj.state_times.front();
  const double t_back = traj.state_times.back();
  const Eigen::RowVectorXd q_hat =
      traj.final_state().positions.row(report.singular_vertex);

  RescalingSequence seq;
  seq.center_kind = CenterKind::FixedPoint;

  for (int k = 1; static_cast<int>(seq.times.size()) < num_scales && k <= 60; ++k) {
    const double t_k = T * (1.0 - std::pow(2.0, -k));
    if (t_k < t_front || t_k > t_back) continue;
    const double lambda = 1.0 / std::sqrt(2.0 * (T - t_k));
    bool reachable = true;
    for (double s : s_samples) {
      double t = T + 2.0 * s * (T - t_k);
      if (t < t_front || t > t_back) {
        reachable = false;
        break;
      }
    }
    if (!reachable) continue;

    std::vector<RescalingSnapshot> slices;
    for (double s : s_samples) {
      const double t = T + 2.0 * s * (T - t_k);
      // guard against stored-state cadence too coarse for interpolation:
      // the bracket must be short against the remaining time
      auto it = std::upper_bound(traj.state_times.begin(), traj.state_times.end(), t);
      if (it != traj.state_times.begin() && it != traj.state_times.end()) {
        double span = *it - *(it - 1);
        if (span > 0.5 * std::max(T - t, 1e-300))
          throw NumericalError("stored states too sparse near the blow-up sample");
      }
      RescalingSnapshot snap;
      snap.s = s;
      snap.immersion = rescale_about(traj.state_at(t), q_hat, lambda);
      GeometrySnapshot geom = compute_geometry(snap.immersion);
      snap.shrinker_residual = shrinker_residual(snap.immersion, geom, s);
      snap.curvature_bound_check =
          geom.max_norm_h_sq() * (-2.0 * s) / std::max(report.C0_hat, 1e-300);
      slices.push_back(std::move(snap));
    }
    seq.centers.push_back(q_hat);
    seq.times.push_back(t_k);
    seq.scales.push_back(lambda);
    seq.snapshots.push_back(std::move(slices));
  }
  if (seq.times.empty())
    throw Error("requested blow-up samples lie outside the trajectory range");
  return seq;
}

RescalingSequence make_type2_sequence(const FlowTrajectory& traj, int num_scales) {
  if (traj.states.empty()) throw Error("trajectory holds no states");
  const int count = std::min<int>(num_scales, static_cast<int>(traj.states.size()));
  const int first = static_cast<int>(traj.states.size()) - count;

  RescalingSequence seq;
  seq.center_kind = CenterKind::CurvatureMax;
  for (int idx = first; idx < static_cast<int>(traj.states.size()); ++idx) {
    const DiscreteImmersion& state = traj.states[idx];
    GeometrySnapshot geom = compute_geometry(state);
    int p_k = 0;
    geom.norm_H_sq.maxCoeff(&p_k);
    const double lambda = std::sqrt(geom.norm_H_sq(p_k));
    if (!(lambda > 0.0)) throw NumericalError("flat state in type II sequence");
    const Eigen::RowVectorXd center = state.positions.row(p_k);

    RescalingSnapshot snap;
    snap.s = 0.0;
    snap.immersion = rescale_about(state, center, lambda);
    GeometrySnapshot rg = compute_geometry(snap.immersion);
    double H_at_pk = std::sqrt(rg.norm_H_sq(p_k));
    if (std::abs(H_at_pk - 1.0) > 1e-10)
      throw NumericalError("type II normalization drifted: |H|(p_k) = " +
                           std::to_string(H_at_pk));
    snap.shrinker_residual = shrinker_residual(snap.immersion, rg, -0.5);
    snap.curvature_bound_check = rg.max_norm_h_sq();

    seq.centers.push_back(center);
    seq.times.push_back(traj.state_times[idx]);
    seq.scales.push_back(lambda);
    seq.snapshots.push_back({std::move(snap)});
  }
  return seq;
}

double stabilization_check(const RescalingSequence& seq, double s, double R) {
  if (seq.snapshots.size() < 2)
    throw Error("stabilization check needs at least two snapshots");
  const RescalingSnapshot* a = find_snapshot(seq, seq.snapshots.size() - 2, s);
  const RescalingSnapshot* b = find_snapshot(seq, seq.snapshots.size() - 1, s);
  if (!a || !b) throw Error("no snapshot at the requested backward time");
  return hausdorff_one_sided(a->immersion, b->immersion, R);
}

std::vector<double> stabilization_profile(const RescalingSequence& seq, double s,
                                          double R) {
  std::vector<double> out;
  for (size_t k = 0; k + 1 < seq.snapshots.size(); ++k) {
    const RescalingSnapshot* a = find_snapshot(seq, k, s);
    const RescalingSnapshot* b = find_snapshot(seq, k + 1, s);
    if (!a || !b) throw Error("no snapshot at the requested backward time");
    out.push_back(hausdorff_one_sided(a->immersion, b->immersion, R));
  }
  return out;
}

} // namespace mcf
