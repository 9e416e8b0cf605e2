#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mcf/geometry.hpp"
#include "mcf/immersion.hpp"

namespace mcf {

enum class Integrator { ExplicitEuler, SemiImplicit };

struct FlowConfig {
  double dt_safety = 0.1;        ///< sigma in dt = sigma / max|h|^2
  double stop_curvature = 1e4;   ///< stop once max|h|^2 reaches this
  double t_max = std::numeric_limits<double>::infinity();
  Integrator integrator = Integrator::ExplicitEuler;
  int record_every = 1;          ///< full-state (and embeddedness) cadence
  double pinching_c = -1.0;      ///< < 0 means the default 4/(3n)
  double pinching_a = 0.0;
  bool monitor_embeddedness = false;
  bool axisymmetric = false;
};

/// One trace sample. embed_gap and the normalized-flow extras are NaN when
/// not monitored.
struct TraceRow {
  double t = 0.0;
  double max_h_sq = 0.0;
  double max_ratio = 0.0; ///< max |h|^2 / |H|^2
  double min_H_sq = 0.0;
  double total_measure = 0.0;
  double pinching_gap = 0.0;
  double embed_gap = std::numeric_limits<double>::quiet_NaN();
  double max_traceless_sq = std::numeric_limits<double>::quiet_NaN();
  double max_grad_h_sq = std::numeric_limits<double>::quiet_NaN();
};

struct FlowTrajectory {
  std::vector<double> state_times;        ///< strictly increasing
  std::vector<DiscreteImmersion> states;  ///< validated snapshots
  std::vector<TraceRow> trace;            ///< one row per step
  bool failed = false;                    ///< mesh collapse mid-flow
  std::string failure;
  bool neck_event = false;                ///< axisymmetric: r -> 0 off-center
  double neck_location = 0.0;
  double neck_time = 0.0;

  double final_time() const { return state_times.empty() ? 0.0 : state_times.back(); }
  const DiscreteImmersion& final_state() const { return states.back(); }

  /// Positions linearly interpolated between the bracketing stored states.
  /// Requires matching connectivity across the bracket.
  DiscreteImmersion state_at(double t) const;
};

enum class TypeVerdict { TypeI, TypeII, Undetermined };

const char* type_verdict_name(TypeVerdict v);

struct SingularityReport {
  double T_hat = 0.0;        ///< estimated singular time
  double fit_residual = 0.0; ///< rms residual of the reciprocal fit
  TypeVerdict type_verdict = TypeVerdict::Undetermined;
  double C0_hat = 0.0;       ///< sup of 2(T_hat - t) max|h|^2 over the window
  std::vector<std::pair<double, double>> ratio_trend; ///< (t, 2(T_hat-t) max|h|^2)
  int singular_vertex = 0;   ///< argmax |h|^2 at the last state
};

/// One explicit Euler or frozen-coefficient backward Euler step of
/// dF/dt = H. Connectivity is unchanged.
DiscreteImmersion step(const DiscreteImmersion& imm, double dt, Integrator integrator);

/// Runs the flow with adaptive dt = dt_safety / max|h|^2 until the
/// curvature threshold or t_max. Records a trace row every step and a full
/// state every record_every steps (plus the final state).
FlowTrajectory run(const DiscreteImmersion& imm, const FlowConfig& cfg);

/// Least-squares fit of 1/(2 max|h|^2) over the trailing window; the root
/// gives T_hat. window is the trailing fraction of samples (default 0.5).
SingularityReport estimate_singular_time(const FlowTrajectory& traj,
                                         double window = 0.5);

/// Minimum extrinsic distance among vertex pairs whose intrinsic (graph)
/// distance is at least 1/(2 max|h|); +infinity when no pair qualifies.
double embeddedness_gap(const DiscreteImmersion& imm, const GeometrySnapshot& geom);

/// Mean curvature flow renormalized after every step to keep the total
/// measure fixed (rescaling about the measure-weighted centroid). The
/// trace time axis is the accumulated normalized time, and the traceless /
/// gradient maxima columns are filled.
FlowTrajectory normalized_run(const DiscreteImmersion& imm, const FlowConfig& cfg);

/// Rotationally symmetric hypersurface in R^(n+1), reduced to its profile
/// curve in the (x, r) half-plane. Interior points move with normal speed
/// kappa - (n-1) <nu, e_r>/r; poles move axially with speed n * kappa.
/// Profiles with r=0 endpoints are closed caps; profiles with equal
/// positive end radii and distinct x are treated as periodic in x.
/// Stops when min r < 1e-3 (neck event, recorded with its location) or the
/// curvature threshold is hit. Recorded states are the revolved meshes.
FlowTrajectory axisymmetric_run(const std::vector<std::array<double, 2>>& profile,
                                int n, const FlowConfig& cfg);

} // namespace mcf
