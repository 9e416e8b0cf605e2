#pragma once

#include <Eigen/Core>
#include <vector>

#include "mcf/immersion.hpp"
#include "mcf/topology.hpp"

namespace mcf {

/// Per-vertex extrinsic geometry of an immersion: mean curvature vector H,
/// full second fundamental form h (normal valued, expressed in a stored
/// orthonormal tangent frame), scalar norms, discrete derivative norms and
/// dual measures. Units: H, h carry 1/length; the gradient norms 1/length^2
/// squared; measures length^n. Immutable once built.
struct GeometrySnapshot {
  int intrinsic_dim = 0; ///< n
  int ambient_dim = 0;   ///< N

  Eigen::MatrixXd mean_curvature; ///< V x N, normal part of the discrete Laplacian
  /// second fundamental form entries per vertex: rows are the upper
  /// triangle in order (0,0), (0,1), (1,1); each row a vector in R^N.
  std::vector<Eigen::MatrixXd> second_form;
  std::vector<Eigen::MatrixXd> tangent_frame; ///< V of n x N orthonormal rows
  std::vector<Eigen::MatrixXd> normal_frame;  ///< V of (N-n) x N orthonormal rows

  Eigen::VectorXd norm_h_sq;      ///< |h|^2
  Eigen::VectorXd norm_H_sq;      ///< |H|^2
  Eigen::VectorXd traceless_sq;   ///< |h - (H/n) g|^2, clamped at 0
  Eigen::VectorXd grad_h_sq;      ///< discrete |nabla h|^2
  Eigen::VectorXd grad_H_sq;      ///< discrete |nabla H|^2
  Eigen::VectorXd vertex_measure; ///< dual length/area
  double total_measure = 0.0;

  int num_vertices() const { return static_cast<int>(norm_h_sq.size()); }

  /// Row of second_form[v] holding h(e_i, e_j).
  Eigen::RowVectorXd h_entry(int v, int i, int j) const {
    int a = std::min(i, j), b = std::max(i, j);
    int idx = (intrinsic_dim == 1) ? 0 : (a == 0 ? b : 2);
    return second_form[v].row(idx);
  }

  double max_norm_h_sq() const { return norm_h_sq.maxCoeff(); }

  /// Projection of an ambient vector onto the normal space at v.
  Eigen::RowVectorXd normal_part(int v, const Eigen::RowVectorXd& x) const {
    return x - x * tangent_frame[v].transpose() * tangent_frame[v];
  }
};

/// Computes the full snapshot. H is the discrete Laplace-Beltrami of the
/// position map (second differences w.r.t. arclength for curves, cotangent
/// weights with barycentric dual areas for surfaces), projected onto the
/// normal space of the fitted tangent frame. h comes from a local quadratic
/// fit over the 1-ring (2-ring fallback when underdetermined) and is
/// trace-corrected so that tr h = H holds exactly. Derivative norms use
/// finite differences along 1-ring edges with Procrustes-aligned frames.
/// Throws DegenerateGeometryError naming the vertex on a collapsed ring.
GeometrySnapshot compute_geometry(const DiscreteImmersion& imm);
GeometrySnapshot compute_geometry(const DiscreteImmersion& imm, const Adjacency& adj);

/// max over vertices of (|h|^2 + a - c |H|^2); negative means the pinching
/// hypothesis holds strictly everywhere. Requires c > 0, a >= 0.
double pinching_gap(const GeometrySnapshot& geom, double c, double a);

/// min over vertices of (|nabla h|^2 - 3/(n+2) |nabla H|^2); the smooth
/// estimate predicts a nonnegative value.
double gradient_estimate_slack(const GeometrySnapshot& geom);

} // namespace mcf
