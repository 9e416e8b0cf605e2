#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "mcf/errors.hpp"

namespace mcf {

/// Discrete immersion F : M^n -> R^N. Curves (n = 1) are polylines,
/// surfaces (n = 2) are oriented triangle meshes; the ambient dimension N
/// is arbitrary (N >= n + 1). Value type: never mutated in place by any
/// operation, so instances can be shared freely across threads.
struct DiscreteImmersion {
  int ambient_dim = 0;   ///< N
  int intrinsic_dim = 0; ///< n, 1 or 2
  Eigen::MatrixXd positions; ///< V x N, one row per vertex
  Eigen::MatrixXi cells;     ///< C x (n+1), 0-based vertex indices
  bool closed = true;        ///< whether M is meant to be a closed manifold

  int num_vertices() const { return static_cast<int>(positions.rows()); }
  int num_cells() const { return static_cast<int>(cells.rows()); }

  /// Edge length (n = 1) or triangle area (n = 2) of cell c.
  /// Valid in any ambient dimension.
  double cell_measure(int c) const;

  /// Sum of all cell measures.
  double total_cell_measure() const;
};

enum class DefectKind {
  InvalidIndex,
  RepeatedVertex,
  ZeroMeasure,
  NonManifold,
  InconsistentOrientation,
};

const char* defect_kind_name(DefectKind kind);

struct ValidationReport {
  bool is_manifold = false;
  bool is_closed = false;
  double min_cell_measure = 0.0;
  std::vector<std::pair<int, DefectKind>> defects; ///< (cell index, kind)
};

/// Structural validation: manifoldness, closedness, cell measures.
/// Defects are data, not errors; never mutates the input.
ValidationReport validate(const DiscreteImmersion& imm);

/// Reads an NDOFF file. Format:
///   NDOFF <N> <n>
///   <num_vertices> <num_cells>
///   ... num_vertices rows of N coordinates ...
///   ... num_cells rows of "2 i j" (n=1) or "3 i j k" (n=2) ...
/// '#' starts a comment, blank lines are skipped.
DiscreteImmersion load_immersion(const std::string& path);

/// Writes NDOFF with 17-significant-digit coordinates (exact double
/// round trip) and LF line endings.
void save_immersion(const DiscreteImmersion& imm, const std::string& path);

} // namespace mcf
