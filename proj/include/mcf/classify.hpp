#pragma once

#include <string>
#include <vector>

#include "mcf/immersion.hpp"

namespace mcf {

struct DensityTableEntry {
  std::string label; ///< "plane", "sphere", "cylinder m=1", ...
  int n = 0;
  int m = 0; ///< 0 except for cylinders
  double density = 0.0;
};

/// The n+1 Gaussian densities that separate blow-up limits: plane (exactly
/// 1), the sphere S^n(sqrt n), and the cylinders S^m(sqrt m) x R^(n-m).
struct DensityTable {
  int n = 0;
  std::vector<DensityTableEntry> entries;

  const DensityTableEntry* find(const std::string& label) const;
};

/// Densities by heat-kernel quadrature on the oracle shrinker meshes at
/// s = -1/2 (the plane entry is pinned to its exact value 1). resolution is
/// the oracle mesh resolution (vertices along a great circle).
DensityTable build_density_table(int n, int resolution = 160);

enum class ShrinkerVerdict { Plane, Sphere, Cylinder, Unknown };

const char* shrinker_verdict_name(ShrinkerVerdict v);

struct ShrinkerClassification {
  ShrinkerVerdict verdict = ShrinkerVerdict::Unknown;
  int multiplicity = 1; ///< plane verdicts
  int m = 0;            ///< cylinder verdicts
  double shrinker_residual = 0.0; ///< scale-normalized, sqrt(-2s) units
  double ratio_mean = 0.0;        ///< Gaussian-weighted mean of |h|^2/|H|^2
  double ratio_spread = 0.0;      ///< max - min over the weighted support
  double grad_h_norm = 0.0;       ///< weighted L2 of nabla h, (-2s) units
  double density_measured = 0.0;
  double density_expected = 0.0;  ///< matched table entry (0 when Unknown)
  bool pinching_satisfied = false;
};

/// All thresholds were pinned against oracle-mesh noise floors at the
/// baseline resolutions; every one is adjustable.
struct ClassifyThresholds {
  double plane_max_h_sq = 1e-3;   ///< below this the snapshot is flat
  double plane_multiplicity = 0.05; ///< relative gap to the nearest integer
  double residual = 0.1;
  double ratio_spread = 0.05;
  double grad_h_norm = 0.1;
  double ratio_match = 0.02;
  double density_match = 0.02; ///< relative
  double support_radius = 5.0; ///< in units of sqrt(-2s)
};

/// Matches a blow-up snapshot at backward time s (default -1/2) against the
/// catalog: plane with multiplicity, S^n(sqrt n), S^m(sqrt m) x R^(n-m).
/// All decision quantities are parabolic-scaling invariants, so the verdict
/// is unchanged under positions -> lambda * positions, s -> lambda^2 s.
ShrinkerClassification classify_shrinker(const DiscreteImmersion& imm,
                                         const DensityTable& table, double s = -0.5,
                                         const ClassifyThresholds& thresholds = {});

/// Whether the matched shrinker is admissible under the pinching
/// hypothesis |h|^2 <= 4/(3n) |H|^2 (within 2% slack on the ratio).
bool pinching_filter(const ShrinkerClassification& classification, int n);

} // namespace mcf
