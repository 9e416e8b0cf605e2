#include "mcf/classify.hpp"

#include <cmath>

#include "mcf/blowup.hpp"
#include "mcf/geometry.hpp"
#include "mcf/monotonicity.hpp"
#include "mcf/oracle.hpp"

namespace mcf {

const DensityTableEntry* DensityTable::find(const std::string& label) const {
  for (const auto& e : entries)
    if (e.label == label) return &e;
  return nullptr;
}

const char* shrinker_verdict_name(ShrinkerVerdict v) {
  switch (v) {
    case ShrinkerVerdict::Plane: return "Plane";
    case ShrinkerVerdict::Sphere: return "Sphere";
    case ShrinkerVerdict::Cylinder: return "Cylinder";
    case ShrinkerVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

DensityTable build_density_table(int n, int resolution) {
  if (n != 1 && n != 2) throw Error("density table supports n in {1, 2}");
  DensityTable table;
  table.n = n;
  const double s = -0.5;
  const Eigen::RowVectorXd origin = Eigen::RowVectorXd::Zero(n + 1);

  table.entries.push_back({"plane", n, 0, 1.0}); // exact by definition

  ExactSolutionSpec sphere;
  sphere.kind = ExactKind::Sphere;
  sphere.n = n;
  sphere.N = n + 1;
  sphere.resolution = resolution;
  DiscreteImmersion sph = shrinker_at(sphere, s);
  table.entries.push_back(
      {"sphere", n, 0,
       heat_density(sph, compute_geometry(sph), s, origin, 0.0)});

  for (int m = 1; m <= n - 1; ++m) {
    ExactSolutionSpec cyl;
    cyl.kind = ExactKind::Cylinder;
    cyl.n = n;
    cyl.m = m;
    cyl.N = n + 1;
    cyl.resolution = resolution;
    DiscreteImmersion mesh = shrinker_at(cyl, s);
    table.entries.push_back(
        {"cylinder m=" + std::to_string(m), n, m,
         heat_density(mesh, compute_geometry(mesh), s, origin, 0.0)});
  }
  return table;
}

ShrinkerClassification classify_shrinker(const DiscreteImmersion& imm,
                                         const DensityTable& table, double s,
                                         const ClassifyThresholds& thresholds) {
  if (!(s < 0.0)) throw Error("classification requires backward time s < 0");
  const int n = imm.intrinsic_dim;
  const double unit = -2.0 * s; // parabolic length^2 scale; 1 at s = -1/2
  GeometrySnapshot geom = compute_geometry(imm);
  const Eigen::RowVectorXd origin = Eigen::RowVectorXd::Zero(imm.ambient_dim);

  ShrinkerClassification out;
  out.density_measured = heat_density(imm, geom, s, origin, 0.0);

  // weighted statistics over the Gaussian support; distant vertices (for
  // example the bulbs of a rescaled neckpinch) carry no evidence about the
  // blow-up limit near the center
  const double support = thresholds.support_radius * std::sqrt(unit);
  double wsum = 0.0, ratio_sum = 0.0, grad_sum = 0.0;
  double ratio_min = std::numeric_limits<double>::infinity();
  double ratio_max = -std::numeric_limits<double>::infinity();
  double max_h_sq = 0.0;
  for (int v = 0; v < imm.num_vertices(); ++v) {
    if (imm.positions.row(v).norm() > support) continue;
    double w = heat_kernel(imm.positions.row(v), s, origin, 0.0, n) *
               geom.vertex_measure(v);
    max_h_sq = std::max(max_h_sq, geom.norm_h_sq(v));
    wsum += w;
    grad_sum += w * geom.grad_h_sq(v);
    if (geom.norm_H_sq(v) > 1e-30) {
      double r = geom.norm_h_sq(v) / geom.norm_H_sq(v);
      ratio_sum += w * r;
      ratio_min = std::min(ratio_min, r);
      ratio_max = std::max(ratio_max, r);
    }
  }
  if (!(wsum > 0.0)) return out; // nothing near the center: Unknown

  out.ratio_mean = ratio_sum / wsum;
  out.ratio_spread = ratio_max > ratio_min ? ratio_max - ratio_min : 0.0;
  out.grad_h_norm = std::sqrt(grad_sum / wsum) * unit;
  out.shrinker_residual = shrinker_residual(imm, geom, s) * std::sqrt(unit);
  out.pinching_satisfied = out.ratio_mean <= 4.0 / (3.0 * n) + 0.02;

  // (1) flat: plane with integer multiplicity read off the density
  if (max_h_sq * unit < thresholds.plane_max_h_sq) {
    int mult = std::max(1, static_cast<int>(std::lround(out.density_measured)));
    out.density_expected = mult;
    out.ratio_mean = 0.0;
    out.pinching_satisfied = true;
    if (std::abs(out.density_measured - mult) <= thresholds.plane_multiplicity * mult) {
      out.verdict = ShrinkerVerdict::Plane;
      out.multiplicity = mult;
    }
    return out;
  }
  // (2) must satisfy the shrinker equation
  if (out.shrinker_residual > thresholds.residual) return out;
  // (3) the classification theorems require nabla h = 0 and constant ratio
  if (out.ratio_spread > thresholds.ratio_spread ||
      out.grad_h_norm > thresholds.grad_h_norm)
    return out;
  // (4) ratio and density must agree on the same catalog entry
  struct Candidate {
    ShrinkerVerdict verdict;
    int m;
    double ratio;
    const char* label;
  };
  std::vector<Candidate> candidates;
  candidates.push_back({ShrinkerVerdict::Sphere, 0, 1.0 / n, "sphere"});
  for (int m = 1; m <= n - 1; ++m)
    candidates.push_back({ShrinkerVerdict::Cylinder, m, 1.0 / m, "cylinder"});

  for (const auto& cand : candidates) {
    if (std::abs(out.ratio_mean - cand.ratio) > thresholds.ratio_match) continue;
    std::string label = cand.verdict == ShrinkerVerdict::Sphere
                            ? "sphere"
                            : "cylinder m=" + std::to_string(cand.m);
    const DensityTableEntry* entry = table.find(label);
    if (!entry) continue;
    if (std::abs(out.density_measured - entry->density) >
        thresholds.density_match * entry->density)
      continue;
    out.verdict = cand.verdict;
    out.m = cand.m;
    out.density_expected = entry->density;
    return out;
  }
  return out;
}

bool pinching_filter(const ShrinkerClassification& classification, int n) {
  return classification.ratio_mean <= 4.0 / (3.0 * n) + 0.02;
}

} // namespace mcf
