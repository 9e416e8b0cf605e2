#pragma once

#include <cstdint>
#include <vector>

#include "mcf/immersion.hpp"

namespace mcf {

enum class ExactKind { Sphere, Cylinder, Plane };

/// Description of one of the closed-form solutions the laboratory uses as
/// ground truth: shrinking spheres/circles, shrinking cylinders
/// S^m x R^(n-m) (axially truncated), and flat planes (with multiplicity).
struct ExactSolutionSpec {
  ExactKind kind = ExactKind::Sphere;
  int n = 2;          ///< intrinsic dimension, 1 or 2
  int m = 1;          ///< cylinder spherical factor, 1 <= m <= n-1
  int N = 3;          ///< ambient dimension, N >= n+1
  double radius0 = 1.0;
  int resolution = 80;        ///< approx. vertex count along a great circle
  double cylinder_length = 0; ///< axial half-length; 0 means 6 * radius
  int multiplicity = 1;       ///< plane only: coincident sheets
};

/// The exact solution evolved to time t (t in squared-length units).
DiscreteImmersion make_exact(const ExactSolutionSpec& spec, double t);

/// radius0^2/(2n) for spheres, radius0^2/(2m) for cylinders.
/// Planes are stationary and have no extinction time.
double extinction_time(const ExactSolutionSpec& spec);

/// The exact self-shrinker at backward time s < 0: sphere radius
/// sqrt(-2ns), cylinder spherical radius sqrt(-2ms), centred at the
/// origin. At s = -1/2 these are S^n(sqrt n) and S^m(sqrt m) x R^(n-m).
DiscreteImmersion shrinker_at(const ExactSolutionSpec& spec, double s);

// Mesh builders. All embed into the leading coordinates of R^N and pad
// the remaining coordinates with zeros.

DiscreteImmersion circle_polyline(int count, double radius, int N = 2);
DiscreteImmersion ellipse_polyline(double a, double b, int count, int N = 2);

/// Icosphere by repeated 4-way subdivision; level 4 has 2562 vertices.
DiscreteImmersion icosphere(int level, double radius, int N = 3);
DiscreteImmersion ellipsoid_mesh(double a, double b, double c, int level, int N = 3);

/// S^1(radius) x [-half_length, half_length], open at the ends.
DiscreteImmersion cylinder_mesh(double radius, double half_length, int azimuthal,
                                int N = 3);

/// Flat n-dimensional disk of the given radius through the origin,
/// meshed as a uniform grid clipped to the disk (n = 2) or a uniform
/// segment (n = 1). multiplicity > 1 stacks coincident disjoint copies.
DiscreteImmersion plane_patch(int n, double radius, double spacing, int N,
                              int multiplicity = 1);

/// Limacon r(phi) = base + loop*cos(phi): an immersed planar curve with a
/// small self-intersecting inner loop when loop > base.
DiscreteImmersion limacon_polyline(double base, double loop, int count, int N = 2);

/// Deterministic Gaussian perturbation of every coordinate,
/// std = amplitude, seeded.
DiscreteImmersion perturbed(const DiscreteImmersion& imm, double amplitude,
                            std::uint64_t seed);

/// Rotation-free rigid copy: positions * scale + offset.
DiscreteImmersion scaled_translated(const DiscreteImmersion& imm, double scale,
                                    const Eigen::RowVectorXd& offset);

/// Profile (x, r) samples of a dumbbell: two spherical bulbs of the given
/// radius joined by a straight neck of radius `neck` and half-length
/// `neck_half_length`, with smooth cosine blends. Poles at both ends.
std::vector<std::array<double, 2>> dumbbell_profile(double bulb_radius,
                                                    double neck_radius,
                                                    double neck_half_length,
                                                    int samples);

} // namespace mcf
