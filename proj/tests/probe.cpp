// Scratch accuracy probe used while developing; not part of the test suite.
#include <chrono>
#include <cstdio>

#include "mcf/geometry.hpp"
#include "mcf/oracle.hpp"

using namespace mcf;

static void report(const char* name, const DiscreteImmersion& imm, double H_exact,
                   double h_sq_exact, double ratio_exact) {
  auto t0 = std::chrono::steady_clock::now();
  Adjacency adj = build_adjacency(imm);
  GeometrySnapshot g = compute_geometry(imm, adj);
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  double Hmin = 1e300, Hmax = -1e300, hmin = 1e300, hmax = -1e300;
  double rmin = 1e300, rmax = -1e300, gh = -1e300, gH = -1e300, ghm = 1e300;
  for (int v = 0; v < g.num_vertices(); ++v) {
    double Hn = std::sqrt(g.norm_H_sq(v));
    Hmin = std::min(Hmin, Hn); Hmax = std::max(Hmax, Hn);
    hmin = std::min(hmin, g.norm_h_sq(v)); hmax = std::max(hmax, g.norm_h_sq(v));
    double r = g.norm_h_sq(v) / g.norm_H_sq(v);
    rmin = std::min(rmin, r); rmax = std::max(rmax, r);
    gh = std::max(gh, g.grad_h_sq(v)); ghm = std::min(ghm, g.grad_h_sq(v));
    gH = std::max(gH, g.grad_H_sq(v));
  }
  std::printf("%-28s V=%5d  %6.1fms  |H| in [%.6f,%.6f] (exact %.6f)\n",
              name, g.num_vertices(), ms, Hmin, Hmax, H_exact);
  std::printf("%-28s   |h|^2 in [%.6f,%.6f] (exact %.6f)  ratio [%.6f,%.6f] (exact %.6f)\n",
              "", hmin, hmax, h_sq_exact, rmin, rmax, ratio_exact);
  std::printf("%-28s   grad_h_sq max %.3e  grad_H_sq max %.3e  slack %.3e\n", "",
              gh, gH, gradient_estimate_slack(g));
  std::printf("%-28s   total_measure %.8f\n", "", g.total_measure);
}

int main() {
  report("circle r=1, 256", circle_polyline(256, 1.0), 1.0, 1.0, 1.0);
  report("icosphere r=1, level 4", icosphere(4, 1.0), 2.0, 2.0, 0.5);
  report("icosphere r=1, level 5", icosphere(5, 1.0), 2.0, 2.0, 0.5);
  report("cylinder r=1 L=6, 48", cylinder_mesh(1.0, 6.0, 48), 1.0, 1.0, 1.0);
  report("circle r=1 in R^4", circle_polyline(256, 1.0, 4), 1.0, 1.0, 1.0);
  report("icosphere r=1 lvl4 in R^5", icosphere(4, 1.0, 5), 2.0, 2.0, 0.5);
  return 0;
}
